#!/usr/bin/env python3
"""Generates the random LP fixture suite with reference objectives.

Each instance is feasible and bounded by construction: variable boxes are
finite and the constraint bounds are placed around A @ x0 for an interior
point x0. The reference optimal objective comes from scipy.optimize.linprog
(HiGHS). Output: tests/fixtures/random_lp.json, consumed by the acceptance
suite. Rerun only to regenerate the suite: the frozen objectives are the
test oracle.
"""

import json
import pathlib
import sys

import numpy as np
from scipy.optimize import linprog

MASTER_SEED = 20240817
COUNT = 50
INF = float("inf")


def gen_instance(rng: np.random.Generator, name: str) -> dict:
    m = int(rng.integers(8, 31))
    n = int(rng.integers(m + 2, 51))
    density = 0.35

    A = np.zeros((m, n))
    for i in range(m):
        nz = max(1, int(round(density * n)))
        cols = rng.choice(n, size=nz, replace=False)
        A[i, cols] = np.round(rng.uniform(-2.0, 2.0, size=nz), 6)
        if not A[i].any():
            A[i, cols[0]] = 1.0

    var_lb = np.round(rng.uniform(-3.0, 0.0, size=n), 6)
    var_ub = np.round(var_lb + rng.uniform(0.5, 5.0, size=n), 6)
    x0 = var_lb + rng.uniform(0.2, 0.8, size=n) * (var_ub - var_lb)
    ax0 = A @ x0

    con_lb = np.empty(m)
    con_ub = np.empty(m)
    for i in range(m):
        kind = rng.uniform()
        slack = rng.uniform(0.1, 2.0)
        if kind < 0.25:  # equality
            t = round(ax0[i], 6)
            con_lb[i] = con_ub[i] = t
        elif kind < 0.60:  # upper bounded
            con_lb[i] = -INF
            con_ub[i] = round(ax0[i] + slack, 6)
        elif kind < 0.90:  # lower bounded
            con_lb[i] = round(ax0[i] - slack, 6)
            con_ub[i] = INF
        else:  # two-sided range
            con_lb[i] = round(ax0[i] - slack, 6)
            con_ub[i] = round(ax0[i] + rng.uniform(0.1, 2.0), 6)

    # equality rows must keep x0 feasible exactly: re-center on the rounded A
    ax0 = A @ x0
    for i in range(m):
        if con_lb[i] == con_ub[i]:
            con_lb[i] = con_ub[i] = ax0[i]

    c = np.round(rng.uniform(-1.0, 1.0, size=n), 6)

    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for i in range(m):
        if con_lb[i] == con_ub[i]:
            A_eq.append(A[i])
            b_eq.append(con_lb[i])
            continue
        if np.isfinite(con_ub[i]):
            A_ub.append(A[i])
            b_ub.append(con_ub[i])
        if np.isfinite(con_lb[i]):
            A_ub.append(-A[i])
            b_ub.append(-con_lb[i])
    res = linprog(
        c,
        A_ub=np.array(A_ub) if A_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(A_eq) if A_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=list(zip(var_lb, var_ub)),
        method="highs",
    )
    if res.status != 0:
        raise RuntimeError(f"{name}: reference solve failed with status {res.status}")

    def enc(v):
        return [None if not np.isfinite(e) else float(e) for e in v]

    return {
        "name": name,
        "m": m,
        "n": n,
        "c": [float(v) for v in c],
        "A": [[float(v) for v in row] for row in A],
        "var_lb": enc(var_lb),
        "var_ub": enc(var_ub),
        "con_lb": enc(con_lb),
        "con_ub": enc(con_ub),
        "reference_objective": float(res.fun),
    }


def main() -> None:
    out_path = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "random_lp.json"
    rng = np.random.default_rng(MASTER_SEED)
    instances = [gen_instance(rng, f"rand_{i:03d}") for i in range(COUNT)]
    doc = {"schema": 1, "master_seed": MASTER_SEED, "instances": instances}
    out_path.write_text(json.dumps(doc) + "\n")
    objs = [inst["reference_objective"] for inst in instances]
    print(f"wrote {out_path} ({len(instances)} instances)", file=sys.stderr)
    print(f"objective range: [{min(objs):.6f}, {max(objs):.6f}]", file=sys.stderr)


if __name__ == "__main__":
    main()
