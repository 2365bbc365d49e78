#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rhpdhg/lp_problem.hpp"

namespace rhpdhg {

/// Reads fixed- or free-format MPS. Row senses map to constraint bounds
/// (E -> [b,b], L -> (-inf,b], G -> [b,inf)); the first N row is the objective
/// and its RHS entry, when present, becomes -objective_offset. RANGES follow
/// the standard sign convention, BOUNDS keys LO/UP/FX/FR/MI/PL map directly
/// and BV/LI/UI relax to the continuous box. Integrality markers are ignored
/// with a warning. Throws ParseError with a line number on malformed input.
LpProblem parse_mps(std::istream& in, std::vector<std::string>* warnings = nullptr);

/// Opens a file (gzip-compressed input is accepted by .gz extension sniffing)
/// and parses it.
LpProblem parse_mps_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Deterministic internal text form of an instance; round-trips exactly.
std::string to_canonical_text(const LpProblem& problem);
LpProblem from_canonical_text(const std::string& text);

}  // namespace rhpdhg
