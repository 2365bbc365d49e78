#include "rhpdhg/mps.hpp"

#include <zlib.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "rhpdhg/errors.hpp"

namespace rhpdhg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Section { none, name, objsense, rows, columns, rhs, ranges, bounds, endata };

struct RowInfo {
  char sense = 'N';  // N, E, L, G
  Index index = -1;  // -1: objective or dropped free row
  bool is_objective = false;
  double rhs = 0.0;
  bool has_range = false;
  double range = 0.0;
};

struct ColInfo {
  Index index = -1;
  double lb = 0.0;
  double ub = kInf;
  bool explicit_lower = false;
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_number(const std::string& s, long line) {
  // MPS numbers may use D exponents (Fortran heritage).
  std::string t = s;
  for (char& c : t)
    if (c == 'D' || c == 'd') c = 'e';
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw ParseError("malformed number '" + s + "'", line);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + s + "'", line);
  }
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

class MpsParser {
 public:
  explicit MpsParser(std::vector<std::string>* warnings) : warnings_(warnings) {}

  LpProblem run(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '*') continue;
      if (!std::isspace(static_cast<unsigned char>(line[0]))) {
        handle_section_header(line);
        if (section_ == Section::endata) break;
        continue;
      }
      const auto fields = split_fields(line);
      if (fields.empty()) continue;
      switch (section_) {
        case Section::objsense: handle_objsense_value(fields); break;
        case Section::rows: handle_row(fields); break;
        case Section::columns: handle_column(fields); break;
        case Section::rhs: handle_rhs(fields); break;
        case Section::ranges: handle_ranges(fields); break;
        case Section::bounds: handle_bounds(fields); break;
        case Section::name: case Section::none:
          throw ParseError("data before any section", lineno_);
        case Section::endata: break;
      }
    }
    if (section_ != Section::endata) throw ParseError("missing ENDATA", lineno_);
    return build();
  }

 private:
  void warn(const std::string& msg) {
    if (warnings_) warnings_->push_back("line " + std::to_string(lineno_) + ": " + msg);
  }

  void require_order(Section next) {
    // Sections must appear in the standard order.
    if (static_cast<int>(next) <= static_cast<int>(section_))
      throw ParseError("section out of order", lineno_);
  }

  void handle_section_header(const std::string& line) {
    const auto fields = split_fields(line);
    const std::string head = upper(fields[0]);
    if (head == "NAME") {
      require_order(Section::name);
      section_ = Section::name;
      if (fields.size() > 1) name_ = fields[1];
    } else if (head == "OBJSENSE") {
      require_order(Section::objsense);
      section_ = Section::objsense;
      if (fields.size() > 1) set_objsense(fields[1]);
    } else if (head == "ROWS") {
      require_order(Section::rows);
      section_ = Section::rows;
    } else if (head == "COLUMNS") {
      require_order(Section::columns);
      section_ = Section::columns;
    } else if (head == "RHS") {
      require_order(Section::rhs);
      section_ = Section::rhs;
    } else if (head == "RANGES") {
      require_order(Section::ranges);
      section_ = Section::ranges;
    } else if (head == "BOUNDS") {
      require_order(Section::bounds);
      section_ = Section::bounds;
    } else if (head == "ENDATA") {
      section_ = Section::endata;
    } else {
      throw ParseError("unknown section '" + fields[0] + "'", lineno_);
    }
  }

  void set_objsense(const std::string& value) {
    const std::string v = upper(value);
    if (v == "MAX" || v == "MAXIMIZE")
      maximize_ = true;
    else if (v == "MIN" || v == "MINIMIZE")
      maximize_ = false;
    else
      throw ParseError("unknown OBJSENSE '" + value + "'", lineno_);
  }

  void handle_objsense_value(const std::vector<std::string>& fields) {
    set_objsense(fields[0]);
  }

  void handle_row(const std::vector<std::string>& fields) {
    if (fields.size() != 2) throw ParseError("ROWS entry needs a sense and a name", lineno_);
    const std::string sense = upper(fields[0]);
    const std::string& name = fields[1];
    if (rows_.count(name)) throw ParseError("duplicate row '" + name + "'", lineno_);
    RowInfo info;
    if (sense == "N") {
      if (objective_row_.empty()) {
        objective_row_ = name;
        info.is_objective = true;
      } else {
        warn("extra free row '" + name + "' dropped (only the first N row is the objective)");
      }
      info.sense = 'N';
    } else if (sense == "E" || sense == "L" || sense == "G") {
      info.sense = sense[0];
      info.index = static_cast<Index>(row_order_.size());
      row_order_.push_back(name);
    } else {
      throw ParseError("unknown row sense '" + fields[0] + "'", lineno_);
    }
    rows_.emplace(name, info);
  }

  bool is_marker(const std::vector<std::string>& fields) {
    for (const std::string& f : fields)
      if (f == "'MARKER'" || f == "\"MARKER\"") return true;
    return false;
  }

  void handle_column(const std::vector<std::string>& fields) {
    if (is_marker(fields)) {
      for (const std::string& f : fields) {
        if (f == "'INTORG'" || f == "\"INTORG\"") {
          in_integer_block_ = true;
          if (!integer_warned_) {
            warn("integrality markers ignored; variables relaxed to their continuous box");
            integer_warned_ = true;
          }
        } else if (f == "'INTEND'" || f == "\"INTEND\"") {
          in_integer_block_ = false;
        }
      }
      return;
    }
    if (fields.size() < 3 || fields.size() % 2 == 0)
      throw ParseError("COLUMNS entry needs a column name and (row, value) pairs", lineno_);
    const std::string& col_name = fields[0];
    auto [it, inserted] = cols_.try_emplace(col_name);
    if (inserted) {
      it->second.index = static_cast<Index>(col_order_.size());
      col_order_.push_back(col_name);
      objective_coef_.push_back(0.0);
    }
    const Index col = it->second.index;
    for (std::size_t f = 1; f + 1 < fields.size(); f += 2) {
      const std::string& row_name = fields[f];
      const double value = parse_number(fields[f + 1], lineno_);
      auto row_it = rows_.find(row_name);
      if (row_it == rows_.end())
        throw ParseError("entry references undeclared row '" + row_name + "'", lineno_);
      const RowInfo& row = row_it->second;
      if (row.sense == 'N') {
        if (!row.is_objective) continue;  // dropped free row
        if (objective_set_.count(col))
          throw ParseError("duplicate objective entry for column '" + col_name + "'", lineno_);
        objective_set_.insert(col);
        objective_coef_[static_cast<std::size_t>(col)] = value;
        continue;
      }
      if (!seen_entries_.emplace(row.index, col).second)
        throw ParseError("duplicate entry for row '" + row_name + "', column '" + col_name + "'",
                         lineno_);
      entries_.push_back({row.index, col, value});
    }
  }

  void handle_rhs(const std::vector<std::string>& fields) {
    apply_pairs(fields, [this](const std::string& row_name, double value) {
      auto it = rows_.find(row_name);
      if (it == rows_.end())
        throw ParseError("RHS references undeclared row '" + row_name + "'", lineno_);
      RowInfo& row = it->second;
      if (row.sense == 'N') {
        if (row.is_objective) objective_offset_ = -value;
        return;
      }
      row.rhs = value;
    });
  }

  void handle_ranges(const std::vector<std::string>& fields) {
    apply_pairs(fields, [this](const std::string& row_name, double value) {
      auto it = rows_.find(row_name);
      if (it == rows_.end())
        throw ParseError("RANGES references undeclared row '" + row_name + "'", lineno_);
      RowInfo& row = it->second;
      if (row.sense == 'N')
        throw ParseError("RANGES entry on free row '" + row_name + "'", lineno_);
      row.has_range = true;
      row.range = value;
    });
  }

  void handle_bounds(const std::vector<std::string>& fields) {
    if (fields.size() < 3) throw ParseError("BOUNDS entry too short", lineno_);
    const std::string type = upper(fields[0]);
    const std::string& col_name = fields[2];
    auto it = cols_.find(col_name);
    if (it == cols_.end())
      throw ParseError("BOUNDS references undeclared column '" + col_name + "'", lineno_);
    ColInfo& col = it->second;
    const bool needs_value = type == "LO" || type == "UP" || type == "FX" || type == "LI" ||
                             type == "UI";
    double value = 0.0;
    if (needs_value) {
      if (fields.size() < 4) throw ParseError("BOUNDS " + type + " needs a value", lineno_);
      value = parse_number(fields[3], lineno_);
    }
    if (type == "LO") {
      col.lb = value;
      col.explicit_lower = true;
    } else if (type == "UP") {
      col.ub = value;
      if (value < 0.0 && !col.explicit_lower) {
        col.lb = -kInf;
        warn("negative UP bound on '" + col_name + "' with no lower bound; lower set to -inf");
      }
    } else if (type == "FX") {
      col.lb = col.ub = value;
      col.explicit_lower = true;
    } else if (type == "FR") {
      col.lb = -kInf;
      col.ub = kInf;
      col.explicit_lower = true;
    } else if (type == "MI") {
      col.lb = -kInf;
      col.explicit_lower = true;
    } else if (type == "PL") {
      col.ub = kInf;
    } else if (type == "BV") {
      col.lb = 0.0;
      col.ub = 1.0;
      col.explicit_lower = true;
      warn_integer_bound(col_name);
    } else if (type == "LI") {
      col.lb = value;
      col.explicit_lower = true;
      warn_integer_bound(col_name);
    } else if (type == "UI") {
      col.ub = value;
      warn_integer_bound(col_name);
    } else {
      throw ParseError("unknown bound type '" + fields[0] + "'", lineno_);
    }
  }

  void warn_integer_bound(const std::string& col_name) {
    warn("integer bound on '" + col_name + "' relaxed to its continuous box");
  }

  template <typename F>
  void apply_pairs(const std::vector<std::string>& fields, F&& apply) {
    // Odd field count means a leading set name; even means bare pairs.
    std::size_t start = fields.size() % 2 == 1 ? 1 : 0;
    if (fields.size() - start < 2)
      throw ParseError("entry needs (row, value) pairs", lineno_);
    for (std::size_t f = start; f + 1 < fields.size(); f += 2)
      apply(fields[f], parse_number(fields[f + 1], lineno_));
  }

  LpProblem build() {
    if (objective_row_.empty()) throw ParseError("no objective (N) row declared", 0);
    LpProblem p;
    p.name = name_;
    const Index m = static_cast<Index>(row_order_.size());
    const Index n = static_cast<Index>(col_order_.size());
    p.matrix = SparseMatrix(m, n, std::move(entries_));
    p.objective = std::move(objective_coef_);
    p.objective_offset = objective_offset_;
    p.con_lb.resize(static_cast<std::size_t>(m));
    p.con_ub.resize(static_cast<std::size_t>(m));
    for (const auto& kv : rows_) {
      const RowInfo& row = kv.second;
      if (row.index < 0) continue;
      double lb, ub;
      switch (row.sense) {
        case 'E': lb = ub = row.rhs; break;
        case 'L': lb = -kInf; ub = row.rhs; break;
        case 'G': lb = row.rhs; ub = kInf; break;
        default: continue;
      }
      if (row.has_range) {
        const double r = row.range;
        switch (row.sense) {
          case 'E':
            if (r >= 0.0) ub = row.rhs + r;
            else lb = row.rhs + r;
            break;
          case 'L': lb = ub - std::abs(r); break;
          case 'G': ub = lb + std::abs(r); break;
          default: break;
        }
      }
      p.con_lb[static_cast<std::size_t>(row.index)] = lb;
      p.con_ub[static_cast<std::size_t>(row.index)] = ub;
    }
    p.var_lb.resize(static_cast<std::size_t>(n));
    p.var_ub.resize(static_cast<std::size_t>(n));
    for (const auto& kv : cols_) {
      const ColInfo& col = kv.second;
      p.var_lb[static_cast<std::size_t>(col.index)] = col.lb;
      p.var_ub[static_cast<std::size_t>(col.index)] = col.ub;
    }
    p.maximization = maximize_;
    if (maximize_) {
      for (double& c : p.objective) c = -c;
      p.objective_offset = -p.objective_offset;
    }
    p.validate();
    return p;
  }

  std::vector<std::string>* warnings_;
  long lineno_ = 0;
  Section section_ = Section::none;
  std::string name_;
  std::string objective_row_;
  bool maximize_ = false;
  bool in_integer_block_ = false;
  bool integer_warned_ = false;
  double objective_offset_ = 0.0;
  std::unordered_map<std::string, RowInfo> rows_;
  std::unordered_map<std::string, ColInfo> cols_;
  std::vector<std::string> row_order_;
  std::vector<std::string> col_order_;
  std::vector<double> objective_coef_;
  std::set<std::pair<Index, Index>> seen_entries_;
  std::set<Index> objective_set_;
  std::vector<Triplet> entries_;
};

}  // namespace

LpProblem parse_mps(std::istream& in, std::vector<std::string>* warnings) {
  MpsParser parser(warnings);
  return parser.run(in);
}

LpProblem parse_mps_file(const std::string& path, std::vector<std::string>* warnings) {
  const bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  if (gz) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw ParseError("cannot open '" + path + "'", 0);
    std::string content;
    char buf[1 << 16];
    int got;
    while ((got = gzread(f, buf, sizeof buf)) > 0) content.append(buf, static_cast<std::size_t>(got));
    const bool bad = got < 0;
    gzclose(f);
    if (bad) throw ParseError("gzip read error in '" + path + "'", 0);
    std::istringstream in(content);
    return parse_mps(in, warnings);
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_mps(in, warnings);
}

namespace {
void write_double(std::ostream& os, double v) {
  if (v == kInf) {
    os << "inf";
  } else if (v == -kInf) {
    os << "-inf";
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  }
}

double read_double(std::istream& is, const char* what) {
  std::string tok;
  if (!(is >> tok)) throw ParseError(std::string("canonical text: missing ") + what, 0);
  if (tok == "inf") return kInf;
  if (tok == "-inf") return -kInf;
  try {
    return std::stod(tok);
  } catch (const std::exception&) {
    throw ParseError("canonical text: bad number '" + tok + "'", 0);
  }
}
}  // namespace

std::string to_canonical_text(const LpProblem& problem) {
  std::ostringstream os;
  os << "rhpdhg_lp 1\n";
  os << "name " << (problem.name.empty() ? "-" : problem.name) << "\n";
  os << "maximization " << (problem.maximization ? 1 : 0) << "\n";
  os << "rows " << problem.num_cons() << "\n";
  os << "cols " << problem.num_vars() << "\n";
  os << "offset ";
  write_double(os, problem.objective_offset);
  os << "\n";
  auto write_vec = [&os](const char* key, const std::vector<double>& v) {
    os << key;
    for (double e : v) {
      os << ' ';
      write_double(os, e);
    }
    os << "\n";
  };
  write_vec("c", problem.objective);
  write_vec("var_lb", problem.var_lb);
  write_vec("var_ub", problem.var_ub);
  write_vec("con_lb", problem.con_lb);
  write_vec("con_ub", problem.con_ub);
  const auto triplets = problem.matrix.to_triplets();
  os << "nnz " << triplets.size() << "\n";
  for (const Triplet& t : triplets) {
    os << t.row << ' ' << t.col << ' ';
    write_double(os, t.value);
    os << "\n";
  }
  return os.str();
}

LpProblem from_canonical_text(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  long version;
  if (!(is >> tok >> version) || tok != "rhpdhg_lp" || version != 1)
    throw ParseError("canonical text: bad header", 0);
  LpProblem p;
  auto expect = [&is, &tok](const char* key) {
    if (!(is >> tok) || tok != key)
      throw ParseError(std::string("canonical text: expected '") + key + "'", 0);
  };
  expect("name");
  is >> p.name;
  if (p.name == "-") p.name.clear();
  expect("maximization");
  int maxi;
  is >> maxi;
  p.maximization = maxi != 0;
  expect("rows");
  Index m;
  is >> m;
  expect("cols");
  Index n;
  is >> n;
  expect("offset");
  p.objective_offset = read_double(is, "offset");
  auto read_vec = [&](const char* key, std::vector<double>& v, Index len) {
    expect(key);
    v.resize(static_cast<std::size_t>(len));
    for (double& e : v) e = read_double(is, key);
  };
  read_vec("c", p.objective, n);
  read_vec("var_lb", p.var_lb, n);
  read_vec("var_ub", p.var_ub, n);
  read_vec("con_lb", p.con_lb, m);
  read_vec("con_ub", p.con_ub, m);
  expect("nnz");
  Index nnz;
  is >> nnz;
  std::vector<Triplet> entries(static_cast<std::size_t>(nnz));
  for (Triplet& t : entries) {
    if (!(is >> t.row >> t.col)) throw ParseError("canonical text: truncated entries", 0);
    t.value = read_double(is, "entry");
  }
  p.matrix = SparseMatrix(m, n, std::move(entries));
  p.validate();
  return p;
}

}  // namespace rhpdhg
