#include "bogrape/mip/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "bogrape/error.hpp"

namespace bogrape::mip {

ExportFormat parse_format(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "mps") return ExportFormat::Mps;
  if (s == "lp") return ExportFormat::Lp;
  throw Error(ErrorCode::InvalidArgument, "unknown export format '" + std::string(text) + "'");
}

int PiecewiseExp::segment_of(double x) const {
  const int j = static_cast<int>(std::floor((x - lo) / (hi - lo) * segments));
  return std::clamp(j, 0, segments - 1);
}

double PiecewiseExp::slope(int j) const {
  const double a = knot(j), b = knot(j + 1);
  return (std::exp(b) - std::exp(a)) / (b - a);
}

double PiecewiseExp::operator()(double x) const {
  const int j = segment_of(x);
  const double a = knot(j);
  return std::exp(a) + slope(j) * (x - a);
}

double PiecewiseExp::max_error(int grid) const {
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * i / (grid - 1);
    worst = std::max(worst, std::abs((*this)(x) - std::exp(x)));
  }
  return worst;
}

std::optional<int> FlatModel::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

FlatModel flatten(const MipModel& model, int breakpoints) {
  if (model.meta.size.bounded())
    throw Error(ErrorCode::UnsupportedBoundedSizeExport, "file export needs a fixed graph size");
  for (const auto& link : model.links())
    if (link.kind == LinkKind::InverseSizeScale)
      throw Error(ErrorCode::UnsupportedBoundedSizeExport, "size-dependent normalization cannot be exported");
  if (breakpoints < 1) throw Error(ErrorCode::InvalidArgument, "breakpoints must be positive");

  FlatModel flat;
  flat.columns = model.variables();
  flat.rows = model.rows();
  flat.objective = model.objective();

  int exp_index = 0;
  for (const auto& link : model.links()) {
    const PiecewiseExp pw{breakpoints, 0.0, 1.0};
    const double mx = pw.hi - pw.lo;
    const double my = std::exp(pw.hi) - std::exp(pw.lo);
    const int x = link.input, y = link.output;
    const std::string base = "EXP_" + std::to_string(exp_index);
    std::vector<Term> select;
    for (int j = 0; j < breakpoints; ++j) {
      const int z = static_cast<int>(flat.columns.size());
      flat.columns.push_back({"z_" + std::to_string(exp_index) + "_" + std::to_string(j), VarKind::Binary, 0, 1,
                              VarTag::PiecewiseSelect, {exp_index, j}, Primary{}});
      select.push_back({z, 1});
      const double a = pw.knot(j), b = pw.knot(j + 1), s = pw.slope(j);
      const double c = std::exp(a) - s * a;
      const std::string seg = base + "_" + std::to_string(j);
      auto row = [&](std::string suffix, std::vector<Term> terms, Sense sense, double rhs) {
        std::sort(terms.begin(), terms.end(), [](const Term& p, const Term& q) { return p.var < q.var; });
        flat.rows.push_back({seg + "_" + suffix, "exp.piecewise", std::move(terms), sense, rhs});
      };
      row("LO", {{x, 1}, {z, -mx}}, Sense::GreaterEqual, a - mx);
      row("HI", {{x, 1}, {z, mx}}, Sense::LessEqual, b + mx);
      row("UB", {{y, 1}, {x, -s}, {z, my}}, Sense::LessEqual, c + my);
      row("LB", {{y, 1}, {x, -s}, {z, -my}}, Sense::GreaterEqual, c - my);
    }
    flat.rows.push_back({base + "_SEL", "exp.select", select, Sense::Equal, 1});
    ++exp_index;
  }

  if (const auto& v = model.variance_row()) {
    QuadraticRow q;
    q.name = v->name;
    q.linear = {{v->kxx, -1}};
    q.entries.emplace_back(v->sigma, v->sigma, 1.0);
    const auto n = static_cast<Eigen::Index>(v->kernel_vars.size());
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (v->precision(i, j) != 0.0)
          q.entries.emplace_back(v->kernel_vars[i], v->kernel_vars[j], v->precision(i, j));
    flat.quadratic = std::move(q);
  }
  return flat;
}

namespace {

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_num(std::string_view s) {
  if (s == "+inf" || s == "inf" || s == "+infinity" || s == "infinity") return kInf;
  if (s == "-inf" || s == "-infinity") return -kInf;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, "bad number '" + std::string(s) + "'");
  return x;
}

bool is_integral(VarKind k) { return k != VarKind::Continuous; }

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

char sense_code(Sense s) {
  switch (s) {
    case Sense::LessEqual: return 'L';
    case Sense::GreaterEqual: return 'G';
    case Sense::Equal: return 'E';
  }
  return 'E';
}

const char* sense_op(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "=";
}

void sort_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
}

}  // namespace

void write_mps(const FlatModel& m, std::ostream& out) {
  out << "NAME bogrape\nOBJSENSE\n    MIN\nROWS\n N  OBJ\n";
  for (const auto& r : m.rows) out << " " << sense_code(r.sense) << "  " << r.name << "\n";
  if (m.quadratic) out << " L  " << m.quadratic->name << "\n";

  std::vector<std::vector<std::pair<std::string_view, double>>> by_col(m.columns.size());
  for (const auto& t : m.objective) by_col[t.var].emplace_back("OBJ", t.coef);
  for (const auto& r : m.rows)
    for (const auto& t : r.terms) by_col[t.var].emplace_back(r.name, t.coef);
  if (m.quadratic)
    for (const auto& t : m.quadratic->linear) by_col[t.var].emplace_back(m.quadratic->name, t.coef);

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t c = 0; c < m.columns.size(); ++c) {
    const auto& col = m.columns[c];
    if (is_integral(col.kind) != in_int) {
      in_int = !in_int;
      out << "    MARKER" << marker++ << " 'MARKER' " << (in_int ? "'INTORG'" : "'INTEND'") << "\n";
    }
    if (by_col[c].empty()) out << "    " << col.name << " OBJ 0\n";
    for (const auto& [row, coef] : by_col[c]) out << "    " << col.name << " " << row << " " << num(coef) << "\n";
  }
  if (in_int) out << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  for (const auto& r : m.rows)
    if (r.rhs != 0.0) out << "    RHS " << r.name << " " << num(r.rhs) << "\n";
  if (m.quadratic && m.quadratic->rhs != 0.0) out << "    RHS " << m.quadratic->name << " " << num(m.quadratic->rhs) << "\n";

  out << "BOUNDS\n";
  for (const auto& col : m.columns) {
    if (col.kind == VarKind::Binary) {
      out << " BV BND " << col.name << "\n";
    } else if (col.kind == VarKind::Integer) {
      out << " LI BND " << col.name << " " << num(col.lb) << "\n";
      out << " UI BND " << col.name << " " << num(col.ub) << "\n";
    } else if (std::isinf(col.lb) && std::isinf(col.ub)) {
      out << " FR BND " << col.name << "\n";
    } else {
      if (std::isinf(col.lb)) {
        out << " MI BND " << col.name << "\n";
      } else if (col.lb != 0.0) {
        out << " LO BND " << col.name << " " << num(col.lb) << "\n";
      }
      if (!std::isinf(col.ub)) out << " UP BND " << col.name << " " << num(col.ub) << "\n";
    }
  }

  if (m.quadratic) {
    out << "QCMATRIX " << m.quadratic->name << "\n";
    for (const auto& [i, j, q] : m.quadratic->entries)
      out << "    " << m.columns[i].name << " " << m.columns[j].name << " " << num(q) << "\n";
  }
  out << "ENDATA\n";
}

FlatModel read_mps(std::istream& in) {
  FlatModel m;
  std::unordered_map<std::string, int> col_index;
  std::unordered_map<std::string, int> row_index;  // -1 = objective
  std::vector<std::tuple<int, int, double>> entries;
  std::string section, qc_row;
  bool in_int = false;

  auto row_of = [&](const std::string& name) {
    auto it = row_index.find(name);
    if (it == row_index.end()) throw Error(ErrorCode::ParseError, "unknown row " + name);
    return it->second;
  };
  auto column_of = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it == col_index.end()) throw Error(ErrorCode::ParseError, "unknown column " + name);
    return it->second;
  };

  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '*') continue;
    auto tok = split(line);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      section = tok[0];
      if (section == "QCMATRIX") {
        if (tok.size() < 2) throw Error(ErrorCode::ParseError, "QCMATRIX without row name");
        qc_row = tok[1];
        if (row_of(qc_row) < 0) throw Error(ErrorCode::ParseError, "QCMATRIX for the objective");
      }
      if (section == "ENDATA") break;
      continue;
    }
    if (section == "OBJSENSE") {
      if (tok[0] != "MIN" && tok[0] != "MINIMIZE") throw Error(ErrorCode::ParseError, "only minimization is read");
    } else if (section == "ROWS") {
      if (tok.size() != 2) throw Error(ErrorCode::ParseError, "bad ROWS line: " + line);
      const std::string& type = tok[0];
      if (type == "N") {
        row_index[tok[1]] = -1;
      } else {
        LinearRow r;
        r.name = tok[1];
        r.sense = type == "L" ? Sense::LessEqual : type == "G" ? Sense::GreaterEqual : Sense::Equal;
        if (type != "L" && type != "G" && type != "E") throw Error(ErrorCode::ParseError, "bad row type " + type);
        row_index[r.name] = static_cast<int>(m.rows.size());
        m.rows.push_back(std::move(r));
      }
    } else if (section == "COLUMNS") {
      if (tok.size() == 3 && tok[1] == "'MARKER'") {
        in_int = tok[2] == "'INTORG'";
        continue;
      }
      if (tok.size() != 3 && tok.size() != 5) throw Error(ErrorCode::ParseError, "bad COLUMNS line: " + line);
      auto [it, fresh] = col_index.try_emplace(tok[0], static_cast<int>(m.columns.size()));
      if (fresh) {
        Variable v;
        v.name = tok[0];
        v.kind = in_int ? VarKind::Integer : VarKind::Continuous;
        v.lb = 0.0;
        v.ub = kInf;
        m.columns.push_back(std::move(v));
      }
      for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
        const int r = row_of(tok[k]);
        const double coef = parse_num(tok[k + 1]);
        if (r == -1) {
          if (coef != 0.0) m.objective.push_back({it->second, coef});
        } else {
          m.rows[r].terms.push_back({it->second, coef});
        }
      }
    } else if (section == "RHS") {
      for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
        const int r = row_of(tok[k]);
        if (r >= 0) m.rows[r].rhs = parse_num(tok[k + 1]);
      }
    } else if (section == "BOUNDS") {
      if (tok.size() < 3) throw Error(ErrorCode::ParseError, "bad BOUNDS line: " + line);
      Variable& v = m.columns[column_of(tok[2])];
      const std::string& type = tok[0];
      const double val = tok.size() > 3 ? parse_num(tok[3]) : 0.0;
      if (type == "BV") {
        v.kind = VarKind::Binary;
        v.lb = 0;
        v.ub = 1;
      } else if (type == "LI") {
        v.kind = VarKind::Integer;
        v.lb = val;
      } else if (type == "UI") {
        v.kind = VarKind::Integer;
        v.ub = val;
      } else if (type == "LO") {
        v.lb = val;
      } else if (type == "UP") {
        v.ub = val;
      } else if (type == "FX") {
        v.lb = v.ub = val;
      } else if (type == "FR") {
        v.lb = -kInf;
        v.ub = kInf;
      } else if (type == "MI") {
        v.lb = -kInf;
      } else if (type == "PL") {
        v.ub = kInf;
      } else {
        throw Error(ErrorCode::ParseError, "bad bound type " + type);
      }
    } else if (section == "QCMATRIX") {
      if (tok.size() != 3) throw Error(ErrorCode::ParseError, "bad QCMATRIX line: " + line);
      entries.emplace_back(column_of(tok[0]), column_of(tok[1]), parse_num(tok[2]));
    }
  }
  for (auto& r : m.rows) sort_terms(r.terms);
  // the quadratic row is declared in ROWS like any other until QCMATRIX names it
  if (!qc_row.empty()) {
    const int r = row_of(qc_row);
    LinearRow& row = m.rows[r];
    if (row.sense != Sense::LessEqual) throw Error(ErrorCode::ParseError, "quadratic row must be <=");
    m.quadratic = QuadraticRow{row.name, row.terms, std::move(entries), row.rhs};
    m.rows.erase(m.rows.begin() + r);
  }
  return m;
}

void write_lp(const FlatModel& m, std::ostream& out) {
  auto expr = [&](const std::vector<Term>& terms) {
    std::string s;
    int on_line = 0;
    for (const auto& t : terms) {
      if (on_line == 8) {
        s += "\n   ";
        on_line = 0;
      }
      s += t.coef < 0 ? " - " : " + ";
      s += num(std::abs(t.coef)) + " " + m.columns[t.var].name;
      ++on_line;
    }
    return s;
  };

  out << "\\ bogrape acquisition model\nMinimize\n obj:" << expr(m.objective) << "\nSubject To\n";
  for (const auto& r : m.rows)
    out << " " << r.name << ":" << expr(r.terms) << " " << sense_op(r.sense) << " " << num(r.rhs) << "\n";
  if (m.quadratic) {
    const auto& q = *m.quadratic;
    out << " " << q.name << ":" << expr(q.linear) << " + [";
    int on_line = 0;
    for (const auto& [i, j, c] : q.entries) {
      if (i > j) continue;
      const double coef = i == j ? c : 2 * c;
      if (on_line == 6) {
        out << "\n   ";
        on_line = 0;
      }
      out << (coef < 0 ? " - " : " + ") << num(std::abs(coef)) << " " << m.columns[i].name;
      if (i == j) {
        out << " ^ 2";
      } else {
        out << " * " << m.columns[j].name;
      }
      ++on_line;
    }
    out << " ] <= " << num(q.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& c : m.columns) {
    if (std::isinf(c.lb) && std::isinf(c.ub) && c.lb < 0 && c.ub > 0) {
      out << " " << c.name << " free\n";
    } else {
      out << " " << num(c.lb) << " <= " << c.name << " <= " << num(c.ub) << "\n";
    }
  }
  out << "General\n";
  for (const auto& c : m.columns)
    if (c.kind == VarKind::Integer) out << " " << c.name << "\n";
  out << "Binary\n";
  for (const auto& c : m.columns)
    if (c.kind == VarKind::Binary) out << " " << c.name << "\n";
  out << "End\n";
}

namespace {

struct NamedTerm {
  std::string var;
  double coef;
};

struct NamedRow {
  std::string name;
  std::vector<NamedTerm> terms;
  std::vector<std::tuple<std::string, std::string, double>> quad;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
};

bool is_section(const std::string& t) {
  return t == "Minimize" || t == "Subject" || t == "Bounds" || t == "General" || t == "Binary" || t == "End";
}

// Parses "[name:] expr [sense rhs]" starting at tok[pos].
NamedRow parse_lp_row(const std::vector<std::string>& tok, std::size_t& pos, bool objective) {
  NamedRow row;
  if (pos < tok.size() && tok[pos].back() == ':') {
    row.name = tok[pos].substr(0, tok[pos].size() - 1);
    ++pos;
  }
  bool in_quad = false;
  while (pos < tok.size()) {
    const std::string& t = tok[pos];
    if (t == "<=" || t == ">=" || t == "=") {
      if (objective) throw Error(ErrorCode::ParseError, "objective with a sense");
      row.sense = t == "<=" ? Sense::LessEqual : t == ">=" ? Sense::GreaterEqual : Sense::Equal;
      if (pos + 1 >= tok.size()) throw Error(ErrorCode::ParseError, "missing right-hand side");
      row.rhs = parse_num(tok[pos + 1]);
      pos += 2;
      return row;
    }
    if (objective && (is_section(t) || t.back() == ':')) return row;
    if (t == "[") {
      in_quad = true;
      ++pos;
      continue;
    }
    if (t == "]") {
      in_quad = false;
      ++pos;
      continue;
    }
    double sign = 1.0;
    if (t == "+" || t == "-") {
      sign = t == "-" ? -1.0 : 1.0;
      ++pos;
    }
    if (pos >= tok.size()) throw Error(ErrorCode::ParseError, "truncated expression");
    if (tok[pos] == "[") continue;
    double coef = 1.0;
    if (std::isdigit(static_cast<unsigned char>(tok[pos][0])) || tok[pos][0] == '.') {
      coef = parse_num(tok[pos]);
      ++pos;
    }
    if (pos >= tok.size()) throw Error(ErrorCode::ParseError, "truncated expression");
    const std::string var = tok[pos++];
    if (in_quad) {
      if (pos < tok.size() && tok[pos] == "^") {
        pos += 2;
        row.quad.emplace_back(var, var, sign * coef);
      } else if (pos < tok.size() && tok[pos] == "*") {
        const std::string other = tok[pos + 1];
        pos += 2;
        row.quad.emplace_back(var, other, sign * coef / 2);
        row.quad.emplace_back(other, var, sign * coef / 2);
      } else {
        throw Error(ErrorCode::ParseError, "bad quadratic term near " + var);
      }
    } else {
      row.terms.push_back({var, sign * coef});
    }
  }
  if (!objective) throw Error(ErrorCode::ParseError, "row " + row.name + " has no sense");
  return row;
}

}  // namespace

FlatModel read_lp(std::istream& in) {
  std::vector<std::string> tok;
  std::vector<std::vector<std::string>> bound_lines;
  std::vector<std::string> general, binary;
  std::string section;
  for (std::string line; std::getline(in, line);) {
    if (const auto c = line.find('\\'); c != std::string::npos) line.erase(c);
    auto t = split(line);
    if (t.empty()) continue;
    if (is_section(t[0]) && line[0] != ' ') {
      section = t[0];
      if (section == "End") break;
      continue;
    }
    if (section == "Minimize" || section == "Subject") {
      tok.insert(tok.end(), t.begin(), t.end());
    } else if (section == "Bounds") {
      bound_lines.push_back(t);
    } else if (section == "General") {
      general.insert(general.end(), t.begin(), t.end());
    } else if (section == "Binary") {
      binary.insert(binary.end(), t.begin(), t.end());
    }
  }

  std::size_t pos = 0;
  NamedRow obj = parse_lp_row(tok, pos, true);
  std::vector<NamedRow> rows;
  while (pos < tok.size()) rows.push_back(parse_lp_row(tok, pos, false));

  FlatModel m;
  std::unordered_map<std::string, int> index;
  auto column = [&](const std::string& name) {
    auto [it, fresh] = index.try_emplace(name, static_cast<int>(m.columns.size()));
    if (fresh) {
      Variable v;
      v.name = name;
      v.lb = 0.0;
      v.ub = kInf;
      m.columns.push_back(std::move(v));
    }
    return it->second;
  };
  for (const auto& b : bound_lines) {
    if (b.size() == 2 && b[1] == "free") {
      Variable& v = m.columns[column(b[0])];
      v.lb = -kInf;
      v.ub = kInf;
    } else if (b.size() == 5 && b[1] == "<=" && b[3] == "<=") {
      Variable& v = m.columns[column(b[2])];
      v.lb = parse_num(b[0]);
      v.ub = parse_num(b[4]);
    } else {
      throw Error(ErrorCode::ParseError, "unsupported bound line");
    }
  }
  for (const auto& g : general) m.columns[column(g)].kind = VarKind::Integer;
  for (const auto& b : binary) m.columns[column(b)].kind = VarKind::Binary;

  for (const auto& t : obj.terms) m.objective.push_back({column(t.var), t.coef});
  for (auto& r : rows) {
    std::vector<Term> terms;
    for (const auto& t : r.terms) terms.push_back({column(t.var), t.coef});
    sort_terms(terms);
    if (!r.quad.empty()) {
      QuadraticRow q;
      q.name = r.name;
      q.linear = std::move(terms);
      q.rhs = r.rhs;
      for (const auto& [a, b, c] : r.quad) q.entries.emplace_back(column(a), column(b), c);
      m.quadratic = std::move(q);
    } else {
      m.rows.push_back({r.name, "", std::move(terms), r.sense, r.rhs});
    }
  }
  return m;
}

void export_model(const MipModel& model, const std::string& path, ExportFormat format, int breakpoints) {
  const FlatModel flat = flatten(model, breakpoints);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  if (format == ExportFormat::Mps) {
    write_mps(flat, out);
  } else {
    write_lp(flat, out);
  }
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

FlatModel read_model_file(const std::string& path, ExportFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return format == ExportFormat::Mps ? read_mps(in) : read_lp(in);
}

bool same_structure(const FlatModel& a, const FlatModel& b, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  auto same_terms = [](const std::vector<Term>& x, const std::vector<Term>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].var != y[i].var || x[i].coef != y[i].coef) return false;
    return true;
  };
  if (a.columns.size() != b.columns.size()) return fail("column count differs");
  for (std::size_t i = 0; i < a.columns.size(); ++i) {
    const auto &x = a.columns[i], &y = b.columns[i];
    if (x.name != y.name || x.kind != y.kind || x.lb != y.lb || x.ub != y.ub) return fail("column " + x.name + " differs");
  }
  if (a.rows.size() != b.rows.size()) return fail("row count differs");
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto &x = a.rows[i], &y = b.rows[i];
    if (x.name != y.name || x.sense != y.sense || x.rhs != y.rhs || !same_terms(x.terms, y.terms))
      return fail("row " + x.name + " differs");
  }
  auto obj_a = a.objective, obj_b = b.objective;
  sort_terms(obj_a);
  sort_terms(obj_b);
  if (!same_terms(obj_a, obj_b)) return fail("objective differs");
  if (a.quadratic.has_value() != b.quadratic.has_value()) return fail("quadratic row presence differs");
  if (a.quadratic) {
    const auto &x = *a.quadratic, &y = *b.quadratic;
    if (x.name != y.name || x.rhs != y.rhs || !same_terms(x.linear, y.linear)) return fail("quadratic row differs");
    std::map<std::pair<int, int>, double> qx, qy;
    for (const auto& [i, j, c] : x.entries) qx[{i, j}] += c;
    for (const auto& [i, j, c] : y.entries) qy[{i, j}] += c;
    if (qx != qy) return fail("quadratic entries differ");
  }
  return true;
}

}  // namespace bogrape::mip
