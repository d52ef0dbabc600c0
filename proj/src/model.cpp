#include "ppcenter/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ppcenter/errors.hpp"

namespace ppc {

namespace {

constexpr std::size_t kMaxName = 255;
constexpr std::size_t kWrapAt = 240;

bool valid_name(const std::string& name) {
  if (name.empty() || name.size() > kMaxName) return false;
  const unsigned char first = static_cast<unsigned char>(name[0]);
  if (std::isdigit(first) || first == '.' || first == 'e' || first == 'E') return false;
  for (char c : name) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '_' || c == '.')) return false;
  }
  return true;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::Equal: return "=";
    case Sense::GreaterEqual: return ">=";
  }
  return "?";
}

// Writes " name: t1 + t2 ..." wrapping long rows onto indented lines.
void write_expression(std::ostream& out, const std::string& label, const std::vector<Term>& terms,
                      const LinearModel& model) {
  std::string line = " " + label + ":";
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const Term& t = terms[k];
    std::string piece;
    if (t.coef < 0) {
      piece = " -";
    } else if (k > 0) {
      piece = " +";
    }
    const double mag = std::fabs(t.coef);
    if (mag != 1.0) piece += " " + num(mag);
    piece += " " + model.variables()[t.var].name;
    if (line.size() + piece.size() > kWrapAt) {
      out << line << '\n';
      line = "  ";
    }
    line += piece;
  }
  out << line;
}

}  // namespace

std::vector<Term> merge_terms(std::vector<Term> terms) {
  std::vector<Term> merged;
  std::map<int, std::size_t> slot;
  for (const Term& t : terms) {
    auto [it, inserted] = slot.try_emplace(t.var, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coef += t.coef;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  return merged;
}

int LinearModel::add_variable(const std::string& name, VarKind kind, double lower, double upper) {
  if (!valid_name(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
  if (index_.count(name) || rowNames_.count(name)) {
    throw std::invalid_argument("name collision: '" + name + "'");
  }
  if (kind == VarKind::Binary && (lower != 0.0 || upper != 1.0)) {
    throw std::invalid_argument("binary variable '" + name + "' must have bounds [0, 1]");
  }
  const int id = static_cast<int>(vars_.size());
  vars_.push_back({name, kind, lower, upper});
  index_.emplace(name, id);
  return id;
}

void LinearModel::add_constraint(const std::string& name, std::vector<Term> terms, Sense sense,
                                 double rhs) {
  if (!valid_name(name) || name == "obj") {
    throw std::invalid_argument("invalid constraint name '" + name + "'");
  }
  if (rowNames_.count(name) || index_.count(name)) {
    throw std::invalid_argument("name collision: '" + name + "'");
  }
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size())) {
      throw std::invalid_argument("constraint '" + name + "' references an undeclared variable");
    }
  }
  rowNames_.insert(name);
  rows_.push_back({name, merge_terms(std::move(terms)), sense, rhs});
}

void LinearModel::set_objective(std::vector<Term> terms) {
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size())) {
      throw std::invalid_argument("objective references an undeclared variable");
    }
  }
  obj_ = merge_terms(std::move(terms));
}

int LinearModel::find(const std::string& name) const {
  const auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int LinearModel::var(const std::string& name) const {
  const int id = find(name);
  if (id < 0) throw std::invalid_argument("unknown variable '" + name + "'");
  return id;
}

std::size_t LinearModel::count(VarKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(vars_.begin(), vars_.end(), [&](const Variable& v) { return v.kind == kind; }));
}

void LinearModel::remove_variables(const std::unordered_set<std::string>& names) {
  if (names.empty()) return;
  std::vector<int> remap(vars_.size(), -1);
  std::vector<Variable> kept;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    if (names.count(vars_[v].name)) {
      if (vars_[v].lower > 0.0) {
        throw std::invalid_argument("cannot fix '" + vars_[v].name + "' at zero");
      }
      continue;
    }
    remap[v] = static_cast<int>(kept.size());
    kept.push_back(vars_[v]);
  }
  auto rewrite = [&](std::vector<Term>& terms) {
    std::vector<Term> out;
    for (const Term& t : terms) {
      if (remap[t.var] >= 0) out.push_back({t.coef, remap[t.var]});
    }
    terms = std::move(out);
  };
  rewrite(obj_);
  std::vector<Constraint> rows;
  for (Constraint& row : rows_) {
    rewrite(row.terms);
    if (row.terms.empty()) {
      const bool ok = (row.sense == Sense::LessEqual && 0.0 <= row.rhs) ||
                      (row.sense == Sense::GreaterEqual && 0.0 >= row.rhs) ||
                      (row.sense == Sense::Equal && row.rhs == 0.0);
      if (!ok) throw std::invalid_argument("fixing makes constraint '" + row.name + "' infeasible");
      rowNames_.erase(row.name);
      continue;
    }
    rows.push_back(std::move(row));
  }
  rows_ = std::move(rows);
  vars_ = std::move(kept);
  index_.clear();
  for (std::size_t v = 0; v < vars_.size(); ++v) index_.emplace(vars_[v].name, static_cast<int>(v));
}

void write_lp(std::ostream& out, const LinearModel& model) {
  out << "Minimize\n";
  write_expression(out, "obj", model.objective(), model);
  out << "\nSubject To\n";
  for (const Constraint& row : model.constraints()) {
    write_expression(out, row.name, row.terms, model);
    out << ' ' << sense_text(row.sense) << ' ' << num(row.rhs) << '\n';
  }
  std::vector<std::string> bounds;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (const Variable& v : model.variables()) {
    if (v.kind != VarKind::Continuous) continue;
    if (v.lower == 0.0 && v.upper == inf) continue;
    const std::string lo = v.lower == -inf ? "-inf" : num(v.lower);
    if (v.upper == inf) {
      bounds.push_back(" " + v.name + " >= " + lo);
    } else {
      bounds.push_back(" " + lo + " <= " + v.name + " <= " + num(v.upper));
    }
  }
  if (!bounds.empty()) {
    out << "Bounds\n";
    for (const auto& b : bounds) out << b << '\n';
  }
  if (model.count(VarKind::Binary) > 0) {
    out << "Binaries\n";
    for (const Variable& v : model.variables()) {
      if (v.kind == VarKind::Binary) out << ' ' << v.name << '\n';
    }
  }
  out << "End\n";
}

void write_mps(std::ostream& out, const LinearModel& model) {
  auto field = [](const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
  };
  const auto& rows = model.constraints();
  const auto& vars = model.variables();
  out << "NAME          PPCENTER\n";
  out << "ROWS\n";
  out << " N  obj\n";
  for (const Constraint& r : rows) {
    const char* t = r.sense == Sense::LessEqual ? "L" : r.sense == Sense::Equal ? "E" : "G";
    out << ' ' << t << "  " << r.name << '\n';
  }
  // Column-major entries in declaration order.
  std::vector<std::vector<std::pair<std::string, double>>> column(vars.size());
  for (const Term& t : model.objective()) column[t.var].push_back({"obj", t.coef});
  for (const Constraint& r : rows) {
    for (const Term& t : r.terms) column[t.var].push_back({r.name, t.coef});
  }
  out << "COLUMNS\n";
  bool inInteger = false;
  int marker = 0;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const bool binary = vars[v].kind == VarKind::Binary;
    if (binary != inInteger) {
      out << "    " << field("MARKER" + std::to_string(marker++), 10) << field("'MARKER'", 10)
          << "     " << (binary ? "'INTORG'" : "'INTEND'") << '\n';
      inInteger = binary;
    }
    for (const auto& [row, coef] : column[v]) {
      out << "    " << field(vars[v].name, 10) << field(row, 10) << num(coef) << '\n';
    }
  }
  if (inInteger) {
    out << "    " << field("MARKER" + std::to_string(marker), 10) << field("'MARKER'", 10)
        << "     'INTEND'\n";
  }
  out << "RHS\n";
  for (const Constraint& r : rows) {
    if (r.rhs != 0.0) out << "    " << field("RHS", 10) << field(r.name, 10) << num(r.rhs) << '\n';
  }
  out << "BOUNDS\n";
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (const Variable& v : vars) {
    if (v.kind == VarKind::Binary) {
      out << " BV " << field("BND", 10) << v.name << '\n';
      continue;
    }
    if (v.lower == -inf) {
      out << " MI " << field("BND", 10) << v.name << '\n';
    } else if (v.lower != 0.0) {
      out << " LO " << field("BND", 10) << field(v.name, 10) << num(v.lower) << '\n';
    }
    if (v.upper != inf) out << " UP " << field("BND", 10) << field(v.name, 10) << num(v.upper) << '\n';
  }
  out << "ENDATA\n";
}

// --- Reader -------------------------------------------------------------

namespace {

struct Token {
  std::string text;
  int line;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("LP line " + std::to_string(line) + ": " + msg);
}

bool parse_number(const std::string& s, double& v) {
  if (s == "inf" || s == "+inf") {
    v = std::numeric_limits<double>::infinity();
    return true;
  }
  if (s == "-inf") {
    v = -std::numeric_limits<double>::infinity();
    return true;
  }
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  const auto res = std::from_chars(b, e, v);
  return res.ec == std::errc() && res.ptr == e;
}

bool is_sense(const std::string& s) { return s == "<=" || s == ">=" || s == "="; }

Sense to_sense(const std::string& s) {
  return s == "<=" ? Sense::LessEqual : s == ">=" ? Sense::GreaterEqual : Sense::Equal;
}

}  // namespace

LinearModel read_lp(std::istream& in) {
  enum class Section { None, Objective, Constraints, Bounds, Binaries, Done };
  Section section = Section::None;
  std::vector<Token> objTokens, rowTokens, boundTokens, binTokens;
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    if (raw.empty()) continue;
    if (raw == "Minimize") {
      if (section != Section::None) fail(lineNo, "unexpected Minimize");
      section = Section::Objective;
      continue;
    }
    if (raw == "Subject To") {
      if (section != Section::Objective) fail(lineNo, "unexpected Subject To");
      section = Section::Constraints;
      continue;
    }
    if (raw == "Bounds") {
      if (section != Section::Constraints) fail(lineNo, "unexpected Bounds");
      section = Section::Bounds;
      continue;
    }
    if (raw == "Binaries") {
      if (section != Section::Constraints && section != Section::Bounds) {
        fail(lineNo, "unexpected Binaries");
      }
      section = Section::Binaries;
      continue;
    }
    if (raw == "End") {
      if (section == Section::None || section == Section::Objective) fail(lineNo, "unexpected End");
      section = Section::Done;
      continue;
    }
    if (raw[0] != ' ') fail(lineNo, "unknown section '" + raw + "'");
    if (section == Section::None || section == Section::Done) fail(lineNo, "content outside a section");
    std::istringstream ss(raw);
    std::string tok;
    std::vector<Token>* dest = section == Section::Objective     ? &objTokens
                               : section == Section::Constraints ? &rowTokens
                               : section == Section::Bounds      ? &boundTokens
                                                                 : &binTokens;
    while (ss >> tok) dest->push_back({tok, lineNo});
  }
  if (section != Section::Done) fail(lineNo, "missing End");

  LinearModel model;
  auto var_of = [&](const Token& t) {
    int id = model.find(t.text);
    if (id < 0) {
      if (!valid_name(t.text)) fail(t.line, "bad variable name '" + t.text + "'");
      id = model.add_variable(t.text, VarKind::Continuous, 0.0, std::numeric_limits<double>::infinity());
    }
    return id;
  };

  // Parses "[+|-] [coef] name ..." until a sense token or the end.
  auto parse_terms = [&](const std::vector<Token>& toks, std::size_t& k, bool stopAtSense) {
    std::vector<Term> terms;
    bool first = true;
    while (k < toks.size()) {
      if (stopAtSense && is_sense(toks[k].text)) break;
      double sign = 1.0;
      if (toks[k].text == "+" || toks[k].text == "-") {
        sign = toks[k].text == "-" ? -1.0 : 1.0;
        ++k;
      } else if (!first) {
        fail(toks[k].line, "expected + or - before '" + toks[k].text + "'");
      }
      if (k >= toks.size()) fail(toks.back().line, "dangling sign");
      double coef = 1.0;
      double v;
      if (parse_number(toks[k].text, v)) {
        coef = v;
        ++k;
        if (k >= toks.size()) fail(toks.back().line, "coefficient without variable");
      }
      terms.push_back({sign * coef, var_of(toks[k])});
      ++k;
      first = false;
    }
    return terms;
  };

  if (objTokens.empty() || objTokens[0].text != "obj:") fail(1, "objective must be labelled obj:");
  {
    std::size_t k = 1;
    model.set_objective(parse_terms(objTokens, k, false));
  }

  std::size_t k = 0;
  while (k < rowTokens.size()) {
    const Token& label = rowTokens[k];
    if (label.text.size() < 2 || label.text.back() != ':') fail(label.line, "expected constraint label");
    const std::string name = label.text.substr(0, label.text.size() - 1);
    ++k;
    std::vector<Term> terms = parse_terms(rowTokens, k, true);
    if (terms.empty()) fail(label.line, "constraint '" + name + "' has no terms");
    if (k + 1 >= rowTokens.size() || !is_sense(rowTokens[k].text)) {
      fail(label.line, "constraint '" + name + "' lacks sense and rhs");
    }
    const Sense sense = to_sense(rowTokens[k].text);
    double rhs;
    if (!parse_number(rowTokens[k + 1].text, rhs)) fail(rowTokens[k + 1].line, "bad rhs");
    k += 2;
    model.add_constraint(name, std::move(terms), sense, rhs);
  }

  // Bounds: "lo <= v <= hi" or "v >= lo".
  std::vector<Variable> bounded;
  for (std::size_t b = 0; b < boundTokens.size();) {
    double lo, hi;
    if (b + 2 < boundTokens.size() && boundTokens[b + 1].text == ">=") {
      if (!parse_number(boundTokens[b + 2].text, lo)) fail(boundTokens[b].line, "bad bound");
      bounded.push_back({boundTokens[b].text, VarKind::Continuous, lo, std::numeric_limits<double>::infinity()});
      b += 3;
    } else if (b + 4 < boundTokens.size() && boundTokens[b + 1].text == "<=" &&
               boundTokens[b + 3].text == "<=") {
      if (!parse_number(boundTokens[b].text, lo) || !parse_number(boundTokens[b + 4].text, hi)) {
        fail(boundTokens[b].line, "bad bound");
      }
      bounded.push_back({boundTokens[b + 2].text, VarKind::Continuous, lo, hi});
      b += 5;
    } else {
      fail(boundTokens[b].line, "malformed bound");
    }
  }

  // Rebuild with final kinds and bounds; variables only named in Bounds or
  // Binaries are appended.
  std::vector<Variable> vars = model.variables();
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t v = 0; v < vars.size(); ++v) pos[vars[v].name] = v;
  auto slot = [&](const Token& t) -> Variable& {
    auto it = pos.find(t.text);
    if (it == pos.end()) {
      if (!valid_name(t.text)) fail(t.line, "bad variable name '" + t.text + "'");
      pos[t.text] = vars.size();
      vars.push_back({t.text, VarKind::Continuous, 0.0, std::numeric_limits<double>::infinity()});
      return vars.back();
    }
    return vars[it->second];
  };
  for (std::size_t b = 0; b < bounded.size(); ++b) {
    Variable& v = slot({bounded[b].name, 0});
    v.lower = bounded[b].lower;
    v.upper = bounded[b].upper;
  }
  for (const Token& t : binTokens) {
    Variable& v = slot(t);
    v.kind = VarKind::Binary;
    v.lower = 0.0;
    v.upper = 1.0;
  }

  LinearModel out;
  for (const Variable& v : vars) out.add_variable(v.name, v.kind, v.lower, v.upper);
  out.set_objective(model.objective());
  for (const Constraint& r : model.constraints()) out.add_constraint(r.name, r.terms, r.sense, r.rhs);
  return out;
}

}  // namespace ppc
