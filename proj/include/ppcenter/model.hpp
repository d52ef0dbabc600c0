#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ppc {

enum class VarKind { Binary, Continuous };
enum class Sense { LessEqual, Equal, GreaterEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 1.0;
};

struct Term {
  double coef;
  int var;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

// A minimization model. Variables and constraints keep declaration order.
class LinearModel {
 public:
  // Throws std::invalid_argument on a duplicate name.
  int add_variable(const std::string& name, VarKind kind, double lower = 0.0, double upper = 1.0);
  int add_binary(const std::string& name) { return add_variable(name, VarKind::Binary, 0.0, 1.0); }

  // Merges repeated variables and drops zero coefficients.
  void add_constraint(const std::string& name, std::vector<Term> terms, Sense sense, double rhs);
  // Replaces the objective; repeated variables are merged.
  void set_objective(std::vector<Term> terms);

  int find(const std::string& name) const;  // -1 when absent
  int var(const std::string& name) const;   // throws when absent

  // Deletes the named variables, treating them as fixed at zero. A constraint
  // left without terms is dropped when 0 satisfies it; otherwise throws.
  void remove_variables(const std::unordered_set<std::string>& names);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<Term>& objective() const { return obj_; }

  std::size_t count(VarKind kind) const;

 private:
  std::vector<Variable> vars_;
  std::unordered_map<std::string, int> index_;
  std::unordered_set<std::string> rowNames_;
  std::vector<Constraint> rows_;
  std::vector<Term> obj_;
};

std::vector<Term> merge_terms(std::vector<Term> terms);

// CPLEX LP text. Coefficients use 17 significant digits; output depends only
// on the model.
void write_lp(std::ostream& out, const LinearModel& model);
// Fixed-field MPS.
void write_mps(std::ostream& out, const LinearModel& model);

// Strict reader for the subset of LP that write_lp produces. Throws
// ParseError with a line number.
LinearModel read_lp(std::istream& in);

}  // namespace ppc
