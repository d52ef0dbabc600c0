#include "ppcenter/formulations.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ppcenter/bounds.hpp"

namespace ppc {

namespace {

std::string idx(int a) { return std::to_string(a + 1); }
std::string x3(int i, int j, int t) { return "x_" + idx(i) + "_" + idx(j) + "_" + std::to_string(t); }
std::string l3(int i, int j, int t) { return "l_" + idx(i) + "_" + idx(j) + "_" + std::to_string(t); }
std::string x2(int i, int j) { return "x_" + idx(i) + "_" + idx(j); }
std::string zv(int i, int t) { return "z_" + idx(i) + "_" + std::to_string(t); }
std::string kv(const char* prefix, int k) { return std::string(prefix) + "_" + std::to_string(k + 1); }

constexpr double kInf = std::numeric_limits<double>::infinity();

// Assignment (a of customer i) comes after (j of customer i) for CAC purposes.
bool less_preferred(const Instance& inst, int i, int a, int j) { return prefers(inst, i, j, a); }

void apply_fixes(LinearModel& model, const Instance& inst, const SlotMask& xMask,
                 const SlotMask& lambdaMask) {
  const int n = inst.n(), K = inst.K();
  std::unordered_set<std::string> names;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int s = 0; s <= K; ++s) {
        if (xMask.n() > 0 && xMask(i, j, s)) names.insert(x3(i, j, n - K + s));
        if (s > 0 && lambdaMask.n() > 0 && lambdaMask(i, j, s)) names.insert(l3(i, j, n - K + s));
      }
    }
  }
  model.remove_variables(names);
}

// Three-index sorted assignment core shared by FH and F3K.
void add_sorted_assignment(LinearModel& m, const Instance& inst) {
  const int n = inst.n(), p = inst.p(), K = inst.K();
  const int low = n - K;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = low; t <= n; ++t) m.add_binary(x3(i, j, t));
    }
  }
  auto X = [&](int i, int j, int t) { return m.var(x3(i, j, t)); };

  std::vector<Term> centers;
  for (int j = 0; j < n; ++j) centers.push_back({1.0, X(j, j, low)});
  m.add_constraint("centers", centers, Sense::Equal, p);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Term> row;
      for (int t = low; t <= n; ++t) row.push_back({1.0, X(i, j, t)});
      row.push_back({-1.0, X(j, j, low)});
      m.add_constraint("alloc_" + idx(i) + "_" + idx(j), row, Sense::LessEqual, 0.0);
    }
  }
  for (int t = low + 1; t <= n; ++t) {
    std::vector<Term> row;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) row.push_back({1.0, X(i, j, t)});
    }
    m.add_constraint("position_" + std::to_string(t), row, Sense::Equal, 1.0);
  }
  {
    std::vector<Term> row;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) row.push_back({1.0, X(i, j, low)});
    }
    m.add_constraint("lower_count", row, Sense::Equal, low);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Term> row;
    for (int t = low; t <= n; ++t) {
      for (int j = 0; j < n; ++j) row.push_back({1.0, X(i, j, t)});
    }
    m.add_constraint("assign_" + idx(i), row, Sense::Equal, 1.0);
  }
  for (int t = low + 1; t < n; ++t) {
    std::vector<Term> row;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        row.push_back({inst.d(i, j), X(i, j, t)});
        row.push_back({-inst.d(i, j), X(i, j, t + 1)});
      }
    }
    m.add_constraint("order_" + std::to_string(t), row, Sense::LessEqual, 0.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Term> row{{inst.d(i, j), X(i, j, low)}};
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) row.push_back({-inst.d(k, l), X(k, l, low + 1)});
      }
      m.add_constraint("split_" + idx(i) + "_" + idx(j), row, Sense::LessEqual, 0.0);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Term> row;
      for (int t = low; t <= n; ++t) {
        for (int a = 0; a < n; ++a) {
          if (less_preferred(inst, i, a, j)) row.push_back({1.0, X(i, a, t)});
        }
      }
      row.push_back({1.0, X(j, j, low)});
      m.add_constraint("cac_" + idx(i) + "_" + idx(j), row, Sense::LessEqual, 1.0);
    }
  }
}

// Two-index location/allocation core shared by CF3K and PFK.
void add_two_index(LinearModel& m, const Instance& inst) {
  const int n = inst.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        m.add_binary(x2(i, j));
      } else {
        m.add_variable(x2(i, j), VarKind::Continuous, 0.0, 1.0);
      }
    }
  }
}

void add_two_index_rows(LinearModel& m, const Instance& inst) {
  const int n = inst.n();
  auto X = [&](int i, int j) { return m.var(x2(i, j)); };
  std::vector<Term> centers;
  for (int j = 0; j < n; ++j) centers.push_back({1.0, X(j, j)});
  m.add_constraint("centers", centers, Sense::Equal, inst.p());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      m.add_constraint("alloc_" + idx(i) + "_" + idx(j), {{1.0, X(i, j)}, {-1.0, X(j, j)}},
                       Sense::LessEqual, 0.0);
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Term> row;
    for (int j = 0; j < n; ++j) row.push_back({1.0, X(i, j)});
    m.add_constraint("assign_" + idx(i), row, Sense::Equal, 1.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Term> row;
      for (int a = 0; a < n; ++a) {
        if (less_preferred(inst, i, a, j)) row.push_back({1.0, X(i, a)});
      }
      row.push_back({1.0, X(j, j)});
      m.add_constraint("cac_" + idx(i) + "_" + idx(j), row, Sense::LessEqual, 1.0);
    }
  }
}

// Lambda variables with the linking chain shared by F3K and CF3K.
void add_lambda(LinearModel& m, const Instance& inst) {
  const int n = inst.n(), K = inst.K();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = n - K + 1; t <= n; ++t) m.add_variable(l3(i, j, t), VarKind::Continuous, 0.0, kInf);
    }
  }
}

void add_lambda_objective(LinearModel& m, const Instance& inst) {
  const int n = inst.n(), K = inst.K();
  std::vector<Term> obj;
  for (int t = n - K + 1; t <= n; ++t) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) obj.push_back({inst.d(i, j) * inst.q(i), m.var(l3(i, j, t))});
    }
  }
  m.set_objective(obj);
}

void add_lambda_chain(LinearModel& m, const Instance& inst) {
  const int n = inst.n(), K = inst.K();
  auto L = [&](int i, int j, int t) { return m.var(l3(i, j, t)); };
  for (int t = n - K + 1; t < n; ++t) {
    std::vector<Term> row;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        row.push_back({1.0, L(i, j, t)});
        row.push_back({-(1.0 - inst.q(i)), L(i, j, t + 1)});
      }
    }
    m.add_constraint("chain_" + std::to_string(t), row, Sense::Equal, 0.0);
  }
  std::vector<Term> top;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) top.push_back({1.0, L(i, j, n)});
  }
  m.add_constraint("top_sum", top, Sense::Equal, 1.0);
}

void add_window_mass(LinearModel& m, const Instance& inst) {
  const int n = inst.n(), K = inst.K();
  std::vector<Term> row;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = n - K + 1; t <= n; ++t) row.push_back({inst.q(i), m.var(l3(i, j, t))});
    }
  }
  m.add_constraint("window_mass", row, Sense::LessEqual, 1.0);
}

void add_prefix(LinearModel& m, const Instance& inst) {
  const int n = inst.n(), K = inst.K();
  for (int i = 0; i < n; ++i) {
    for (int t = n - K + 2; t <= n; ++t) {
      std::vector<Term> row;
      for (int a = 0; a < n; ++a) {
        for (int j = 0; j < n; ++j) row.push_back({1.0, m.var(l3(a, j, t - 1))});
      }
      for (int j = 0; j < n; ++j) {
        for (int s = n - K + 1; s <= t; ++s) row.push_back({-(1.0 - inst.q(i)), m.var(l3(i, j, s))});
      }
      m.add_constraint("prefix_" + idx(i) + "_" + std::to_string(t), row, Sense::GreaterEqual, 0.0);
    }
  }
}

void require_fixing_inputs(const FixOptions& o, const FixingInputs& in) {
  if (o.upperBound && !in.ub) throw std::invalid_argument("variant needs an upper bound");
}

}  // namespace

VariantSpec parse_variant(Formulation f, const std::string& variant) {
  VariantSpec v;
  v.formulation = f;
  std::string body = variant;
  const std::string form = formulation_name(f);
  if (body.rfind("custom:", 0) == 0) {
    v.name = form + ":" + body;
    std::stringstream ss(body.substr(7));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok == "window-mass") v.windowMass = true;
      else if (tok == "second-link") v.secondLink = true;
      else if (tok == "prefix") v.prefix = true;
      else if (tok == "dist-chain") v.distChain = true;
      else if (tok == "z-link") v.zLink = true;
      else if (tok == "trivial") v.fixing.trivial = true;
      else if (tok == "ub") v.fixing.upperBound = true;
      else if (tok == "ud") v.fixing.positionalUp = true;
      else if (tok == "ld") v.fixing.positionalLow = true;
      else if (tok == "zplus") v.fixing.zLow = true;
      else if (tok == "dtilde") v.fixing.dTilde = true;
      else throw std::invalid_argument("unknown variant token '" + tok + "'");
    }
    const bool lambdaIneq = v.windowMass || v.secondLink || v.prefix || v.distChain || v.zLink;
    if ((f == Formulation::FH || f == Formulation::PFK) && lambdaIneq) {
      throw std::invalid_argument(form + " has no optional inequalities");
    }
    if (f == Formulation::F3K && (v.distChain || v.zLink)) {
      throw std::invalid_argument("dist-chain and z-link belong to CF3K");
    }
    if (f == Formulation::CF3K && v.secondLink) {
      throw std::invalid_argument("second-link belongs to F3K");
    }
    return v;
  }
  if (const auto colon = body.find(':'); colon != std::string::npos) {
    if (parse_formulation(body.substr(0, colon)) != f) {
      throw std::invalid_argument("variant '" + variant + "' does not belong to " + form);
    }
    body = body.substr(colon + 1);
  }
  int number = 0;
  try {
    std::size_t used = 0;
    number = std::stoi(body, &used);
    if (used != body.size()) number = 0;
  } catch (const std::exception&) {
    number = 0;
  }
  v.name = form + ":" + std::to_string(number);
  const FixOptions all{true, true, true, true, true, true};
  switch (f) {
    case Formulation::FH:
      if (number == 1) return v;
      if (number == 2) {
        v.fixing.trivial = true;
        return v;
      }
      break;
    case Formulation::F3K:
      if (number < 1 || number > 7) break;
      v.windowMass = true;
      if (number == 1) {
        v.fixing.trivial = true;
        return v;
      }
      v.fixing = all;
      if (number == 3) v.fixing.positionalUp = false;
      if (number == 4 || number == 7) v.fixing.dTilde = false;
      if (number >= 5) {
        v.secondLink = true;
        v.prefix = true;
      }
      if (number == 6) v.prefixMode = "static";
      return v;
    case Formulation::CF3K:
      if (number < 1 || number > 5) break;
      v.windowMass = true;
      if (number == 1) {
        v.fixing.trivial = true;
        return v;
      }
      v.fixing = all;
      if (number >= 3) {
        v.prefix = true;
        v.zLink = true;
      }
      if (number == 5) v.distChain = true;
      return v;
    case Formulation::PFK:
      if (number == 1) {
        v.fixing.trivial = true;
        return v;
      }
      if (number == 2) {
        v.fixing = all;
        v.fixing.dTilde = false;
        return v;
      }
      break;
  }
  throw std::invalid_argument("unknown variant '" + variant + "' for " + form);
}

LinearModel build_fh(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs) {
  if (!inst.homogeneous()) throw std::invalid_argument("FH needs equal demand probabilities");
  const int n = inst.n(), K = inst.K();
  LinearModel m;
  add_sorted_assignment(m, inst);
  const double q = inst.q(0);
  std::vector<Term> obj;
  for (int t = n - K + 1; t <= n; ++t) {
    const double weight = std::pow(1.0 - q, n - t) * q;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) obj.push_back({weight * inst.d(i, j), m.var(x3(i, j, t))});
    }
  }
  m.set_objective(obj);
  if (variant.fixing.trivial) {
    const FixReport r = build_fix_report(inst, Formulation::FH, variant.fixing, inputs);
    apply_fixes(m, inst, r.fixedX, SlotMask());
  }
  return m;
}

LinearModel build_f3k(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs) {
  require_fixing_inputs(variant.fixing, inputs);
  const int n = inst.n(), K = inst.K();
  LinearModel m;
  add_sorted_assignment(m, inst);
  add_lambda(m, inst);
  add_lambda_objective(m, inst);
  const std::vector<double> kap = kappa(inst);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = n - K + 1; t <= n; ++t) {
        m.add_constraint("lam_link_" + idx(i) + "_" + idx(j) + "_" + std::to_string(t),
                         {{1.0, m.var(l3(i, j, t))}, {-kap[t], m.var(x3(i, j, t))}},
                         Sense::LessEqual, 0.0);
      }
    }
  }
  add_lambda_chain(m, inst);
  if (variant.windowMass) add_window_mass(m, inst);
  if (variant.secondLink && K >= 2) {
    std::vector<Term> row;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        row.push_back({1.0, m.var(l3(i, j, n - 1))});
        row.push_back({-(1.0 - inst.q(i)), m.var(x3(i, j, n))});
      }
    }
    m.add_constraint("second_link", row, Sense::Equal, 0.0);
  }
  if (variant.prefix) add_prefix(m, inst);
  const FixReport r = build_fix_report(inst, Formulation::F3K, variant.fixing, inputs);
  apply_fixes(m, inst, r.fixedX, r.fixedLambda);
  return m;
}

LinearModel build_cf3k(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs) {
  require_fixing_inputs(variant.fixing, inputs);
  const int n = inst.n(), K = inst.K();
  LinearModel m;
  add_two_index(m, inst);
  for (int i = 0; i < n; ++i) {
    for (int t = n - K + 1; t <= n; ++t) m.add_binary(zv(i, t));
  }
  add_lambda(m, inst);
  add_lambda_objective(m, inst);
  auto X = [&](int i, int j) { return m.var(x2(i, j)); };
  auto Z = [&](int i, int t) { return m.var(zv(i, t)); };
  auto L = [&](int i, int j, int t) { return m.var(l3(i, j, t)); };

  add_lambda_chain(m, inst);
  add_two_index_rows(m, inst);
  for (int t = n - K + 1; t <= n; ++t) {
    std::vector<Term> row;
    for (int i = 0; i < n; ++i) row.push_back({1.0, Z(i, t)});
    m.add_constraint("position_" + std::to_string(t), row, Sense::Equal, 1.0);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Term> row;
    for (int t = n - K + 1; t <= n; ++t) row.push_back({1.0, Z(i, t)});
    m.add_constraint("one_position_" + idx(i), row, Sense::LessEqual, 1.0);
  }
  const std::vector<double> kap = kappa(inst);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = n - K + 1; t <= n; ++t) {
        m.add_constraint("lam_link_" + idx(i) + "_" + idx(j) + "_" + std::to_string(t),
                         {{1.0, L(i, j, t)}, {-kap[t], X(i, j)}}, Sense::LessEqual, 0.0);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int t = n - K + 1; t <= n; ++t) {
      std::vector<Term> row;
      for (int j = 0; j < n; ++j) row.push_back({1.0, L(i, j, t)});
      row.push_back({-1.0, Z(i, t)});
      m.add_constraint("lam_z_" + idx(i) + "_" + std::to_string(t), row, Sense::LessEqual, 0.0);
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Term> row;
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) row.push_back({inst.d(k, j), L(k, j, n)});
    }
    for (int j = 0; j < n; ++j) row.push_back({-inst.d(i, j), X(i, j)});
    m.add_constraint("top_" + idx(i), row, Sense::GreaterEqual, 0.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = n - K + 1; t <= n; ++t) {
        std::vector<Term> row{{static_cast<double>(t), Z(i, t)}, {static_cast<double>(t), X(i, j)}};
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            if (inst.d(a, b) <= inst.d(i, j)) row.push_back({-1.0, X(a, b)});
          }
        }
        m.add_constraint("rank_" + idx(i) + "_" + idx(j) + "_" + std::to_string(t), row,
                         Sense::LessEqual, t);
      }
    }
  }
  if (variant.windowMass) add_window_mass(m, inst);
  if (variant.prefix) add_prefix(m, inst);
  if (variant.distChain) {
    for (int t = n - K + 1; t < n; ++t) {
      std::vector<Term> row;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          row.push_back({inst.d(i, j), L(i, j, t)});
          row.push_back({-inst.d(i, j) * (1.0 - inst.q(i)), L(i, j, t + 1)});
        }
      }
      m.add_constraint("dist_chain_" + std::to_string(t), row, Sense::LessEqual, 0.0);
    }
  }
  if (variant.zLink && K >= 2) {
    std::vector<Term> row;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) row.push_back({1.0, L(i, j, n - 1)});
      row.push_back({-(1.0 - inst.q(i)), Z(i, n)});
    }
    m.add_constraint("z_link", row, Sense::Equal, 0.0);
  }
  const FixReport r = build_fix_report(inst, Formulation::CF3K, variant.fixing, inputs);
  apply_fixes(m, inst, SlotMask(), r.fixedLambda);
  return m;
}

LinearModel build_pfk(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs) {
  require_fixing_inputs(variant.fixing, inputs);
  const int n = inst.n(), K = inst.K();
  const std::vector<SitePair> pairs = sorted_pairs(inst);
  const int m = static_cast<int>(pairs.size());
  LinearModel md;
  add_two_index(md, inst);
  for (int k = 0; k < m; ++k) md.add_variable(kv("y", k), VarKind::Continuous, 0.0, kInf);
  for (int k = 0; k < m; ++k) md.add_variable(kv("lam", k), VarKind::Continuous, 0.0, kInf);
  for (int k = 0; k < m; ++k) md.add_binary(kv("s", k));
  auto X = [&](int i, int j) { return md.var(x2(i, j)); };
  auto Y = [&](int k) { return md.var(kv("y", k)); };
  auto Lam = [&](int k) { return md.var(kv("lam", k)); };
  auto S = [&](int k) { return md.var(kv("s", k)); };

  std::vector<Term> obj;
  for (int k = 0; k < m; ++k) obj.push_back({pairs[k].d, Y(k)});
  md.set_objective(obj);
  add_two_index_rows(md, inst);

  const int last = m - 1;
  md.add_constraint("chain_end", {{1.0, Y(last)}, {1.0, Lam(last)}}, Sense::Equal, 1.0);
  for (int k = 0; k < last; ++k) {
    md.add_constraint("chain_" + std::to_string(k + 1), {{1.0, Lam(k)}, {1.0, Y(k)}, {-1.0, Lam(k + 1)}},
                      Sense::Equal, 0.0);
  }
  for (int k = 0; k < m; ++k) {
    const auto [i, j, d] = pairs[k];
    const std::string K1 = std::to_string(k + 1);
    if (i != j) {
      md.add_constraint("y_cap_" + K1, {{1.0, Y(k)}, {-inst.q(i), X(i, j)}, {-inst.q(j), X(j, i)}},
                        Sense::LessEqual, 0.0);
    } else {
      md.add_constraint("y_cap_" + K1, {{1.0, Y(k)}, {-inst.q(i), X(i, i)}}, Sense::LessEqual, 0.0);
    }
    // Active assignments outside the lower n-K take y = q lambda_{k+1};
    // beyond the last pair lambda is the constant 1.
    auto link = [&](const std::string& tag, int a, int b) {
      const double q = inst.q(a);
      std::vector<Term> lo{{1.0, Y(k)}, {-1.0, X(a, b)}, {1.0, S(k)}};
      std::vector<Term> hi{{1.0, Y(k)}, {1.0, X(a, b)}};
      double loRhs = -1.0, hiRhs = 1.0;
      if (k < last) {
        lo.push_back({-q, Lam(k + 1)});
        hi.push_back({-q, Lam(k + 1)});
      } else {
        loRhs += q;
        hiRhs += q;
      }
      md.add_constraint("y_low" + tag + "_" + K1, lo, Sense::GreaterEqual, loRhs);
      md.add_constraint("y_high" + tag + "_" + K1, hi, Sense::LessEqual, hiRhs);
    };
    link("", i, j);
    if (i != j) link("_rev", j, i);
  }
  {
    std::vector<Term> row;
    for (int k = 0; k < m; ++k) row.push_back({1.0, S(k)});
    md.add_constraint("lower_count", row, Sense::Equal, n - K);
  }
  for (int k = 0; k < m; ++k) {
    const auto [i, j, d] = pairs[k];
    const std::string K1 = std::to_string(k + 1);
    if (i == j) {
      md.add_constraint("s_center_" + K1, {{1.0, S(k)}, {-1.0, X(i, i)}}, Sense::Equal, 0.0);
    } else {
      md.add_constraint("s_cap_" + K1, {{1.0, S(k)}, {-1.0, X(i, j)}, {-1.0, X(j, i)}},
                        Sense::LessEqual, 0.0);
    }
  }
  for (int k = 0; k < m; ++k) {
    const auto [i, j, d] = pairs[k];
    const std::string K1 = std::to_string(k + 1);
    bool tieFree = true;
    for (int l = 0; l < m && tieFree; ++l) tieFree = l == k || pairs[l].d != d;
    if (tieFree) {
      std::vector<Term> row{{static_cast<double>(K), S(k)}};
      for (int l = k + 1; l < m; ++l) {
        row.push_back({-1.0, X(pairs[l].i, pairs[l].j)});
        row.push_back({-1.0, X(pairs[l].j, pairs[l].i)});
      }
      md.add_constraint("s_rank_" + K1, row, Sense::LessEqual, 0.0);
      continue;
    }
    // Assignments strictly after (a, b) in the extended distance order.
    auto rank_row = [&](const std::string& tag, int a, int b) {
      std::vector<Term> row{{static_cast<double>(K), S(k)}, {static_cast<double>(K), X(a, b)}};
      const OrderKey key = order_key(inst, a, b);
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          if (key < order_key(inst, u, v)) row.push_back({-1.0, X(u, v)});
        }
      }
      md.add_constraint("s_rank" + tag + "_" + K1, row, Sense::LessEqual, K);
    };
    rank_row("", i, j);
    if (i != j) rank_row("_rev", j, i);
  }

  const FixReport r = build_fix_report(inst, Formulation::PFK, variant.fixing, inputs);
  for (int k = 0; k < m; ++k) {
    if (!r.equalities.empty() && r.equalities[k]) {
      const auto [i, j, d] = pairs[k];
      md.add_constraint("s_equal_" + std::to_string(k + 1), {{1.0, S(k)}, {-1.0, X(i, j)}, {-1.0, X(j, i)}},
                        Sense::Equal, 0.0);
    }
  }
  std::unordered_set<std::string> names;
  for (int k = 0; k < static_cast<int>(r.fixedS.size()); ++k) {
    if (r.fixedS[k]) names.insert(kv("s", k));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!r.fixedPairX.empty() && r.fixedPairX[static_cast<std::size_t>(i) * n + j]) names.insert(x2(i, j));
    }
  }
  md.remove_variables(names);
  return md;
}

LinearModel build_model(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs) {
  switch (variant.formulation) {
    case Formulation::FH: return build_fh(inst, variant, inputs);
    case Formulation::F3K: return build_f3k(inst, variant, inputs);
    case Formulation::CF3K: return build_cf3k(inst, variant, inputs);
    case Formulation::PFK: return build_pfk(inst, variant, inputs);
  }
  throw std::invalid_argument("unknown formulation");
}

}  // namespace ppc
