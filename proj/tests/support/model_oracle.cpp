#include "model_oracle.hpp"

#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

LpResult solve_lp(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                  const std::vector<ppc::Sense>& sense, const std::vector<double>& b,
                  const std::vector<double>& lower, const std::vector<double>& upper) {
  const int nv = static_cast<int>(c.size());
  // Shift to w = x - lower >= 0 and add explicit upper-bound rows.
  std::vector<std::vector<double>> rows;
  std::vector<ppc::Sense> senses;
  std::vector<double> rhs;
  for (std::size_t r = 0; r < a.size(); ++r) {
    double shift = 0.0;
    for (int v = 0; v < nv; ++v) shift += a[r][v] * lower[v];
    rows.push_back(a[r]);
    senses.push_back(sense[r]);
    rhs.push_back(b[r] - shift);
  }
  for (int v = 0; v < nv; ++v) {
    if (upper[v] == kInf) continue;
    std::vector<double> row(nv, 0.0);
    row[v] = 1.0;
    rows.push_back(row);
    senses.push_back(ppc::Sense::LessEqual);
    rhs.push_back(upper[v] - lower[v]);
  }
  const int m = static_cast<int>(rows.size());
  int slacks = 0;
  for (auto s : senses) slacks += s != ppc::Sense::Equal;
  const int cols = nv + slacks + m;  // structural, slack, artificial
  const int artBase = nv + slacks;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  std::vector<int> basis(m);
  int slack = nv;
  for (int r = 0; r < m; ++r) {
    for (int v = 0; v < nv; ++v) t[r][v] = rows[r][v];
    if (senses[r] == ppc::Sense::LessEqual) t[r][slack++] = 1.0;
    if (senses[r] == ppc::Sense::GreaterEqual) t[r][slack++] = -1.0;
    t[r][cols] = rhs[r];
    if (t[r][cols] < 0) {
      for (double& e : t[r]) e = -e;
    }
    t[r][artBase + r] = 1.0;
    basis[r] = artBase + r;
  }

  auto pivot = [&](int pr, int pc) {
    const double pv = t[pr][pc];
    for (double& e : t[pr]) e /= pv;
    for (int r = 0; r < m; ++r) {
      if (r == pr || t[r][pc] == 0.0) continue;
      const double f = t[r][pc];
      for (int k = 0; k <= cols; ++k) t[r][k] -= f * t[pr][k];
    }
    basis[pr] = pc;
  };

  // Minimizes cost over the tableau; columns >= limit may not enter.
  auto run = [&](const std::vector<double>& cost, int limit) -> bool {
    while (true) {
      int enter = -1;
      for (int k = 0; k < limit; ++k) {
        double red = cost[k];
        for (int r = 0; r < m; ++r) red -= cost[basis[r]] * t[r][k];
        if (red < -kEps) {
          enter = k;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = kInf;
      for (int r = 0; r < m; ++r) {
        if (t[r][enter] > kEps) {
          const double ratio = t[r][cols] / t[r][enter];
          if (leave < 0 || ratio < best - kEps ||
              (std::fabs(ratio - best) <= kEps && basis[r] < basis[leave])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  std::vector<double> phase1(cols, 0.0);
  for (int r = 0; r < m; ++r) phase1[artBase + r] = 1.0;
  run(phase1, cols);
  double infeas = 0.0;
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= artBase) infeas += t[r][cols];
  }
  LpResult res;
  if (infeas > 1e-7) return res;
  for (int r = 0; r < m; ++r) {
    if (basis[r] < artBase) continue;
    for (int k = 0; k < artBase; ++k) {
      if (std::fabs(t[r][k]) > kEps) {
        pivot(r, k);
        break;
      }
    }
  }
  std::vector<double> phase2(cols, 0.0);
  for (int v = 0; v < nv; ++v) phase2[v] = c[v];
  if (!run(phase2, artBase)) {
    res.status = LpResult::Unbounded;
    return res;
  }
  res.status = LpResult::Optimal;
  res.x.assign(nv, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < nv) res.x[basis[r]] = t[r][cols];
  }
  res.value = 0.0;
  for (int v = 0; v < nv; ++v) {
    res.x[v] += lower[v];
    res.value += c[v] * res.x[v];
  }
  return res;
}

namespace {

struct Search {
  const ppc::LinearModel& model;
  std::vector<int> order;  // branching order over binaries
  EnumerationResult best;

  // Tightens bounds to a fixpoint; false when infeasible.
  bool propagate(std::vector<double>& lb, std::vector<double>& ub) const {
    const auto& vars = model.variables();
    for (int pass = 0; pass < 100; ++pass) {
      bool changed = false;
      for (const auto& row : model.constraints()) {
        auto side = [&](bool upperSide) -> bool {
          // upperSide: row <= rhs; otherwise row >= rhs (handled by negation).
          const double sgn = upperSide ? 1.0 : -1.0;
          const double rhs = sgn * row.rhs;
          double finite = 0.0;
          int infinite = 0;
          for (const auto& t : row.terms) {
            const double a = sgn * t.coef;
            const double bound = a > 0 ? lb[t.var] : ub[t.var];
            if (std::isinf(bound)) {
              ++infinite;
            } else {
              finite += a * bound;
            }
          }
          if (infinite == 0 && finite > rhs + 1e-7 * (1.0 + std::fabs(rhs))) return false;
          for (const auto& t : row.terms) {
            const double a = sgn * t.coef;
            const double bound = a > 0 ? lb[t.var] : ub[t.var];
            double rest;
            if (std::isinf(bound)) {
              if (infinite != 1) continue;
              rest = finite;
            } else {
              if (infinite != 0) continue;
              rest = finite - a * bound;
            }
            const double limit = (rhs - rest) / a;
            const bool binary = vars[t.var].kind == ppc::VarKind::Binary;
            if (a > 0) {
              const double nu = binary ? std::floor(limit + 1e-7) : limit + 1e-9 * (1.0 + std::fabs(limit));
              if (nu < ub[t.var] - 1e-9) {
                ub[t.var] = nu;
                changed = true;
              }
            } else {
              const double nl = binary ? std::ceil(limit - 1e-7) : limit - 1e-9 * (1.0 + std::fabs(limit));
              if (nl > lb[t.var] + 1e-9) {
                lb[t.var] = nl;
                changed = true;
              }
            }
            if (lb[t.var] > ub[t.var] + 1e-7) return false;
          }
          return true;
        };
        if (row.sense != ppc::Sense::GreaterEqual && !side(true)) return false;
        if (row.sense != ppc::Sense::LessEqual && !side(false)) return false;
      }
      if (!changed) return true;
    }
    return true;
  }

  void leaf(const std::vector<double>& lb, const std::vector<double>& ub) {
    ++best.leaves;
    const auto& vars = model.variables();
    std::vector<int> freeIdx(vars.size(), -1);
    std::vector<double> lo, hi, c;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (ub[v] - lb[v] > 1e-9) {
        freeIdx[v] = static_cast<int>(lo.size());
        lo.push_back(lb[v]);
        hi.push_back(ub[v]);
        c.push_back(0.0);
      }
    }
    auto fixed_value = [&](int v) { return lb[v]; };
    double constant = 0.0;
    for (const auto& t : model.objective()) {
      if (freeIdx[t.var] >= 0) {
        c[freeIdx[t.var]] += t.coef;
      } else {
        constant += t.coef * fixed_value(t.var);
      }
    }
    std::vector<std::vector<double>> a;
    std::vector<ppc::Sense> sense;
    std::vector<double> b;
    for (const auto& row : model.constraints()) {
      std::vector<double> coefs(lo.size(), 0.0);
      double rhs = row.rhs;
      bool any = false;
      for (const auto& t : row.terms) {
        if (freeIdx[t.var] >= 0) {
          coefs[freeIdx[t.var]] += t.coef;
          any = true;
        } else {
          rhs -= t.coef * fixed_value(t.var);
        }
      }
      if (!any) {
        const double tol = 1e-7 * (1.0 + std::fabs(row.rhs));
        const bool ok = (row.sense == ppc::Sense::LessEqual && 0.0 <= rhs + tol) ||
                        (row.sense == ppc::Sense::GreaterEqual && 0.0 >= rhs - tol) ||
                        (row.sense == ppc::Sense::Equal && std::fabs(rhs) <= tol);
        if (!ok) return;
        continue;
      }
      a.push_back(std::move(coefs));
      sense.push_back(row.sense);
      b.push_back(rhs);
    }
    double value = constant;
    if (!lo.empty()) {
      const LpResult lp = solve_lp(c, a, sense, b, lo, hi);
      if (lp.status == LpResult::Infeasible) return;
      if (lp.status == LpResult::Unbounded) {
        value = -kInf;
      } else {
        value += lp.value;
      }
    }
    if (!best.feasible || value < best.value) {
      best.feasible = true;
      best.value = value;
    }
  }

  void dfs(std::vector<double> lb, std::vector<double> ub) {
    if (!propagate(lb, ub)) return;
    for (int v : order) {
      if (ub[v] - lb[v] > 0.5) {
        for (double val : {1.0, 0.0}) {
          auto l2 = lb, u2 = ub;
          l2[v] = u2[v] = val;
          dfs(std::move(l2), std::move(u2));
        }
        return;
      }
    }
    leaf(lb, ub);
  }
};

}  // namespace

EnumerationResult minimize(const ppc::LinearModel& model) {
  Search s{model, {}, {}};
  const auto& vars = model.variables();
  std::vector<char> first(vars.size(), 0);
  for (const auto& row : model.constraints()) {
    if (row.name != "centers") continue;
    for (const auto& t : row.terms) {
      if (vars[t.var].kind == ppc::VarKind::Binary) {
        first[t.var] = 1;
        s.order.push_back(t.var);
      }
    }
  }
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (vars[v].kind == ppc::VarKind::Binary && !first[v]) s.order.push_back(static_cast<int>(v));
  }
  std::vector<double> lb(vars.size()), ub(vars.size());
  for (std::size_t v = 0; v < vars.size(); ++v) {
    lb[v] = vars[v].lower;
    ub[v] = vars[v].upper;
  }
  s.dfs(lb, ub);
  return s.best;
}

}  // namespace oracle
