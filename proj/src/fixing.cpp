#include "ppcenter/fixing.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ppcenter/vns.hpp"

namespace ppc {

std::string formulation_name(Formulation f) {
  switch (f) {
    case Formulation::FH: return "FH";
    case Formulation::F3K: return "F3K";
    case Formulation::CF3K: return "CF3K";
    case Formulation::PFK: return "PFK";
  }
  return "?";
}

Formulation parse_formulation(const std::string& name) {
  std::string up;
  for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "FH") return Formulation::FH;
  if (up == "F3K") return Formulation::F3K;
  if (up == "CF3K") return Formulation::CF3K;
  if (up == "PFK") return Formulation::PFK;
  throw std::invalid_argument("unknown formulation '" + name + "'");
}

FixingInputs compute_fixing_inputs(const Instance& inst, const FixOptions& options,
                                   std::uint64_t seed, const EnumerationOptions& opts) {
  FixingInputs in;
  if (options.upperBound) in.ub = vns_run(inst, seed, 5, opts.workers).bestValue;
  if (options.positionalUp || options.positionalLow) in.positional = positional_bounds(inst, opts);
  if (options.zLow) {
    for (int t = 1; t <= inst.K(); ++t) in.zPlus[t] = z_plus(inst, t, opts);
  }
  if (options.dTilde) in.dTildeStar = d_tilde_star(inst, opts);
  return in;
}

void SlotMask::merge(const SlotMask& other) {
  if (bits_.empty()) {
    *this = other;
    return;
  }
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= other.bits_[k];
}

std::int64_t SlotMask::count(bool windowOnly) const {
  std::int64_t c = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (windowOnly && k % (K_ + 1) == 0) continue;
    c += bits_[k];
  }
  return c;
}

SlotMask trivial_fixes(const Instance& inst) {
  const int n = inst.n(), p = inst.p(), K = inst.K();
  SlotMask m(n, K);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // The aggregate slot holds positions 1..n-K; the p centers fill 1..p.
      if (i != j && n - K <= p) m.set(i, j, 0);
      if (i == j) {
        for (int s = 1; s <= K; ++s) m.set(i, j, s);
      }
      int closer = 0;
      for (int a = 0; a < n; ++a) closer += inst.d(i, a) < inst.d(i, j);
      if (closer > n - p) {
        for (int s = 0; s <= K; ++s) m.set(i, j, s);
      }
    }
  }
  return m;
}

SlotMask fix_by_upper_bound(const Instance& inst, double ub) {
  if (!(ub > 0.0)) throw std::invalid_argument("upper bound must be positive");
  const int n = inst.n(), K = inst.K();
  SlotMask m(n, K);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (inst.q(i) * inst.d(i, j) > ub) {
        for (int s = 1; s <= K; ++s) m.set(i, j, s);
      }
    }
  }
  return m;
}

SlotMask fix_by_positional_upper(const Instance& inst, const std::map<int, double>& Ud) {
  const int n = inst.n(), K = inst.K();
  // cap[s]: tightest bound among positions at or above slot s.
  std::vector<double> cap(K + 1, std::numeric_limits<double>::infinity());
  for (int s = K; s >= 0; --s) {
    if (s < K) cap[s] = cap[s + 1];
    if (auto it = Ud.find(n - K + s); it != Ud.end()) cap[s] = std::min(cap[s], it->second);
  }
  SlotMask m(n, K);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int s = 0; s <= K; ++s) {
        if (inst.d(i, j) > cap[s]) m.set(i, j, s);
      }
    }
  }
  return m;
}

namespace {

// floor[s] for window slots: tightest lower bound among positions at or below.
SlotMask fix_below(const Instance& inst, const std::map<int, double>& byPosition) {
  const int n = inst.n(), K = inst.K();
  std::vector<double> floor(K + 1, -std::numeric_limits<double>::infinity());
  for (int s = 1; s <= K; ++s) {
    floor[s] = floor[s - 1];
    if (auto it = byPosition.find(n - K + s); it != byPosition.end()) {
      floor[s] = std::max(floor[s], it->second);
    }
  }
  SlotMask m(n, K);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int s = 1; s <= K; ++s) {
        if (inst.d(i, j) < floor[s]) m.set(i, j, s);
      }
    }
  }
  return m;
}

}  // namespace

SlotMask fix_by_positional_lower(const Instance& inst, const std::map<int, double>& Ld) {
  return fix_below(inst, Ld);
}

SlotMask fix_by_z_plus(const Instance& inst, const std::map<int, double>& zPlus) {
  std::map<int, double> byPosition;
  for (const auto& [t, z] : zPlus) byPosition[inst.n() - t + 1] = z;
  return fix_below(inst, byPosition);
}

SlotMask fix_by_dtilde(const Instance& inst, double dstar) {
  const int n = inst.n(), K = inst.K();
  SlotMask m(n, K);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (inst.d(i, j) * inst.q(i) < dstar) m.set(i, j, K);
    }
  }
  return m;
}

std::vector<SitePair> sorted_pairs(const Instance& inst) {
  if (!inst.symmetric()) {
    throw std::invalid_argument("the pair formulation needs a symmetric distance matrix");
  }
  std::vector<SitePair> pairs;
  for (int i = 0; i < inst.n(); ++i) {
    for (int j = i; j < inst.n(); ++j) pairs.push_back({i, j, inst.d(i, j)});
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const SitePair& a, const SitePair& b) { return a.d < b.d; });
  return pairs;
}

namespace {

struct Rule {
  const char* label;
  SlotMask mask;
};

std::vector<Rule> selected_rules(const Instance& inst, const FixOptions& o,
                                 const FixingInputs& in) {
  std::vector<Rule> rules;
  if (o.trivial) rules.push_back({"trivial", trivial_fixes(inst)});
  if (o.upperBound) {
    if (!in.ub) throw std::invalid_argument("upper-bound fixing needs an upper bound");
    rules.push_back({"ub", fix_by_upper_bound(inst, *in.ub)});
  }
  if (o.positionalUp) rules.push_back({"ud", fix_by_positional_upper(inst, in.positional.Ud)});
  if (o.positionalLow) rules.push_back({"ld", fix_by_positional_lower(inst, in.positional.Ld)});
  if (o.zLow) rules.push_back({"zplus", fix_by_z_plus(inst, in.zPlus)});
  if (o.dTilde) rules.push_back({"dtilde", fix_by_dtilde(inst, in.dTildeStar)});
  return rules;
}

// Assignment (i, j) never reaches a window position under `mask`.
bool excluded_from_window(const SlotMask& mask, int i, int j) {
  for (int s = 1; s <= mask.K(); ++s) {
    if (!mask(i, j, s)) return false;
  }
  return true;
}

void pair_report(const Instance& inst, const FixOptions& o, const FixingInputs& in,
                 FixReport& r) {
  const int n = inst.n(), p = inst.p(), K = inst.K();
  const std::vector<SitePair> pairs = sorted_pairs(inst);
  const int m = static_cast<int>(pairs.size());
  r.fixedS.assign(m, 0);
  r.fixedPairX.assign(static_cast<std::size_t>(n) * n, 0);
  r.equalities.assign(m, 0);
  const std::int64_t offPairs = m - n;

  if (o.trivial) {
    std::int64_t sCount = 0, xCount = 0;
    for (int k = 0; k < m; ++k) {
      int notSmaller = 0;
      for (int l = 0; l < m; ++l) notSmaller += l != k && pairs[l].d >= pairs[k].d;
      if (notSmaller < K) {
        r.fixedS[k] = 1;
        ++sCount;
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int lessPreferred = 0;
        for (int a = 0; a < n; ++a) lessPreferred += a != j && prefers(inst, i, j, a);
        if (lessPreferred < p - 1) {
          r.fixedPairX[static_cast<std::size_t>(i) * n + j] = 1;
          ++xCount;
        }
      }
    }
    r.rows.push_back({"trivial", "s", sCount, m});
    r.rows.push_back({"trivial", "x", xCount, static_cast<std::int64_t>(n) * (n - 1)});
  }

  if (o.positionalUp) {
    std::int64_t count = 0;
    if (auto it = in.positional.Ud.find(n - K); it != in.positional.Ud.end()) {
      for (int k = 0; k < m; ++k) {
        if (pairs[k].d > it->second) {
          count += !r.fixedS[k];
          r.fixedS[k] = 1;
        }
      }
    }
    r.rows.push_back({"ud", "s", count, m});
  }

  // Equalities: both directions of a pair are kept out of the window.
  const SlotMask base = o.trivial ? trivial_fixes(inst) : SlotMask(n, K);
  SlotMask all = base;
  auto equalities_from = [&](const char* label, const SlotMask& lemma) {
    SlotMask mask = base;
    mask.merge(lemma);
    all.merge(lemma);
    std::int64_t count = 0;
    for (int k = n; k < m; ++k) {
      const auto& pr = pairs[k];
      if (pr.i == pr.j) continue;
      if (excluded_from_window(mask, pr.i, pr.j) && excluded_from_window(mask, pr.j, pr.i)) ++count;
    }
    r.rows.push_back({label, "equality", count, offPairs});
  };
  if (o.upperBound) {
    if (!in.ub) throw std::invalid_argument("upper-bound fixing needs an upper bound");
    equalities_from("ub", fix_by_upper_bound(inst, *in.ub));
  }
  if (o.positionalLow) {
    std::map<int, double> first;
    if (auto it = in.positional.Ld.find(n - K + 1); it != in.positional.Ld.end()) {
      first[it->first] = it->second;
    }
    equalities_from("ld", fix_by_positional_lower(inst, first));
  }
  if (o.zLow) {
    std::map<int, double> first;
    if (auto it = in.zPlus.find(K); it != in.zPlus.end()) first[K] = it->second;
    equalities_from("zplus", fix_by_z_plus(inst, first));
  }
  const bool anyEquality = o.upperBound || o.positionalLow || o.zLow;
  std::int64_t eqCount = 0, sCount = 0;
  for (int k = 0; k < m; ++k) {
    const auto& pr = pairs[k];
    if (anyEquality && pr.i != pr.j && excluded_from_window(all, pr.i, pr.j) &&
        excluded_from_window(all, pr.j, pr.i)) {
      r.equalities[k] = 1;
      ++eqCount;
    }
    sCount += r.fixedS[k];
  }
  r.rows.push_back({"combined", "s", sCount, m});
  r.rows.push_back({"combined", "equality", eqCount, offPairs});
}

}  // namespace

FixReport build_fix_report(const Instance& inst, Formulation formulation,
                           const FixOptions& options, const FixingInputs& inputs) {
  FixReport r;
  r.formulation = formulation;
  const int n = inst.n(), K = inst.K();
  const std::int64_t xTotal = static_cast<std::int64_t>(n) * n * (K + 1);
  const std::int64_t lambdaTotal = static_cast<std::int64_t>(n) * n * K;

  switch (formulation) {
    case Formulation::FH:
      if (options.upperBound || options.positionalUp || options.positionalLow || options.zLow ||
          options.dTilde) {
        throw std::invalid_argument("FH supports trivial fixing only");
      }
      [[fallthrough]];
    case Formulation::F3K:
    case Formulation::CF3K: {
      const bool withX = formulation != Formulation::CF3K;
      const bool withLambda = formulation != Formulation::FH;
      SlotMask combined(n, K);
      for (const Rule& rule : selected_rules(inst, options, inputs)) {
        if (withX) r.rows.push_back({rule.label, "x", rule.mask.count(), xTotal});
        if (withLambda) r.rows.push_back({rule.label, "lambda", rule.mask.count(true), lambdaTotal});
        combined.merge(rule.mask);
      }
      if (withX) {
        r.fixedX = combined;
        r.rows.push_back({"combined", "x", combined.count(), xTotal});
      }
      if (withLambda) {
        r.fixedLambda = combined;
        r.rows.push_back({"combined", "lambda", combined.count(true), lambdaTotal});
      }
      break;
    }
    case Formulation::PFK:
      if (options.dTilde) throw std::invalid_argument("PFK has no position-n variables to fix");
      pair_report(inst, options, inputs, r);
      break;
  }
  return r;
}

void write_fix_report_csv(std::ostream& out, const FixReport& report) {
  out << "lemma,variable-class,fixed,total,percent\n";
  char buf[64];
  for (const ReportRow& row : report.rows) {
    const double pct = row.total > 0 ? 100.0 * static_cast<double>(row.fixed) / static_cast<double>(row.total) : 0.0;
    std::snprintf(buf, sizeof buf, "%.2f", pct);
    out << row.lemma << ',' << row.variableClass << ',' << row.fixed << ',' << row.total << ','
        << buf << '\n';
  }
}

}  // namespace ppc
