#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ppcenter/bounds.hpp"
#include "ppcenter/instance.hpp"

namespace ppc {

enum class Formulation { FH, F3K, CF3K, PFK };

std::string formulation_name(Formulation f);
Formulation parse_formulation(const std::string& name);  // case-insensitive

// Which fixing rules a variant applies.
struct FixOptions {
  bool trivial = false;
  bool upperBound = false;     // q_i d_ij above an upper bound
  bool positionalUp = false;   // Ud from the counting bound
  bool positionalLow = false;  // Ld from the counting bound
  bool zLow = false;           // lower bound from the (p+t)-center value
  bool dTilde = false;         // last position below q_min * pCP
};

// Bounds consumed by the fixing rules.
struct FixingInputs {
  std::optional<double> ub;  // any valid upper bound on the optimum
  PositionalBounds positional;
  std::map<int, double> zPlus;  // t -> optimal (p+t)-center value
  double dTildeStar = 0.0;
};

// Computes the inputs the options need; the upper bound comes from
// vns_run(inst, seed, 5).
FixingInputs compute_fixing_inputs(const Instance& inst, const FixOptions& options,
                                   std::uint64_t seed = 1, const EnumerationOptions& opts = {});

// Position slots of the three-index variables: slot 0 is the aggregate
// position n-K, slot s (1..K) is position n-K+s.
class SlotMask {
 public:
  SlotMask() = default;
  SlotMask(int n, int K) : n_(n), K_(K), bits_(static_cast<std::size_t>(n) * n * (K + 1), 0) {}
  bool operator()(int i, int j, int slot) const { return bits_[index(i, j, slot)] != 0; }
  void set(int i, int j, int slot) { bits_[index(i, j, slot)] = 1; }
  void merge(const SlotMask& other);
  std::int64_t count(bool windowOnly = false) const;
  int n() const { return n_; }
  int K() const { return K_; }

 private:
  std::size_t index(int i, int j, int slot) const {
    return (static_cast<std::size_t>(i) * n_ + j) * (K_ + 1) + slot;
  }
  int n_ = 0;
  int K_ = 0;
  std::vector<char> bits_;
};

// Three-index x fixes of the individual rules.
SlotMask trivial_fixes(const Instance& inst);
SlotMask fix_by_upper_bound(const Instance& inst, double ub);
SlotMask fix_by_positional_upper(const Instance& inst, const std::map<int, double>& Ud);
SlotMask fix_by_positional_lower(const Instance& inst, const std::map<int, double>& Ld);
// Lower bounds from the (p+t)-center values: zPlus[t] bounds position n-t+1.
SlotMask fix_by_z_plus(const Instance& inst, const std::map<int, double>& zPlus);
SlotMask fix_by_dtilde(const Instance& inst, double dstar);

// Site pairs (i_k, j_k) with i_k <= j_k sorted by distance, ties broken
// lexicographically. Requires a symmetric distance matrix.
struct SitePair {
  int i;
  int j;
  double d;
};
std::vector<SitePair> sorted_pairs(const Instance& inst);

struct ReportRow {
  std::string lemma;
  std::string variableClass;
  std::int64_t fixed;
  std::int64_t total;
};

struct FixReport {
  Formulation formulation = Formulation::F3K;
  SlotMask fixedX;                 // three-index x (F3K); empty otherwise
  SlotMask fixedLambda;            // window slots only (F3K, CF3K)
  std::vector<char> fixedS;        // per pair index (PFK)
  std::vector<char> fixedPairX;    // n*n, two-index x fixed to zero (PFK)
  std::vector<char> equalities;    // per pair index: s_k = x_ij + x_ji (PFK)
  std::vector<ReportRow> rows;
};

FixReport build_fix_report(const Instance& inst, Formulation formulation,
                           const FixOptions& options, const FixingInputs& inputs);

// CSV with header "lemma,variable-class,fixed,total,percent".
void write_fix_report_csv(std::ostream& out, const FixReport& report);

}  // namespace ppc
