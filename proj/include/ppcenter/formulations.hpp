#pragma once

#include <string>

#include "ppcenter/fixing.hpp"
#include "ppcenter/instance.hpp"
#include "ppcenter/model.hpp"

namespace ppc {

// Optional inequality families and fixing rules of one model variant.
//
// Inequality tokens (custom variants):
//   window-mass  sum of q lambda over the window <= 1
//   second-link  lambda mass at n-1 tied to the position-n assignment
//   prefix       per-site prefix inequalities on lambda
//   dist-chain   distance-weighted lambda chain (CF3K)
//   z-link       lambda mass at n-1 tied to the position-n z variables (CF3K)
// Fixing tokens: trivial, ub, ud, ld, zplus, dtilde.
struct VariantSpec {
  Formulation formulation = Formulation::F3K;
  std::string name;
  bool windowMass = false;
  bool secondLink = false;
  bool prefix = false;
  bool distChain = false;
  bool zLink = false;
  // "static" when the prefix family is written into the model instead of
  // being separated during branch and cut.
  std::string prefixMode;
  FixOptions fixing;
};

// Accepts "N", "FORM:N" or "custom:tok,tok,...". Throws std::invalid_argument
// for an unknown variant.
VariantSpec parse_variant(Formulation formulation, const std::string& variant);

// Builders. Fixed variables are removed from the returned model. `inputs`
// must hold the bounds the variant's fixing rules need.
LinearModel build_fh(const Instance& inst, const VariantSpec& variant = {Formulation::FH, "FH:1"},
                     const FixingInputs& inputs = {});
LinearModel build_f3k(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs);
LinearModel build_cf3k(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs);
LinearModel build_pfk(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs);

LinearModel build_model(const Instance& inst, const VariantSpec& variant, const FixingInputs& inputs);

}  // namespace ppc
