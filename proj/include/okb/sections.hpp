#pragma once

#include <vector>

#include "okb/klyachko.hpp"

namespace okb {

struct IsotypicalSummand {
  IntVector u;  // dual-basis coordinates
  Int alpha0 = 0;
  IntVector alphas;  // one per family C_h
  Int dim = 0;
};

using ValuationVector = IntVector;

// Coefficients m_1..m_d in flag order, zero on the rays of τ.
IntVector full_coefficients(const FlagContext& ctx, const DivisorClass& cls);

std::vector<IntVector> isotypical_support(const FlagContext& ctx, const DivisorClass& cls);
IsotypicalSummand isotypical_dim(const FlagContext& ctx, const DivisorClass& cls, const IntVector& u);
// Summands of positive dimension, in the order of the support scan.
std::vector<IsotypicalSummand> isotypical_decomposition(const FlagContext& ctx, const DivisorClass& cls);
Int h0(const FlagContext& ctx, const DivisorClass& cls);
// Sorted; one vector per section of the adapted basis.
std::vector<ValuationVector> valuation_set(const FlagContext& ctx, const DivisorClass& cls);

}  // namespace okb
