#pragma once

#include "lmo/correlation.hpp"
#include "lmo/density.hpp"

namespace lmo {

/// Product-form approximation that keeps every hypothesis weight and replaces
/// each joint p(.|I) by the product of its single-label marginals. Each output
/// hypothesis uses its label set (as "{a,b}") for xi.
DeltaGlmbDensity dglmb_approximate(const LabeledDensity& density);

/// Groups hypotheses by label set, summing weights over xi and mixing the
/// per-label densities with the xi weights.
MDeltaGlmbDensity mdglmb_construct(const DeltaGlmbDensity& density);

/// Merges hypotheses that share a label set and carry identical per-label
/// densities. Exact: the represented density does not change.
DeltaGlmbDensity merge_equivalent(const DeltaGlmbDensity& density);

/// Partitions the labels by gamma and replaces the density with the product
/// of its set marginals over the blocks. A single block returns the input.
FactorizedDensity ca_factorize(const LabeledDensity& density, CorrelationWeights weights = {},
                               double threshold = kDefaultIndependenceThreshold);

/// Same pipeline on a delta-GLMB, keeping each block in product form.
Factorization<DeltaGlmbDensity> ca_factorize(const DeltaGlmbDensity& density,
                                             CorrelationWeights weights = {},
                                             double threshold = kDefaultIndependenceThreshold);

/// Product over blocks of each block density at the point restricted to the
/// block's labels.
double factor_evaluate(const FactorizedDensity& density, const LabeledPoint& point);

FactorizedDensity to_factorized(const Factorization<DeltaGlmbDensity>& density);

}  // namespace lmo
