#pragma once

#include <cstddef>
#include <vector>

#include "lmo/correlation.hpp"
#include "lmo/density.hpp"

namespace lmo {

/// Storage summary of a density: how many hypotheses it keeps and how many
/// Gaussian components it stores on each joint space X^k.
struct ComplexityProfile {
  std::size_t hypotheses = 0;
  /// densities[k - 1] counts components on X^k, k = 1..|L|.
  std::vector<std::size_t> densities;
  bool correlation_loss = false;

  /// T_k; zero beyond the stored range.
  [[nodiscard]] std::size_t t(std::size_t k) const {
    return k >= 1 && k <= densities.size() ? densities[k - 1] : 0;
  }
};

// A single table counts every stored hypothesis. A factorization with more
// than one block omits each block's empty hypothesis, which is fixed by the
// block's other weights.
ComplexityProfile profile(const LabeledDensity& density);
ComplexityProfile profile(const DeltaGlmbDensity& density);
ComplexityProfile profile(const MDeltaGlmbDensity& density);
ComplexityProfile profile(const FactorizedDensity& density);
ComplexityProfile profile(const Factorization<DeltaGlmbDensity>& density);

/// True when replacing each joint by the product of its single-label
/// marginals changes some hypothesis (cross-label covariance or a
/// multi-component joint mixture).
bool product_form_loses_correlation(const LabeledDensity& density, double tolerance = 1e-12);

/// True when some pair split across partition blocks has gamma above `tolerance`.
bool partition_loses_correlation(const CorrelationReport& report, double tolerance = 1e-12);

/// True when grouping over xi mixes distinct product densities for one label set.
bool grouping_loses_correlation(const DeltaGlmbDensity& density);

}  // namespace lmo
