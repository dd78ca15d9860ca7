#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "lmo/density.hpp"

namespace lmo {

enum class KldMethod { kClosedForm, kMonteCarlo, kGrid };

const char* to_string(KldMethod method);

/// Kullback-Leibler divergence estimate. std_error is non-zero only for
/// Monte-Carlo estimates; value may be +inf.
struct KldEstimate {
  double value = 0.0;
  KldMethod method = KldMethod::kClosedForm;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct KldConfig {
  /// Draws per hypothesis on the Monte-Carlo path.
  std::size_t samples = 200'000;
  std::uint64_t seed = 0;
  /// Use sampling for every hypothesis, even where a closed form exists.
  bool force_monte_carlo = false;
};

struct GridConfig {
  /// Integration box is the union of mean +/- sigma_span * sd over f's components.
  double sigma_span = 8.0;
  /// Trapezoid step for joint dimension 1, 2 and 3.
  std::array<double, 3> step = {0.01, 0.02, 0.1};
};

/// Multi-object KL divergence D(f || g) decomposed over hypotheses:
/// sum_I w_f(I) [log(w_f(I)/w_g(I)) + KL(p_f(.|I) || p_g(.|I))].
/// Single-Gaussian conditionals use the closed form; anything else is sampled
/// with a generator seeded from (config.seed, hypothesis index), so the result
/// does not depend on evaluation order. Returns +inf when w_g(I) = 0 < w_f(I).
/// Throws kDimensionMismatch when label spaces or state_dim differ.
KldEstimate kld(const LabeledDensity& f, const LabeledDensity& g, const KldConfig& config = {});

/// kld against the expanded product of a factorization.
KldEstimate kld_factorized(const LabeledDensity& f, const FactorizedDensity& g,
                           const KldConfig& config = {});

/// Trapezoidal-grid evaluation of the same decomposition. Requires state_dim 1
/// and at most 3 objects per hypothesis.
KldEstimate grid_kld(const LabeledDensity& f, const LabeledDensity& g,
                     const GridConfig& config = {});

}  // namespace lmo
