#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lmo/density.hpp"

namespace lmo {

inline constexpr double kDefaultIndependenceThreshold = 1e-6;

/// Joint law of the existence indicators E_l: Pr(exactly the labels in I exist) = w(I).
struct ExistenceDistribution {
  LabelSet label_space;
  std::map<LabelSet, double> probabilities;

  [[nodiscard]] double probability(const LabelSet& exists) const;
  /// Pr(E_l = 1).
  [[nodiscard]] double marginal(const Label& label) const;
};

ExistenceDistribution existence_distribution(const LabeledDensity& density);

/// Weights of the convex combination gamma = omega_e * alpha + omega_s * beta.
struct CorrelationWeights {
  double existence = 0.5;
  double state = 0.5;

  /// Throws kInvalidArgument unless both are >= 0 and sum to 1 within 1e-12.
  void check() const;
};

struct PairCoefficient {
  double value = 0.0;
  /// alpha: either indicator is almost surely 0 or 1. beta: no hypothesis
  /// holds both labels, or a zero state variance was met.
  bool degenerate = false;
};

/// |Pearson| between the existence indicators of two labels.
PairCoefficient alpha(const ExistenceDistribution& dist, const Label& l1, const Label& l2);

/// Existence-weighted mean of |rho| over every hypothesis containing both labels.
PairCoefficient beta(const LabeledDensity& density, const Label& l1, const Label& l2);

double gamma(const LabeledDensity& density, const Label& l1, const Label& l2,
             CorrelationWeights weights = {});

struct CorrelationReport {
  LabelSet label_space;
  /// Indexed by canonical label position; diagonals are NaN.
  Eigen::MatrixXd alpha;
  Eigen::MatrixXd beta;
  Eigen::MatrixXd gamma;
  CorrelationWeights weights;
  double threshold = kDefaultIndependenceThreshold;
  std::vector<LabelSet> partition;
  /// Label pairs whose existence indicators are degenerate.
  std::vector<std::pair<Label, Label>> degenerate_existence;
  /// Label pairs that never coexist, or whose state variance is degenerate.
  std::vector<std::pair<Label, Label>> degenerate_state;
  /// Set for state_dim > 1, where rho is the largest normalized cross-covariance entry.
  bool vector_state_rule = false;
};

CorrelationReport analyze(const LabeledDensity& density, CorrelationWeights weights = {},
                          double threshold = kDefaultIndependenceThreshold);

/// Connected components of the graph with an edge wherever gamma > threshold,
/// ordered by smallest member.
std::vector<LabelSet> partition(const LabeledDensity& density, CorrelationWeights weights = {},
                                double threshold = kDefaultIndependenceThreshold);

/// Components of the graph defined by a symmetric coefficient matrix.
std::vector<LabelSet> components_above(const LabelSet& space, const Eigen::MatrixXd& coefficient,
                                       double threshold);

}  // namespace lmo
