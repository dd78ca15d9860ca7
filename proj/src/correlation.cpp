#include "lmo/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lmo/error.hpp"

namespace lmo {

double ExistenceDistribution::probability(const LabelSet& exists) const {
  auto it = probabilities.find(exists);
  return it == probabilities.end() ? 0.0 : it->second;
}

double ExistenceDistribution::marginal(const Label& label) const {
  double p = 0.0;
  for (const auto& [labels, w] : probabilities) {
    if (labels.contains(label)) p += w;
  }
  return p;
}

ExistenceDistribution existence_distribution(const LabeledDensity& density) {
  ExistenceDistribution out{density.label_space(), {}};
  for (const auto& [labels, h] : density.hypotheses()) out.probabilities[labels] = h.weight;
  return out;
}

void CorrelationWeights::check() const {
  if (existence < 0.0 || state < 0.0 || std::abs(existence + state - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument,
                "correlation weights must be non-negative and sum to 1");
  }
}

PairCoefficient alpha(const ExistenceDistribution& dist, const Label& l1, const Label& l2) {
  if (l1 == l2) throw Error(ErrorKind::kInvalidArgument, "alpha of a label with itself");
  double p1 = 0.0;
  double p2 = 0.0;
  double p12 = 0.0;
  for (const auto& [labels, w] : dist.probabilities) {
    const bool e1 = labels.contains(l1);
    const bool e2 = labels.contains(l2);
    if (e1) p1 += w;
    if (e2) p2 += w;
    if (e1 && e2) p12 += w;
  }
  const double var = p1 * (1.0 - p1) * p2 * (1.0 - p2);
  if (var <= 0.0) return {0.0, true};
  return {std::min(1.0, std::abs(p12 - p1 * p2) / std::sqrt(var)), false};
}

PairCoefficient beta(const LabeledDensity& density, const Label& l1, const Label& l2) {
  if (l1 == l2) throw Error(ErrorKind::kInvalidArgument, "beta of a label with itself");
  double num = 0.0;
  double den = 0.0;
  bool degenerate = false;
  for (const auto& [labels, h] : density.hypotheses()) {
    if (!labels.contains(l1) || !labels.contains(l2)) continue;
    const Correlation c = mixture_pair_correlation(*h.conditional, l1, l2);
    degenerate = degenerate || c.degenerate_variance;
    num += h.weight * std::abs(c.rho);
    den += h.weight;
  }
  if (den <= 0.0) return {0.0, true};
  return {std::min(1.0, num / den), degenerate};
}

double gamma(const LabeledDensity& density, const Label& l1, const Label& l2,
             CorrelationWeights weights) {
  weights.check();
  const double a = alpha(existence_distribution(density), l1, l2).value;
  const double b = beta(density, l1, l2).value;
  return weights.existence * a + weights.state * b;
}

std::vector<LabelSet> components_above(const LabelSet& space, const Eigen::MatrixXd& coefficient,
                                       double threshold) {
  const std::size_t n = space.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      if (coefficient(ii, jj) > threshold) {
        const std::size_t a = find(i);
        const std::size_t b = find(j);
        // Root at the smaller index so roots identify each block's first member.
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, std::vector<Label>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(space[i]);
  std::vector<LabelSet> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.emplace_back(std::move(members));
  return out;
}

CorrelationReport analyze(const LabeledDensity& density, CorrelationWeights weights,
                          double threshold) {
  weights.check();
  if (threshold < 0.0) throw Error(ErrorKind::kInvalidArgument, "threshold must be >= 0");
  const LabelSet& space = density.label_space();
  const auto n = static_cast<Eigen::Index>(space.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();

  CorrelationReport r;
  r.label_space = space;
  r.weights = weights;
  r.threshold = threshold;
  r.vector_state_rule = density.state_dim() > 1;
  r.alpha = Eigen::MatrixXd::Constant(n, n, nan);
  r.beta = Eigen::MatrixXd::Constant(n, n, nan);
  r.gamma = Eigen::MatrixXd::Constant(n, n, nan);

  const ExistenceDistribution dist = existence_distribution(density);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Label& li = space[static_cast<std::size_t>(i)];
      const Label& lj = space[static_cast<std::size_t>(j)];
      const PairCoefficient a = alpha(dist, li, lj);
      const PairCoefficient b = beta(density, li, lj);
      if (a.degenerate) r.degenerate_existence.emplace_back(li, lj);
      if (b.degenerate) r.degenerate_state.emplace_back(li, lj);
      const double g = weights.existence * a.value + weights.state * b.value;
      r.alpha(i, j) = r.alpha(j, i) = a.value;
      r.beta(i, j) = r.beta(j, i) = b.value;
      r.gamma(i, j) = r.gamma(j, i) = g;
    }
  }
  r.partition = components_above(space, r.gamma, threshold);
  return r;
}

std::vector<LabelSet> partition(const LabeledDensity& density, CorrelationWeights weights,
                                double threshold) {
  return analyze(density, weights, threshold).partition;
}

}  // namespace lmo
