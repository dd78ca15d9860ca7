#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "lmo/labels.hpp"

namespace lmo {

/// Location of one label's sub-vector inside a stacked joint state.
struct BlockIndex {
  Label label;
  Eigen::Index offset = 0;
  Eigen::Index length = 0;
};

/// Joint Gaussian over the stacked states of `labels`, laid out in canonical
/// label order with `state_dim` entries per label.
struct GaussianBlock {
  LabelSet labels;
  int state_dim = 1;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  [[nodiscard]] Eigen::Index dim() const { return mean.size(); }
  /// Throws kUnknownLabel when `label` is not part of the block.
  [[nodiscard]] BlockIndex index(const Label& label) const;
  [[nodiscard]] std::vector<BlockIndex> layout() const;
};

struct MixtureComponent {
  double weight = 1.0;
  GaussianBlock block;
};

/// Finite Gaussian mixture; every component shares labels and state_dim.
struct GaussianMixtureBlock {
  std::vector<MixtureComponent> components;

  static GaussianMixtureBlock single(GaussianBlock block);

  [[nodiscard]] const LabelSet& labels() const { return components.front().block.labels; }
  [[nodiscard]] int state_dim() const { return components.front().block.state_dim; }
  [[nodiscard]] Eigen::Index dim() const { return components.front().block.dim(); }
  [[nodiscard]] std::size_t size() const { return components.size(); }
};

/// Precomputed log-density of a positive definite Gaussian.
class GaussianPdf {
 public:
  explicit GaussianPdf(const GaussianBlock& block);

  [[nodiscard]] double log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  [[nodiscard]] double pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  double log_norm_ = 0.0;
};

/// Precomputed log-density of a mixture (log-sum-exp over components).
class MixturePdf {
 public:
  explicit MixturePdf(const GaussianMixtureBlock& mix);

  [[nodiscard]] double log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  [[nodiscard]] double pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  std::vector<double> log_weights_;
  std::vector<GaussianPdf> pdfs_;
};

/// Drops every row/column not belonging to `keep`.
GaussianBlock marginalize(const GaussianBlock& block, const LabelSet& keep);
GaussianMixtureBlock mixture_marginalize(const GaussianMixtureBlock& mix, const LabelSet& keep);

struct Correlation {
  double rho = 0.0;
  /// Set when either label has zero variance; rho is then reported as 0.
  bool degenerate_variance = false;
};

/// Pearson coefficient between two labels of a joint Gaussian. For state_dim
/// above one the largest-magnitude entry of the normalized cross-covariance is
/// returned (sign kept), which reduces to Pearson for scalar states.
Correlation pair_correlation(const GaussianBlock& block, const Label& l1, const Label& l2);

/// pair_correlation of the moment-matched mixture.
Correlation mixture_pair_correlation(const GaussianMixtureBlock& mix, const Label& l1,
                                     const Label& l2);

/// Closed-form KL(f || g). Throws kSingularCovariance when g is not positive
/// definite; returns +inf when f is singular and g is not.
double gaussian_kl(const GaussianBlock& f, const GaussianBlock& g);

/// Single Gaussian with the mixture's exact first two moments.
GaussianBlock moment_match(const GaussianMixtureBlock& mix);

/// Merges components whose mean and covariance are bitwise identical and
/// drops components with weight below `prune_below`, then renormalizes.
GaussianMixtureBlock simplify(GaussianMixtureBlock mix, double prune_below = 1e-12);

/// Componentwise product of mixtures over disjoint label sets. The result is
/// laid out in canonical order over the union of labels.
GaussianMixtureBlock product(const std::vector<const GaussianMixtureBlock*>& factors);

bool identical(const GaussianBlock& a, const GaussianBlock& b);
bool identical(const GaussianMixtureBlock& a, const GaussianMixtureBlock& b);

}  // namespace lmo
