#include "lmo/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lmo/error.hpp"

namespace lmo {

namespace {

std::vector<Eigen::Index> rows_for(const GaussianBlock& block, const LabelSet& keep) {
  std::vector<Eigen::Index> rows;
  rows.reserve(keep.size() * static_cast<std::size_t>(block.state_dim));
  for (const auto& label : keep) {
    const BlockIndex bi = block.index(label);
    for (Eigen::Index k = 0; k < bi.length; ++k) rows.push_back(bi.offset + k);
  }
  return rows;
}

}  // namespace

BlockIndex GaussianBlock::index(const Label& label) const {
  const std::size_t pos = labels.index_of(label);
  if (pos == labels.size()) {
    throw Error(ErrorKind::kUnknownLabel, "label '" + label.id() + "' not in block " +
                                              labels.to_string());
  }
  return {label, static_cast<Eigen::Index>(pos) * state_dim, state_dim};
}

std::vector<BlockIndex> GaussianBlock::layout() const {
  std::vector<BlockIndex> out;
  out.reserve(labels.size());
  for (const auto& label : labels) out.push_back(index(label));
  return out;
}

GaussianMixtureBlock GaussianMixtureBlock::single(GaussianBlock block) {
  GaussianMixtureBlock mix;
  mix.components.push_back({1.0, std::move(block)});
  return mix;
}

GaussianPdf::GaussianPdf(const GaussianBlock& block) : mean_(block.mean), chol_(block.cov) {
  if (chol_.info() != Eigen::Success) {
    throw Error(ErrorKind::kSingularCovariance,
                "covariance of block " + block.labels.to_string() + " is not positive definite");
  }
  const Eigen::VectorXd diag = chol_.matrixLLT().diagonal();
  const double log_det = 2.0 * diag.array().log().sum();
  log_norm_ = -0.5 * (static_cast<double>(mean_.size()) * std::log(2.0 * std::numbers::pi) + log_det);
}

double GaussianPdf::log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::VectorXd z = chol_.matrixL().solve(x - mean_);
  return log_norm_ - 0.5 * z.squaredNorm();
}

double GaussianPdf::pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return std::exp(log_pdf(x));
}

MixturePdf::MixturePdf(const GaussianMixtureBlock& mix) {
  log_weights_.reserve(mix.size());
  pdfs_.reserve(mix.size());
  for (const auto& c : mix.components) {
    if (c.weight <= 0.0) continue;
    log_weights_.push_back(std::log(c.weight));
    pdfs_.emplace_back(c.block);
  }
}

double MixturePdf::log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  // Streaming log-sum-exp.
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < pdfs_.size(); ++i) {
    const double v = log_weights_[i] + pdfs_[i].log_pdf(x);
    if (v > max) {
      sum = sum * std::exp(max - v) + 1.0;
      max = v;
    } else {
      sum += std::exp(v - max);
    }
  }
  if (sum == 0.0) return -std::numeric_limits<double>::infinity();
  return max + std::log(sum);
}

double MixturePdf::pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (pdfs_.size() == 1) return std::exp(log_weights_[0] + pdfs_[0].log_pdf(x));
  return std::exp(log_pdf(x));
}

GaussianBlock marginalize(const GaussianBlock& block, const LabelSet& keep) {
  if (keep.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot marginalize onto the empty label set");
  }
  if (!keep.is_subset_of(block.labels)) {
    throw Error(ErrorKind::kUnknownLabel,
                keep.to_string() + " is not a subset of block " + block.labels.to_string());
  }
  if (keep == block.labels) return block;
  const auto rows = rows_for(block, keep);
  return {keep, block.state_dim, block.mean(rows), block.cov(rows, rows)};
}

GaussianMixtureBlock mixture_marginalize(const GaussianMixtureBlock& mix, const LabelSet& keep) {
  GaussianMixtureBlock out;
  out.components.reserve(mix.size());
  for (const auto& c : mix.components) out.components.push_back({c.weight, marginalize(c.block, keep)});
  return out;
}

Correlation pair_correlation(const GaussianBlock& block, const Label& l1, const Label& l2) {
  if (l1 == l2) throw Error(ErrorKind::kInvalidArgument, "correlation of a label with itself");
  const BlockIndex a = block.index(l1);
  const BlockIndex b = block.index(l2);
  Correlation out;
  double best = 0.0;
  for (Eigen::Index i = 0; i < a.length; ++i) {
    const double vi = block.cov(a.offset + i, a.offset + i);
    for (Eigen::Index j = 0; j < b.length; ++j) {
      const double vj = block.cov(b.offset + j, b.offset + j);
      if (vi <= 0.0 || vj <= 0.0) {
        out.degenerate_variance = true;
        continue;
      }
      const double r = block.cov(a.offset + i, b.offset + j) / std::sqrt(vi * vj);
      if (std::abs(r) > std::abs(best)) best = r;
    }
  }
  out.rho = std::clamp(best, -1.0, 1.0);
  return out;
}

Correlation mixture_pair_correlation(const GaussianMixtureBlock& mix, const Label& l1,
                                     const Label& l2) {
  if (mix.size() == 1) return pair_correlation(mix.components.front().block, l1, l2);
  return pair_correlation(moment_match(mix), l1, l2);
}

double gaussian_kl(const GaussianBlock& f, const GaussianBlock& g) {
  if (f.dim() != g.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "KL between Gaussians of different dimension");
  }
  if (f.mean == g.mean && f.cov == g.cov) return 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.cov, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 1e-12) {
    throw Error(ErrorKind::kSingularCovariance,
                "reference covariance is singular; use the Monte-Carlo estimator");
  }
  const Eigen::LLT<Eigen::MatrixXd> g_chol(g.cov);
  const Eigen::LLT<Eigen::MatrixXd> f_chol(f.cov);
  if (f_chol.info() != Eigen::Success) return std::numeric_limits<double>::infinity();

  const auto k = static_cast<double>(f.dim());
  const Eigen::MatrixXd g_inv_f = g_chol.solve(f.cov);
  const Eigen::VectorXd diff = g.mean - f.mean;
  const double maha = diff.dot(g_chol.solve(diff));
  const double log_det_g = 2.0 * g_chol.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double log_det_f = 2.0 * f_chol.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double kl = 0.5 * (g_inv_f.trace() + maha - k + log_det_g - log_det_f);
  return std::max(kl, 0.0);
}

GaussianBlock moment_match(const GaussianMixtureBlock& mix) {
  const auto& first = mix.components.front().block;
  if (mix.size() == 1) return first;
  double total = 0.0;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(first.dim());
  for (const auto& c : mix.components) {
    total += c.weight;
    mean += c.weight * c.block.mean;
  }
  mean /= total;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(first.dim(), first.dim());
  for (const auto& c : mix.components) {
    const Eigen::VectorXd d = c.block.mean - mean;
    cov += c.weight * (c.block.cov + d * d.transpose());
  }
  cov /= total;
  return {first.labels, first.state_dim, std::move(mean), std::move(cov)};
}

bool identical(const GaussianBlock& a, const GaussianBlock& b) {
  return a.labels == b.labels && a.state_dim == b.state_dim && a.mean.size() == b.mean.size() &&
         a.mean == b.mean && a.cov == b.cov;
}

bool identical(const GaussianMixtureBlock& a, const GaussianMixtureBlock& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.components[i].weight != b.components[i].weight ||
        !identical(a.components[i].block, b.components[i].block)) {
      return false;
    }
  }
  return true;
}

GaussianMixtureBlock simplify(GaussianMixtureBlock mix, double prune_below) {
  GaussianMixtureBlock out;
  for (auto& c : mix.components) {
    auto same = std::find_if(out.components.begin(), out.components.end(),
                             [&](const MixtureComponent& o) { return identical(o.block, c.block); });
    if (same != out.components.end()) {
      same->weight += c.weight;
    } else {
      out.components.push_back(std::move(c));
    }
  }
  double total = 0.0;
  for (const auto& c : out.components) total += c.weight;
  if (out.components.size() > 1) {
    std::erase_if(out.components, [&](const MixtureComponent& c) {
      return c.weight / total < prune_below;
    });
    if (out.components.empty()) {
      throw Error(ErrorKind::kNumerical, "every mixture component fell below the pruning threshold");
    }
    total = 0.0;
    for (const auto& c : out.components) total += c.weight;
  }
  if (out.components.size() == 1) {
    out.components.front().weight = 1.0;
  } else {
    for (auto& c : out.components) c.weight /= total;
  }
  return out;
}

GaussianMixtureBlock product(const std::vector<const GaussianMixtureBlock*>& factors) {
  if (factors.empty()) throw Error(ErrorKind::kInvalidArgument, "product of no mixtures");
  if (factors.size() == 1) return *factors.front();

  LabelSet all;
  std::size_t total_labels = 0;
  const int d = factors.front()->state_dim();
  for (const auto* f : factors) {
    if (f->state_dim() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "product of mixtures with different state_dim");
    }
    all = all.union_with(f->labels());
    total_labels += f->labels().size();
  }
  if (all.size() != total_labels) {
    throw Error(ErrorKind::kInvalidArgument, "product factors must have disjoint labels");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(all.size()) * d;

  // Destination rows of each factor inside the joint layout.
  std::vector<std::vector<Eigen::Index>> rows(factors.size());
  for (std::size_t f = 0; f < factors.size(); ++f) {
    for (const auto& label : factors[f]->labels()) {
      const auto pos = static_cast<Eigen::Index>(all.index_of(label)) * d;
      for (Eigen::Index k = 0; k < d; ++k) rows[f].push_back(pos + k);
    }
  }

  GaussianMixtureBlock out;
  std::vector<std::size_t> pick(factors.size(), 0);
  while (true) {
    GaussianBlock block{all, d, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
    double w = 1.0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      const auto& c = factors[f]->components[pick[f]];
      w *= c.weight;
      block.mean(rows[f]) = c.block.mean;
      block.cov(rows[f], rows[f]) = c.block.cov;
    }
    out.components.push_back({w, std::move(block)});

    std::size_t f = 0;
    while (f < factors.size() && ++pick[f] == factors[f]->size()) pick[f++] = 0;
    if (f == factors.size()) break;
  }
  return out;
}

}  // namespace lmo
