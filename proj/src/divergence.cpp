#include "lmo/divergence.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lmo/error.hpp"
#include "oracle.hpp"

namespace lmo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_compatible(const LabeledDensity& f, const LabeledDensity& g) {
  if (f.label_space() != g.label_space()) {
    throw Error(ErrorKind::kDimensionMismatch, "densities have different label spaces " +
                                                   f.label_space().to_string() + " and " +
                                                   g.label_space().to_string());
  }
  if (f.state_dim() != g.state_dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "densities have different state_dim");
  }
}

struct StateKl {
  double value = 0.0;
  double variance_of_mean = 0.0;
  bool sampled = false;
};

StateKl monte_carlo_kl(const GaussianMixtureBlock& f, const GaussianMixtureBlock& g,
                       std::size_t samples, std::uint64_t seed, std::size_t stream) {
  if (samples < 2) throw Error(ErrorKind::kInvalidArgument, "Monte-Carlo needs at least 2 samples");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  const MixturePdf log_f(f);
  const MixturePdf log_g(g);
  std::vector<Eigen::MatrixXd> chol;
  chol.reserve(f.size());
  for (const auto& c : f.components) chol.push_back(Eigen::LLT<Eigen::MatrixXd>(c.block.cov).matrixL());

  Eigen::VectorXd z(f.dim());
  Eigen::VectorXd x(f.dim());
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double u = unit(rng);
    std::size_t c = 0;
    double acc = f.components[0].weight;
    while (c + 1 < f.size() && u >= acc) acc += f.components[++c].weight;
    for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = normal(rng);
    x = f.components[c].block.mean + chol[c] * z;
    const double lg = log_g.log_pdf(x);
    if (lg == -kInf) return {kInf, 0.0, true};
    const double v = log_f.log_pdf(x) - lg;
    // Welford update.
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(samples);
  return {mean, m2 / (n - 1.0) / n, true};
}

StateKl state_kl(const GaussianMixtureBlock& f, const GaussianMixtureBlock& g,
                 const KldConfig& config, std::size_t stream) {
  if (!config.force_monte_carlo && f.size() == 1 && g.size() == 1) {
    try {
      return {gaussian_kl(f.components.front().block, g.components.front().block), 0.0, false};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kSingularCovariance) throw;
    }
  }
  return monte_carlo_kl(f, g, config.samples, config.seed, stream);
}

double weight_term(double wf, double wg) { return wf * std::log(wf / wg); }

}  // namespace

const char* to_string(KldMethod method) {
  switch (method) {
    case KldMethod::kClosedForm: return "closed-form";
    case KldMethod::kMonteCarlo: return "monte-carlo";
    case KldMethod::kGrid: return "grid";
  }
  return "unknown";
}

KldEstimate kld(const LabeledDensity& f, const LabeledDensity& g, const KldConfig& config) {
  check_compatible(f, g);
  KldEstimate out;
  out.seed = config.seed;
  double variance = 0.0;
  bool sampled = false;
  std::size_t stream = 0;
  for (const auto& [labels, hf] : f.hypotheses()) {
    const std::size_t index = stream++;
    if (hf.weight <= 0.0) continue;
    const Hypothesis* hg = g.find(labels);
    if (hg == nullptr || hg->weight <= 0.0) {
      out.value = kInf;
      continue;
    }
    out.value += weight_term(hf.weight, hg->weight);
    if (labels.empty()) continue;
    const StateKl s = state_kl(*hf.conditional, *hg->conditional, config, index);
    out.value += hf.weight * s.value;
    variance += hf.weight * hf.weight * s.variance_of_mean;
    sampled = sampled || s.sampled;
  }
  if (sampled) {
    out.method = KldMethod::kMonteCarlo;
    out.samples = config.samples;
    out.std_error = std::sqrt(variance);
  } else {
    out.method = KldMethod::kClosedForm;
    out.value = std::max(out.value, 0.0);
  }
  return out;
}

KldEstimate kld_factorized(const LabeledDensity& f, const FactorizedDensity& g,
                           const KldConfig& config) {
  return kld(f, to_labeled(g), config);
}

KldEstimate grid_kld(const LabeledDensity& f, const LabeledDensity& g, const GridConfig& config) {
  check_compatible(f, g);
  if (f.state_dim() != 1) {
    throw Error(ErrorKind::kCapacityExceeded, "grid KLD supports scalar states only");
  }
  KldEstimate out;
  out.method = KldMethod::kGrid;
  for (const auto& [labels, hf] : f.hypotheses()) {
    if (hf.weight <= 0.0) continue;
    const Hypothesis* hg = g.find(labels);
    if (hg == nullptr || hg->weight <= 0.0) {
      out.value = kInf;
      continue;
    }
    out.value += weight_term(hf.weight, hg->weight);
    if (labels.empty()) continue;
    const auto n = static_cast<std::size_t>(hf.conditional->dim());
    if (n > 3) {
      throw Error(ErrorKind::kCapacityExceeded,
                  "grid KLD supports at most 3 objects per hypothesis, got " + labels.to_string());
    }
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), kInf);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), -kInf);
    for (const auto& c : hf.conditional->components) {
      const Eigen::VectorXd sd = c.block.cov.diagonal().cwiseSqrt();
      lo = lo.cwiseMin(c.block.mean - config.sigma_span * sd);
      hi = hi.cwiseMax(c.block.mean + config.sigma_span * sd);
    }
    const MixturePdf pf(*hf.conditional);
    const MixturePdf pg(*hg->conditional);
    const double integral = oracle::grid_integrate(
        [&](const Eigen::VectorXd& x) {
          const double lf = pf.log_pdf(x);
          const double density = std::exp(lf);
          if (density == 0.0) return 0.0;
          return density * (lf - pg.log_pdf(x));
        },
        lo, hi, config.step[n - 1]);
    out.value += hf.weight * integral;
  }
  return out;
}

}  // namespace lmo
