#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace lmo::test {

GaussianBlock block(const LabelSet& labels, std::initializer_list<double> mean,
                    std::initializer_list<std::initializer_list<double>> cov) {
  const auto n = static_cast<Eigen::Index>(mean.size());
  GaussianBlock b{labels, static_cast<int>(mean.size() / std::max<std::size_t>(labels.size(), 1)),
                  Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  Eigen::Index i = 0;
  for (double m : mean) b.mean(i++) = m;
  i = 0;
  for (const auto& row : cov) {
    Eigen::Index j = 0;
    for (double v : row) b.cov(i, j++) = v;
    ++i;
  }
  return b;
}

LabeledDensity example_density() {
  const LabelSet space{"1", "2", "3"};
  auto h = [](LabelSet labels, double w, GaussianBlock b) {
    return Hypothesis{labels, w, GaussianMixtureBlock::single(std::move(b))};
  };
  std::vector<Hypothesis> hyps;
  hyps.push_back({LabelSet{}, 0.01, std::nullopt});
  hyps.push_back(h({"1"}, 0.01, block({"1"}, {1.0}, {{1.0}})));
  hyps.push_back(h({"2"}, 0.01, block({"2"}, {2.0}, {{2.0}})));
  hyps.push_back(h({"3"}, 0.09, block({"3"}, {8.0}, {{3.0}})));
  hyps.push_back(h({"1", "2"}, 0.07, block({"1", "2"}, {1.1, 1.2}, {{1.2, 1.0}, {1.0, 2.2}})));
  hyps.push_back(h({"1", "3"}, 0.09, block({"1", "3"}, {1.0, 8.0}, {{1.0, 0.0}, {0.0, 3.0}})));
  hyps.push_back(h({"2", "3"}, 0.09, block({"2", "3"}, {2.0, 8.0}, {{2.0, 0.0}, {0.0, 3.0}})));
  hyps.push_back(h({"1", "2", "3"}, 0.63,
                   block({"1", "2", "3"}, {1.1, 1.2, 8.0},
                         {{1.2, 1.0, 0.0}, {1.0, 2.2, 0.0}, {0.0, 0.0, 3.0}})));
  return {space, 1, std::move(hyps)};
}

std::string data_path(const std::string& name) { return std::string(LMO_TEST_DATA_DIR) + "/" + name; }

Eigen::MatrixXd random_spd(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = normal(rng);
  }
  Eigen::MatrixXd s = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
  return 0.5 * (s + s.transpose());
}

namespace {

LabelSet make_space(std::size_t n, const std::string& prefix) {
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i) labels.emplace_back(prefix + std::to_string(i));
  return LabelSet(std::move(labels));
}

GaussianMixtureBlock random_mixture(std::mt19937_64& rng, const LabelSet& labels, int d,
                                    std::size_t max_components) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(max_components, 1));
  std::uniform_real_distribution<double> w(0.2, 1.0);
  std::normal_distribution<double> normal(0.0, 2.0);
  const auto n = static_cast<Eigen::Index>(labels.size()) * d;
  GaussianMixtureBlock mix;
  const std::size_t k = count(rng);
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    GaussianBlock b{labels, d, Eigen::VectorXd(n), random_spd(rng, n)};
    for (Eigen::Index i = 0; i < n; ++i) b.mean(i) = normal(rng);
    const double wc = w(rng);
    total += wc;
    mix.components.push_back({wc, std::move(b)});
  }
  for (auto& c : mix.components) c.weight /= total;
  return mix;
}

}  // namespace

LabeledDensity random_density(std::mt19937_64& rng, const RandomDensityOptions& options,
                              const std::string& label_prefix) {
  std::uniform_int_distribution<std::size_t> size(options.min_labels, options.max_labels);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const LabelSet space = make_space(size(rng), label_prefix);
  const auto subsets = all_subsets(space);
  std::vector<Hypothesis> hyps;
  double total = 0.0;
  for (const auto& s : subsets) {
    const bool always = s.empty() || s == space;
    if (!always && unit(rng) > options.subset_probability) continue;
    Hypothesis h{s, 0.05 + unit(rng), std::nullopt};
    total += h.weight;
    if (!s.empty()) h.conditional = random_mixture(rng, s, options.state_dim, options.max_components);
    hyps.push_back(std::move(h));
  }
  for (auto& h : hyps) h.weight /= total;
  return {space, options.state_dim, std::move(hyps)};
}

LabeledDensity random_connected_density(std::mt19937_64& rng, std::size_t labels,
                                        const std::string& label_prefix) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> corr(0.3, 0.8);
  std::normal_distribution<double> normal(0.0, 2.0);
  const LabelSet space = make_space(labels, label_prefix);
  std::vector<Hypothesis> hyps;
  double total = 0.0;
  for (const auto& s : all_subsets(space)) {
    const bool always = s.empty() || s == space;
    if (!always && unit(rng) > 0.6) continue;
    Hypothesis h{s, 0.05 + unit(rng), std::nullopt};
    total += h.weight;
    if (!s.empty()) {
      // Equicorrelated covariance: every pair has correlation r.
      const auto n = static_cast<Eigen::Index>(s.size());
      const double r = corr(rng);
      Eigen::MatrixXd c = Eigen::MatrixXd::Constant(n, n, r);
      c.diagonal().setOnes();
      Eigen::VectorXd sd(n);
      for (Eigen::Index i = 0; i < n; ++i) sd(i) = 0.5 + 2.0 * unit(rng);
      GaussianBlock b{s, 1, Eigen::VectorXd(n), sd.asDiagonal() * c * sd.asDiagonal()};
      for (Eigen::Index i = 0; i < n; ++i) b.mean(i) = normal(rng);
      h.conditional = GaussianMixtureBlock::single(std::move(b));
    }
    hyps.push_back(std::move(h));
  }
  for (auto& h : hyps) h.weight /= total;
  return {space, 1, std::move(hyps)};
}

DeltaGlmbDensity random_dglmb(std::mt19937_64& rng, std::size_t labels, std::size_t max_xi) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> xis(1, max_xi);
  const LabelSet space = make_space(labels, "d");
  DeltaGlmbDensity out{space, 1, {}};
  // One set of single-object densities per xi, shared by every hypothesis using it.
  const std::size_t n_xi = xis(rng);
  std::vector<LabelDensities> per_xi(n_xi);
  for (auto& dens : per_xi) {
    for (const auto& l : space) dens.emplace(l, random_mixture(rng, LabelSet{l}, 1, 2));
  }
  double total = 0.0;
  for (const auto& s : all_subsets(space)) {
    for (std::size_t x = 0; x < n_xi; ++x) {
      if (unit(rng) > 0.6 && !s.empty()) continue;
      DeltaGlmbHypothesis h{s, "xi" + std::to_string(x), 0.05 + unit(rng), {}};
      for (const auto& l : s) h.densities.emplace(l, per_xi[x].at(l));
      total += h.weight;
      out.hypotheses.push_back(std::move(h));
    }
  }
  for (auto& h : out.hypotheses) h.weight /= total;
  return out;
}

LabeledPoint random_point(const LabelSet& space, int state_dim, std::mt19937_64& rng,
                          double spread) {
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> normal(0.0, spread);
  LabeledPoint p;
  for (const auto& l : space) {
    if (!coin(rng)) continue;
    Eigen::VectorXd x(state_dim);
    for (int k = 0; k < state_dim; ++k) x(k) = normal(rng);
    p.push_back({x, l});
  }
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

LabeledPoint random_supported_point(const LabeledDensity& density, std::mt19937_64& rng,
                                    double spread) {
  std::uniform_int_distribution<std::size_t> pick(0, density.hypotheses().size() - 1);
  auto it = density.hypotheses().begin();
  std::advance(it, static_cast<std::ptrdiff_t>(pick(rng)));
  std::normal_distribution<double> normal(0.0, spread);
  LabeledPoint p;
  for (const auto& l : it->first) {
    Eigen::VectorXd x(density.state_dim());
    for (int k = 0; k < density.state_dim(); ++k) x(k) = normal(rng);
    p.push_back({x, l});
  }
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace lmo::test
