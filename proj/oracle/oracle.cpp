#include "oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "lmo/error.hpp"

namespace lmo::oracle {

double grid_integrate(const Integrand& f, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                      double step) {
  const Eigen::Index n = lo.size();
  if (n > 3) throw Error(ErrorKind::kCapacityExceeded, "grid integration supports at most 3 axes");
  if (n < 1 || hi.size() != n) throw Error(ErrorKind::kInvalidArgument, "bad integration bounds");
  if (!(step > 0.0)) throw Error(ErrorKind::kInvalidArgument, "grid step must be positive");

  std::vector<long> count(static_cast<std::size_t>(n));
  Eigen::VectorXd h(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto intervals = static_cast<long>(std::ceil((hi(k) - lo(k)) / step));
    count[static_cast<std::size_t>(k)] = std::max(intervals, 1L);
    h(k) = (hi(k) - lo(k)) / static_cast<double>(count[static_cast<std::size_t>(k)]);
  }

  std::vector<long> idx(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd x(n);
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const long i = idx[static_cast<std::size_t>(k)];
      x(k) = lo(k) + static_cast<double>(i) * h(k);
      if (i == 0 || i == count[static_cast<std::size_t>(k)]) w *= 0.5;
    }
    sum += w * f(x);
    Eigen::Index k = 0;
    while (k < n && ++idx[static_cast<std::size_t>(k)] > count[static_cast<std::size_t>(k)]) {
      idx[static_cast<std::size_t>(k++)] = 0;
    }
    if (k == n) break;
  }
  return sum * h.prod();
}

std::vector<LabeledPoint> sample(const LabeledDensity& density, std::size_t count,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<const Hypothesis*> hyps;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& [labels, h] : density.hypotheses()) {
    hyps.push_back(&h);
    acc += h.weight;
    cumulative.push_back(acc);
  }
  // Cholesky factors per component, computed once.
  std::vector<std::vector<Eigen::MatrixXd>> factors(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (!hyps[i]->conditional) continue;
    for (const auto& c : hyps[i]->conditional->components) {
      factors[i].push_back(Eigen::LLT<Eigen::MatrixXd>(c.block.cov).matrixL());
    }
  }

  const int d = density.state_dim();
  std::vector<LabeledPoint> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double u = unit(rng) * acc;
    std::size_t i = 0;
    while (i + 1 < cumulative.size() && u >= cumulative[i]) ++i;
    const Hypothesis& h = *hyps[i];
    LabeledPoint point;
    if (h.conditional) {
      const auto& comps = h.conditional->components;
      const double v = unit(rng);
      std::size_t c = 0;
      double cw = comps[0].weight;
      while (c + 1 < comps.size() && v >= cw) cw += comps[++c].weight;
      Eigen::VectorXd z(comps[c].block.dim());
      for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = normal(rng);
      const Eigen::VectorXd x = comps[c].block.mean + factors[i][c] * z;
      for (std::size_t l = 0; l < h.labels.size(); ++l) {
        point.push_back({x.segment(static_cast<Eigen::Index>(l) * d, d), h.labels[l]});
      }
    }
    out.push_back(std::move(point));
  }
  return out;
}

std::vector<double> existence_table(const LabeledDensity& density) {
  const LabelSet& space = density.label_space();
  std::vector<double> table(std::size_t{1} << space.size(), 0.0);
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    std::vector<Label> members;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(space[i]);
    }
    if (const Hypothesis* h = density.find(LabelSet(members))) table[mask] = h->weight;
  }
  return table;
}

double normal_pdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
  const Eigen::VectorXd d = x - mean;
  const double k = static_cast<double>(x.size());
  return std::exp(-0.5 * d.dot(cov.inverse() * d)) /
         std::sqrt(std::pow(2.0 * std::numbers::pi, k) * cov.determinant());
}

}  // namespace lmo::oracle
