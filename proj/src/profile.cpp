#include "lmo/profile.hpp"

#include "lmo/approximations.hpp"

#include <map>

namespace lmo {

namespace {

void count_table(const LabeledDensity& d, bool omit_empty, ComplexityProfile& p) {
  for (const auto& [labels, h] : d.hypotheses()) {
    if (labels.empty()) {
      if (!omit_empty) ++p.hypotheses;
      continue;
    }
    ++p.hypotheses;
    p.densities[labels.size() - 1] += h.conditional->size();
  }
}

template <typename H>
void count_products(const std::vector<H>& hyps, bool omit_empty, ComplexityProfile& p) {
  for (const auto& h : hyps) {
    if (h.weight <= 0.0) continue;
    if (h.labels.empty()) {
      if (!omit_empty) ++p.hypotheses;
      continue;
    }
    ++p.hypotheses;
    for (const auto& [label, mix] : h.densities) p.densities[0] += mix.size();
  }
}

}  // namespace

ComplexityProfile profile(const LabeledDensity& density) {
  ComplexityProfile p;
  p.densities.assign(density.label_space().size(), 0);
  count_table(density, false, p);
  return p;
}

ComplexityProfile profile(const DeltaGlmbDensity& density) {
  ComplexityProfile p;
  p.densities.assign(density.label_space.size(), 0);
  count_products(density.hypotheses, false, p);
  return p;
}

ComplexityProfile profile(const MDeltaGlmbDensity& density) {
  ComplexityProfile p;
  p.densities.assign(density.label_space.size(), 0);
  count_products(density.hypotheses, false, p);
  return p;
}

ComplexityProfile profile(const FactorizedDensity& density) {
  if (density.blocks.size() == 1) return profile(density.blocks.front().density);
  ComplexityProfile p;
  p.densities.assign(density.label_space().size(), 0);
  for (const auto& b : density.blocks) count_table(b.density, true, p);
  return p;
}

ComplexityProfile profile(const Factorization<DeltaGlmbDensity>& density) {
  if (density.blocks.size() == 1) return profile(density.blocks.front().density);
  ComplexityProfile p;
  p.densities.assign(density.label_space().size(), 0);
  for (const auto& b : density.blocks) count_products(b.density.hypotheses, true, p);
  return p;
}

bool product_form_loses_correlation(const LabeledDensity& density, double tolerance) {
  for (const auto& [labels, h] : density.hypotheses()) {
    if (labels.size() < 2) continue;
    if (simplify(*h.conditional, 0.0).size() > 1) return true;
    const GaussianBlock& block = h.conditional->components.front().block;
    for (const auto& a : block.layout()) {
      for (const auto& b : block.layout()) {
        if (a.label == b.label) continue;
        if (block.cov.block(a.offset, b.offset, a.length, b.length).cwiseAbs().maxCoeff() >
            tolerance) {
          return true;
        }
      }
    }
  }
  return false;
}

bool partition_loses_correlation(const CorrelationReport& report, double tolerance) {
  std::map<Label, std::size_t> block_of;
  for (std::size_t b = 0; b < report.partition.size(); ++b) {
    for (const auto& label : report.partition[b]) block_of[label] = b;
  }
  const auto n = static_cast<Eigen::Index>(report.label_space.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto& li = report.label_space[static_cast<std::size_t>(i)];
      const auto& lj = report.label_space[static_cast<std::size_t>(j)];
      if (block_of[li] != block_of[lj] && report.gamma(i, j) > tolerance) return true;
    }
  }
  return false;
}

bool grouping_loses_correlation(const DeltaGlmbDensity& density) {
  std::map<LabelSet, int> per_set;
  for (const auto& h : merge_equivalent(density).hypotheses) {
    if (h.labels.size() >= 2 && h.weight > 0.0 && ++per_set[h.labels] > 1) return true;
  }
  return false;
}

}  // namespace lmo
