#include "lmo/approximations.hpp"

#include <map>

#include "lmo/error.hpp"
#include "lmo/set_marginals.hpp"

namespace lmo {

namespace {

bool same_densities(const LabelDensities& a, const LabelDensities& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [label, mix] : a) {
    auto it = b.find(label);
    if (it == b.end() || !identical(simplify(mix, 0.0), simplify(it->second, 0.0))) return false;
  }
  return true;
}

}  // namespace

DeltaGlmbDensity dglmb_approximate(const LabeledDensity& density) {
  DeltaGlmbDensity out{density.label_space(), density.state_dim(), {}};
  out.hypotheses.reserve(density.hypotheses().size());
  for (const auto& [labels, h] : density.hypotheses()) {
    DeltaGlmbHypothesis d{labels, labels.to_string(), h.weight, {}};
    for (const auto& label : labels) {
      d.densities.emplace(label, simplify(mixture_marginalize(*h.conditional, LabelSet{label}), 0.0));
    }
    out.hypotheses.push_back(std::move(d));
  }
  return out;
}

MDeltaGlmbDensity mdglmb_construct(const DeltaGlmbDensity& density) {
  struct Entry {
    double weight = 0.0;
    std::map<Label, GaussianMixtureBlock> mixtures;
  };
  std::map<LabelSet, Entry> groups;
  for (const auto& h : density.hypotheses) {
    auto& e = groups[h.labels];
    e.weight += h.weight;
    for (const auto& label : h.labels) {
      auto& mix = e.mixtures[label];
      for (const auto& c : h.densities.at(label).components) {
        mix.components.push_back({h.weight * c.weight, c.block});
      }
    }
  }
  MDeltaGlmbDensity out{density.label_space, density.state_dim, {}};
  for (auto& [labels, e] : groups) {
    if (e.weight <= 0.0) continue;
    MDeltaGlmbHypothesis m{labels, e.weight, {}};
    for (auto& [label, mix] : e.mixtures) m.densities.emplace(label, simplify(std::move(mix), 0.0));
    out.hypotheses.push_back(std::move(m));
  }
  return out;
}

DeltaGlmbDensity merge_equivalent(const DeltaGlmbDensity& density) {
  DeltaGlmbDensity out{density.label_space, density.state_dim, {}};
  for (const auto& h : density.hypotheses) {
    bool merged = false;
    for (auto& o : out.hypotheses) {
      if (o.labels == h.labels && same_densities(o.densities, h.densities)) {
        o.weight += h.weight;
        merged = true;
        break;
      }
    }
    if (!merged) out.hypotheses.push_back(h);
  }
  return out;
}

FactorizedDensity ca_factorize(const LabeledDensity& density, CorrelationWeights weights,
                               double threshold) {
  const auto blocks = partition(density, weights, threshold);
  FactorizedDensity out;
  if (blocks.size() == 1) {
    out.blocks.push_back({density.label_space(), density});
    return out;
  }
  for (const auto& labels : blocks) out.blocks.push_back({labels, lmo_set_marginal(density, labels)});
  return out;
}

Factorization<DeltaGlmbDensity> ca_factorize(const DeltaGlmbDensity& density,
                                             CorrelationWeights weights, double threshold) {
  const auto blocks = partition(to_labeled(density), weights, threshold);
  Factorization<DeltaGlmbDensity> out;
  if (blocks.size() == 1) {
    out.blocks.push_back({density.label_space, density});
    return out;
  }
  for (const auto& labels : blocks) {
    out.blocks.push_back({labels, merge_equivalent(dglmb_set_marginal(density, labels))});
  }
  return out;
}

double factor_evaluate(const FactorizedDensity& density, const LabeledPoint& point) {
  const LabelSet space = density.label_space();
  for (const auto& s : point) {
    if (!space.contains(s.label)) {
      throw Error(ErrorKind::kUnknownLabel, "label '" + s.label.id() + "' is in no factor block");
    }
  }
  double value = 1.0;
  for (const auto& block : density.blocks) {
    value *= evaluate(block.density, restrict_point(point, block.labels));
  }
  return value;
}

FactorizedDensity to_factorized(const Factorization<DeltaGlmbDensity>& density) {
  FactorizedDensity out;
  for (const auto& b : density.blocks) out.blocks.push_back({b.labels, to_labeled(b.density)});
  return out;
}

}  // namespace lmo
