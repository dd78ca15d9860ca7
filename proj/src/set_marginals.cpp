#include "lmo/set_marginals.hpp"

#include <map>

#include "lmo/error.hpp"

namespace lmo {

namespace {

void check_sub(const LabelSet& space, const LabelSet& sub) {
  if (sub.empty()) throw Error(ErrorKind::kInvalidArgument, "set marginal onto no labels");
  if (!sub.is_subset_of(space)) {
    throw Error(ErrorKind::kUnknownLabel,
                sub.to_string() + " is not within the label space " + space.to_string());
  }
}

LabelDensities restrict_densities(const LabelDensities& densities, const LabelSet& labels) {
  LabelDensities out;
  for (const auto& label : labels) {
    auto it = densities.find(label);
    if (it == densities.end()) {
      throw Error(ErrorKind::kInvalidArgument, "no density for label " + label.id());
    }
    out.emplace(label, it->second);
  }
  return out;
}

}  // namespace

LabeledDensity lmo_set_marginal(const LabeledDensity& density, const LabelSet& sub,
                                double prune_below) {
  check_sub(density.label_space(), sub);
  if (sub == density.label_space()) return density;

  struct Entry {
    double weight = 0.0;
    GaussianMixtureBlock mixture;
  };
  std::map<LabelSet, Entry> table;
  for (const auto& [labels, h] : density.hypotheses()) {
    const LabelSet kept = labels.intersect(sub);
    auto& e = table[kept];
    e.weight += h.weight;
    if (kept.empty()) continue;
    for (const auto& c : h.conditional->components) {
      e.mixture.components.push_back({h.weight * c.weight, marginalize(c.block, kept)});
    }
  }

  std::vector<Hypothesis> out;
  out.reserve(table.size());
  for (auto& [labels, e] : table) {
    Hypothesis h{labels, e.weight, std::nullopt};
    if (!labels.empty()) h.conditional = simplify(std::move(e.mixture), prune_below);
    out.push_back(std::move(h));
  }
  return {sub, density.state_dim(), std::move(out)};
}

GlmbDensity glmb_set_marginal(const GlmbDensity& density, const LabelSet& sub) {
  check_sub(density.label_space, sub);
  GlmbDensity out{sub, density.state_dim, {}};
  out.components.reserve(density.components.size());
  for (const auto& c : density.components) {
    GlmbComponent m;
    for (const auto& [labels, w] : c.weights) m.weights[labels.intersect(sub)] += w;
    for (const auto& [label, mix] : c.densities) {
      if (sub.contains(label)) m.densities.emplace(label, mix);
    }
    out.components.push_back(std::move(m));
  }
  return out;
}

DeltaGlmbDensity dglmb_set_marginal(const DeltaGlmbDensity& density, const LabelSet& sub) {
  check_sub(density.label_space, sub);
  if (sub == density.label_space) return density;

  DeltaGlmbDensity out{sub, density.state_dim, {}};
  std::map<std::pair<LabelSet, std::string>, std::size_t> slot;
  for (const auto& h : density.hypotheses) {
    const LabelSet kept = h.labels.intersect(sub);
    auto [it, fresh] = slot.emplace(std::make_pair(kept, h.xi), out.hypotheses.size());
    if (fresh) {
      out.hypotheses.push_back({kept, h.xi, h.weight, restrict_densities(h.densities, kept)});
    } else {
      out.hypotheses[it->second].weight += h.weight;
    }
  }
  return out;
}

MDeltaGlmbDensity mdglmb_set_marginal(const MDeltaGlmbDensity& density, const LabelSet& sub) {
  check_sub(density.label_space, sub);
  if (sub == density.label_space) return density;

  std::map<LabelSet, const MDeltaGlmbHypothesis*> source;
  for (const auto& h : density.hypotheses) source.emplace(h.labels, &h);

  struct Entry {
    double weight = 0.0;
    std::map<Label, GaussianMixtureBlock> fallback;
  };
  std::map<LabelSet, Entry> table;
  for (const auto& h : density.hypotheses) {
    const LabelSet kept = h.labels.intersect(sub);
    auto& e = table[kept];
    e.weight += h.weight;
    for (const auto& label : kept) {
      auto& mix = e.fallback[label];
      for (const auto& c : h.densities.at(label).components) {
        mix.components.push_back({h.weight * c.weight, c.block});
      }
    }
  }

  MDeltaGlmbDensity out{sub, density.state_dim, {}};
  for (auto& [labels, e] : table) {
    MDeltaGlmbHypothesis h{labels, e.weight, {}};
    auto src = source.find(labels);
    if (src != source.end()) {
      h.densities = restrict_densities(src->second->densities, labels);
    } else {
      for (auto& [label, mix] : e.fallback) h.densities.emplace(label, simplify(std::move(mix)));
    }
    out.hypotheses.push_back(std::move(h));
  }
  return out;
}

}  // namespace lmo
