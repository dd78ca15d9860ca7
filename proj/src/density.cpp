#include "lmo/density.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <set>
#include <sstream>

#include "lmo/error.hpp"

namespace lmo {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_block(const GaussianBlock& block, const LabelSet& labels, int state_dim,
                 const std::string& where, std::vector<std::string>& out) {
  const auto n = static_cast<Eigen::Index>(labels.size()) * state_dim;
  if (block.labels != labels) {
    out.push_back(where + ": block labels " + block.labels.to_string() + " differ from " +
                  labels.to_string());
    return;
  }
  if (block.state_dim != state_dim) {
    out.push_back(where + ": state_dim " + std::to_string(block.state_dim) + " differs from " +
                  std::to_string(state_dim));
    return;
  }
  if (block.mean.size() != n) {
    out.push_back(where + ": mean has length " + std::to_string(block.mean.size()) +
                  ", expected " + std::to_string(n));
    return;
  }
  if (block.cov.rows() != n || block.cov.cols() != n) {
    out.push_back(where + ": covariance is " + std::to_string(block.cov.rows()) + "x" +
                  std::to_string(block.cov.cols()) + ", expected " + std::to_string(n) + "x" +
                  std::to_string(n));
    return;
  }
  if (!block.mean.allFinite() || !block.cov.allFinite()) {
    out.push_back(where + ": non-finite mean or covariance entry");
    return;
  }
  const double asym = (block.cov - block.cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance) {
    out.push_back(where + ": covariance not symmetric (max asymmetry " + fmt_double(asym) + ")");
    return;
  }
  const Eigen::MatrixXd sym = 0.5 * (block.cov + block.cov.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -kPsdTolerance) {
    out.push_back(where + ": covariance not positive semidefinite (smallest eigenvalue " +
                  fmt_double(min_eig) + ")");
  }
}

void check_mixture(const GaussianMixtureBlock& mix, const LabelSet& labels, int state_dim,
                   const std::string& where, std::vector<std::string>& out) {
  if (mix.components.empty()) {
    out.push_back(where + ": mixture has no components");
    return;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    const auto& c = mix.components[i];
    const std::string at = where + " component " + std::to_string(i);
    if (!(c.weight > 0.0 && c.weight <= 1.0 + kWeightTolerance)) {
      out.push_back(at + ": weight " + fmt_double(c.weight) + " outside (0,1]");
    }
    total += c.weight;
    check_block(c.block, labels, state_dim, at, out);
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    out.push_back(where + ": mixture weights sum to " + fmt_double(total) + ", not 1");
  }
}

void check_total(double total, std::vector<std::string>& out) {
  if (std::abs(total - 1.0) > kWeightTolerance) {
    out.push_back("normalization: hypothesis weights sum to " + fmt_double(total) + ", not 1");
  }
}

template <typename H>
void check_product_hypothesis(const H& h, const LabelSet& space, int state_dim,
                              const std::string& where, std::vector<std::string>& out) {
  if (!(h.weight >= 0.0)) out.push_back(where + ": negative weight " + fmt_double(h.weight));
  if (!h.labels.is_subset_of(space)) {
    out.push_back(where + ": labels outside the label space");
  }
  for (const auto& label : h.labels) {
    auto it = h.densities.find(label);
    if (it == h.densities.end()) {
      out.push_back(where + ": no density for label " + label.id());
      continue;
    }
    check_mixture(it->second, LabelSet{label}, state_dim, where + " label " + label.id(), out);
  }
  for (const auto& [label, mix] : h.densities) {
    if (!h.labels.contains(label)) {
      out.push_back(where + ": density given for label " + label.id() + " outside the hypothesis");
    }
  }
}

Eigen::VectorXd stack(const LabeledPoint& point, const LabelSet& labels, int state_dim) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(labels.size()) * state_dim);
  for (const auto& s : point) {
    const auto pos = static_cast<Eigen::Index>(labels.index_of(s.label)) * state_dim;
    x.segment(pos, state_dim) = s.x;
  }
  return x;
}

GaussianMixtureBlock product_of(const LabelDensities& densities, const LabelSet& labels) {
  std::vector<const GaussianMixtureBlock*> factors;
  factors.reserve(labels.size());
  for (const auto& label : labels) {
    auto it = densities.find(label);
    if (it == densities.end()) {
      throw Error(ErrorKind::kInvalidArgument, "no density for label " + label.id());
    }
    factors.push_back(&it->second);
  }
  return product(factors);
}

/// Accumulates weighted mixtures per label set and emits a normalized table.
class TableBuilder {
 public:
  void add(const LabelSet& labels, double weight, const GaussianMixtureBlock* mix) {
    if (weight <= 0.0) return;
    auto& entry = entries_[labels];
    entry.weight += weight;
    if (mix == nullptr) return;
    for (const auto& c : mix->components) entry.mixture.components.push_back({weight * c.weight, c.block});
  }

  std::vector<Hypothesis> build() && {
    std::vector<Hypothesis> out;
    out.reserve(entries_.size());
    for (auto& [labels, e] : entries_) {
      Hypothesis h{labels, e.weight, std::nullopt};
      if (!labels.empty()) h.conditional = simplify(std::move(e.mixture), 0.0);
      out.push_back(std::move(h));
    }
    return out;
  }

 private:
  struct Entry {
    double weight = 0.0;
    GaussianMixtureBlock mixture;
  };
  std::map<LabelSet, Entry> entries_;
};

}  // namespace

LabeledDensity::LabeledDensity(LabelSet label_space, int state_dim,
                               std::vector<Hypothesis> hypotheses, std::size_t label_cap)
    : label_space_(std::move(label_space)), state_dim_(state_dim) {
  if (label_space_.size() > label_cap) {
    throw Error(ErrorKind::kCapacityExceeded,
                "label space has " + std::to_string(label_space_.size()) +
                    " labels; the hypothesis table is capped at " + std::to_string(label_cap));
  }
  if (state_dim_ < 1) throw Error(ErrorKind::kInvalidArgument, "state_dim must be at least 1");
  for (auto& h : hypotheses) {
    if (!h.labels.is_subset_of(label_space_)) {
      throw Error(ErrorKind::kUnknownLabel, "hypothesis " + h.labels.to_string() +
                                                " uses labels outside " + label_space_.to_string());
    }
    if (h.weight == 0.0) continue;
    const LabelSet key = h.labels;
    if (!hypotheses_.emplace(key, std::move(h)).second) {
      throw Error(ErrorKind::kInvalidArgument, "hypothesis " + key.to_string() + " listed twice");
    }
  }
}

const Hypothesis* LabeledDensity::find(const LabelSet& labels) const {
  auto it = hypotheses_.find(labels);
  return it == hypotheses_.end() ? nullptr : &it->second;
}

std::vector<std::string> validate(const LabeledDensity& density) {
  std::vector<std::string> out;
  double total = 0.0;
  for (const auto& [labels, h] : density.hypotheses()) {
    const std::string where = "hypothesis " + labels.to_string();
    if (!(h.weight >= 0.0)) out.push_back(where + ": negative weight " + fmt_double(h.weight));
    total += h.weight;
    if (!labels.is_subset_of(density.label_space())) {
      out.push_back(where + ": labels outside the label space");
    }
    if (labels.empty()) {
      if (h.conditional) out.push_back(where + ": empty hypothesis carries a state density");
      continue;
    }
    if (!h.conditional) {
      out.push_back(where + ": missing conditional state density");
      continue;
    }
    check_mixture(*h.conditional, labels, density.state_dim(), where, out);
  }
  check_total(total, out);
  return out;
}

std::vector<std::string> validate(const DeltaGlmbDensity& density) {
  std::vector<std::string> out;
  double total = 0.0;
  std::map<std::string, const DeltaGlmbHypothesis*> by_xi;
  for (std::size_t i = 0; i < density.hypotheses.size(); ++i) {
    const auto& h = density.hypotheses[i];
    const std::string where = "hypothesis " + std::to_string(i) + " " + h.labels.to_string() +
                              " xi=" + h.xi;
    total += h.weight;
    check_product_hypothesis(h, density.label_space, density.state_dim, where, out);
    // Single-object densities are indexed by xi alone.
    auto [it, fresh] = by_xi.emplace(h.xi, &h);
    if (fresh) continue;
    for (const auto& label : h.labels.intersect(it->second->labels)) {
      const auto a = h.densities.find(label);
      const auto b = it->second->densities.find(label);
      if (a != h.densities.end() && b != it->second->densities.end() &&
          !identical(a->second, b->second)) {
        out.push_back(where + ": density of label " + label.id() +
                      " differs from another hypothesis with the same xi");
      }
    }
  }
  check_total(total, out);
  return out;
}

std::vector<std::string> validate(const MDeltaGlmbDensity& density) {
  std::vector<std::string> out;
  double total = 0.0;
  std::map<LabelSet, int> seen;
  for (std::size_t i = 0; i < density.hypotheses.size(); ++i) {
    const auto& h = density.hypotheses[i];
    const std::string where = "hypothesis " + h.labels.to_string();
    total += h.weight;
    if (seen[h.labels]++) out.push_back(where + ": label set listed more than once");
    check_product_hypothesis(h, density.label_space, density.state_dim, where, out);
  }
  check_total(total, out);
  return out;
}

std::vector<std::string> validate(const GlmbDensity& density) {
  std::vector<std::string> out;
  double total = 0.0;
  for (std::size_t c = 0; c < density.components.size(); ++c) {
    const auto& comp = density.components[c];
    const std::string where = "component " + std::to_string(c);
    std::set<Label> needed;
    for (const auto& [labels, w] : comp.weights) {
      if (!(w >= 0.0)) out.push_back(where + " " + labels.to_string() + ": negative weight");
      if (!labels.is_subset_of(density.label_space)) {
        out.push_back(where + " " + labels.to_string() + ": labels outside the label space");
      }
      total += w;
      if (w > 0.0) needed.insert(labels.begin(), labels.end());
    }
    for (const auto& label : needed) {
      auto it = comp.densities.find(label);
      if (it == comp.densities.end()) {
        out.push_back(where + ": no density for label " + label.id());
        continue;
      }
      check_mixture(it->second, LabelSet{label}, density.state_dim, where + " label " + label.id(),
                    out);
    }
  }
  check_total(total, out);
  return out;
}

std::vector<std::string> validate(const FactorizedDensity& density) {
  std::vector<std::string> out;
  std::size_t total = 0;
  for (std::size_t b = 0; b < density.blocks.size(); ++b) {
    const auto& block = density.blocks[b];
    total += block.labels.size();
    const std::string where = "block " + block.labels.to_string();
    if (block.density.label_space() != block.labels) {
      out.push_back(where + ": density label space " + block.density.label_space().to_string() +
                    " differs from the block labels");
    }
    for (const auto& v : validate(block.density)) out.push_back(where + ": " + v);
  }
  if (density.label_space().size() != total) out.push_back("blocks are not pairwise disjoint");
  return out;
}

double evaluate(const LabeledDensity& density, const LabeledPoint& point) {
  std::vector<Label> raw;
  raw.reserve(point.size());
  for (const auto& s : point) {
    if (!density.label_space().contains(s.label)) {
      throw Error(ErrorKind::kUnknownLabel, "label '" + s.label.id() + "' not in the label space");
    }
    if (s.x.size() != density.state_dim()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "state for label '" + s.label.id() + "' has length " +
                      std::to_string(s.x.size()) + ", expected " +
                      std::to_string(density.state_dim()));
    }
    raw.push_back(s.label);
  }
  const LabelSet labels = LabelSet::from_unique(std::move(raw));
  const Hypothesis* h = density.find(labels);
  if (h == nullptr) return 0.0;
  if (labels.empty()) return h->weight;
  const MixturePdf pdf(*h->conditional);
  return h->weight * pdf.pdf(stack(point, labels, density.state_dim()));
}

double existence_weight(const LabeledDensity& density, const LabelSet& labels) {
  if (!labels.is_subset_of(density.label_space())) {
    throw Error(ErrorKind::kUnknownLabel,
                labels.to_string() + " is not within " + density.label_space().to_string());
  }
  const Hypothesis* h = density.find(labels);
  return h == nullptr ? 0.0 : h->weight;
}

std::vector<double> cardinality_distribution(const LabeledDensity& density) {
  std::vector<double> out(density.label_space().size() + 1, 0.0);
  for (const auto& [labels, h] : density.hypotheses()) out[labels.size()] += h.weight;
  return out;
}

double existence_probability(const LabeledDensity& density, const Label& label) {
  if (!density.label_space().contains(label)) {
    throw Error(ErrorKind::kUnknownLabel, "label '" + label.id() + "' not in the label space");
  }
  double p = 0.0;
  for (const auto& [labels, h] : density.hypotheses()) {
    if (labels.contains(label)) p += h.weight;
  }
  return p;
}

double phd(const LabeledDensity& density, const Label& label, const Eigen::VectorXd& x) {
  if (!density.label_space().contains(label)) {
    throw Error(ErrorKind::kUnknownLabel, "label '" + label.id() + "' not in the label space");
  }
  const LabelSet single{label};
  double total = 0.0;
  for (const auto& [labels, h] : density.hypotheses()) {
    if (!labels.contains(label)) continue;
    const MixturePdf pdf(mixture_marginalize(*h.conditional, single));
    total += h.weight * pdf.pdf(x);
  }
  return total;
}

LabeledDensity to_labeled(const DeltaGlmbDensity& density) {
  TableBuilder table;
  for (const auto& h : density.hypotheses) {
    if (h.labels.empty()) {
      table.add(h.labels, h.weight, nullptr);
      continue;
    }
    const auto joint = product_of(h.densities, h.labels);
    table.add(h.labels, h.weight, &joint);
  }
  return {density.label_space, density.state_dim, std::move(table).build()};
}

LabeledDensity to_labeled(const MDeltaGlmbDensity& density) {
  TableBuilder table;
  for (const auto& h : density.hypotheses) {
    if (h.labels.empty()) {
      table.add(h.labels, h.weight, nullptr);
      continue;
    }
    const auto joint = product_of(h.densities, h.labels);
    table.add(h.labels, h.weight, &joint);
  }
  return {density.label_space, density.state_dim, std::move(table).build()};
}

LabeledDensity to_labeled(const GlmbDensity& density) {
  TableBuilder table;
  for (const auto& c : density.components) {
    for (const auto& [labels, w] : c.weights) {
      if (labels.empty()) {
        table.add(labels, w, nullptr);
        continue;
      }
      const auto joint = product_of(c.densities, labels);
      table.add(labels, w, &joint);
    }
  }
  return {density.label_space, density.state_dim, std::move(table).build()};
}

LabeledDensity to_labeled(const FactorizedDensity& density) {
  if (density.blocks.empty()) throw Error(ErrorKind::kInvalidArgument, "factorization has no blocks");
  if (density.blocks.size() == 1) return density.blocks.front().density;

  std::size_t total_labels = 0;
  const int d = density.blocks.front().density.state_dim();
  std::vector<std::vector<const Hypothesis*>> tables;
  for (const auto& b : density.blocks) {
    total_labels += b.labels.size();
    if (b.density.state_dim() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "factor blocks disagree on state_dim");
    }
    auto& t = tables.emplace_back();
    for (const auto& [labels, h] : b.density.hypotheses()) t.push_back(&h);
    if (t.empty()) throw Error(ErrorKind::kInvalidArgument, "factor block has no hypotheses");
  }
  const LabelSet space = density.label_space();
  if (space.size() != total_labels) {
    throw Error(ErrorKind::kInvalidArgument, "factor blocks are not pairwise disjoint");
  }

  TableBuilder table;
  std::vector<std::size_t> pick(tables.size(), 0);
  while (true) {
    LabelSet labels;
    double w = 1.0;
    std::vector<const GaussianMixtureBlock*> factors;
    for (std::size_t b = 0; b < tables.size(); ++b) {
      const Hypothesis* h = tables[b][pick[b]];
      labels = labels.union_with(h->labels);
      w *= h->weight;
      if (h->conditional) factors.push_back(&*h->conditional);
    }
    if (factors.empty()) {
      table.add(labels, w, nullptr);
    } else {
      const auto joint = product(factors);
      table.add(labels, w, &joint);
    }
    std::size_t b = 0;
    while (b < tables.size() && ++pick[b] == tables[b].size()) pick[b++] = 0;
    if (b == tables.size()) break;
  }
  return {space, d, std::move(table).build(), std::max(kDefaultLabelCap, space.size())};
}

GlmbDensity to_glmb(const DeltaGlmbDensity& density) {
  GlmbDensity out{density.label_space, density.state_dim, {}};
  out.components.reserve(density.hypotheses.size());
  for (const auto& h : density.hypotheses) {
    GlmbComponent c;
    c.weights[h.labels] = h.weight;
    c.densities = h.densities;
    out.components.push_back(std::move(c));
  }
  return out;
}

LabeledPoint restrict_point(const LabeledPoint& point, const LabelSet& labels) {
  LabeledPoint out;
  for (const auto& s : point) {
    if (labels.contains(s.label)) out.push_back(s);
  }
  return out;
}

}  // namespace lmo
