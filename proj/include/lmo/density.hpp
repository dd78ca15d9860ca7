#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmo/gaussian.hpp"
#include "lmo/labels.hpp"

namespace lmo {

/// Hypothesis tables enumerate subsets of the label space, so memory and
/// time grow as 2^|L|. Construction above this many labels is refused.
inline constexpr std::size_t kDefaultLabelCap = 20;

inline constexpr double kWeightTolerance = 1e-9;
inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

/// One labeled object state (x, l).
struct LabeledState {
  Eigen::VectorXd x;
  Label label;
};

/// A finite labeled set {(x1,l1),...,(xn,ln)}; presentation order is irrelevant.
using LabeledPoint = std::vector<LabeledState>;

/// Existence weight of one label set with its joint conditional state density.
struct Hypothesis {
  LabelSet labels;
  double weight = 0.0;
  /// Absent iff labels is empty.
  std::optional<GaussianMixtureBlock> conditional;
};

/// General labeled multi-object density stored as an exhaustive table
/// {I -> (w(I), p(.|I))}. Label sets absent from the table have weight 0.
class LabeledDensity {
 public:
  LabeledDensity() = default;

  /// Drops zero-weight hypotheses. Throws kCapacityExceeded above `label_cap`
  /// labels, kInvalidArgument for state_dim < 1 or a repeated label set, and
  /// kUnknownLabel for hypotheses using labels outside `label_space`.
  /// Remaining invariants (normalization, symmetry, PSD) are reported by
  /// validate() rather than enforced here.
  LabeledDensity(LabelSet label_space, int state_dim, std::vector<Hypothesis> hypotheses,
                 std::size_t label_cap = kDefaultLabelCap);

  [[nodiscard]] const LabelSet& label_space() const { return label_space_; }
  [[nodiscard]] int state_dim() const { return state_dim_; }
  [[nodiscard]] const std::map<LabelSet, Hypothesis>& hypotheses() const { return hypotheses_; }
  /// Null when the label set carries no weight.
  [[nodiscard]] const Hypothesis* find(const LabelSet& labels) const;

 private:
  LabelSet label_space_;
  int state_dim_ = 1;
  std::map<LabelSet, Hypothesis> hypotheses_;
};

/// Per-label single-object densities of one product-form hypothesis.
using LabelDensities = std::map<Label, GaussianMixtureBlock>;

struct DeltaGlmbHypothesis {
  LabelSet labels;
  /// Opaque history index.
  std::string xi;
  double weight = 0.0;
  LabelDensities densities;
};

struct DeltaGlmbDensity {
  LabelSet label_space;
  int state_dim = 1;
  std::vector<DeltaGlmbHypothesis> hypotheses;
};

struct MDeltaGlmbHypothesis {
  LabelSet labels;
  double weight = 0.0;
  LabelDensities densities;
};

struct MDeltaGlmbDensity {
  LabelSet label_space;
  int state_dim = 1;
  std::vector<MDeltaGlmbHypothesis> hypotheses;
};

/// One term c of a GLMB: a weight table over label sets plus per-label
/// densities defined on the whole label space.
struct GlmbComponent {
  std::map<LabelSet, double> weights;
  LabelDensities densities;
};

struct GlmbDensity {
  LabelSet label_space;
  int state_dim = 1;
  std::vector<GlmbComponent> components;
};

template <typename D>
struct FactorBlock {
  LabelSet labels;
  D density;
};

/// Product of densities on disjoint label subspaces.
template <typename D>
struct Factorization {
  std::vector<FactorBlock<D>> blocks;

  [[nodiscard]] LabelSet label_space() const {
    LabelSet all;
    for (const auto& b : blocks) all = all.union_with(b.labels);
    return all;
  }
};

using FactorizedDensity = Factorization<LabeledDensity>;

// ---- diagnostics ----

/// Empty iff every invariant holds. Each entry names the hypothesis and the
/// violated invariant.
std::vector<std::string> validate(const LabeledDensity& density);
std::vector<std::string> validate(const DeltaGlmbDensity& density);
std::vector<std::string> validate(const MDeltaGlmbDensity& density);
std::vector<std::string> validate(const GlmbDensity& density);
std::vector<std::string> validate(const FactorizedDensity& density);

// ---- pointwise queries ----

/// w(L(X)) times the mixture pdf of the stacked state in canonical order.
double evaluate(const LabeledDensity& density, const LabeledPoint& point);
double existence_weight(const LabeledDensity& density, const LabelSet& labels);
/// Entry n is the probability that exactly n objects exist.
std::vector<double> cardinality_distribution(const LabeledDensity& density);
/// Sum over hypotheses containing `label` of w(I) times that label's marginal at x.
double phd(const LabeledDensity& density, const Label& label, const Eigen::VectorXd& x);
/// Sum over I containing `label` of w(I).
double existence_probability(const LabeledDensity& density, const Label& label);

// ---- conversions into the hypothesis table ----

LabeledDensity to_labeled(const DeltaGlmbDensity& density);
LabeledDensity to_labeled(const MDeltaGlmbDensity& density);
LabeledDensity to_labeled(const GlmbDensity& density);
/// Expands the product of blocks into a single table over the union of labels.
LabeledDensity to_labeled(const FactorizedDensity& density);

/// A delta-GLMB viewed as a GLMB with one component per hypothesis.
GlmbDensity to_glmb(const DeltaGlmbDensity& density);

/// Restricts `point` to the labels in `labels`.
LabeledPoint restrict_point(const LabeledPoint& point, const LabelSet& labels);

}  // namespace lmo
