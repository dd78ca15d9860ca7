#pragma once

#include "lmo/density.hpp"

namespace lmo {

inline constexpr double kDefaultPruneThreshold = 1e-12;

/// Set marginal of the labeled RFS restricted to the label subspace `sub`.
///
/// For every J within `sub` the new weight is the sum of w(J u I) over I in
/// the complement of `sub`, and the new conditional is the mixture of the
/// contributing joints' Gaussian marginals onto J, weighted by w(J u I).
/// Bitwise-identical components are merged and components with relative
/// weight below `prune_below` are dropped. Throws kUnknownLabel when `sub`
/// leaves the label space and kInvalidArgument when it is empty.
LabeledDensity lmo_set_marginal(const LabeledDensity& density, const LabelSet& sub,
                                double prune_below = kDefaultPruneThreshold);

/// GLMB form: each component keeps its per-label densities (restricted to
/// `sub`) and its weight table is summed over the complement of `sub`.
GlmbDensity glmb_set_marginal(const GlmbDensity& density, const LabelSet& sub);

/// Hypothesis (J, xi) collects the weights of every (J u I, xi).
DeltaGlmbDensity dglmb_set_marginal(const DeltaGlmbDensity& density, const LabelSet& sub);

/// Hypothesis J collects the weights of every J u I and keeps the densities
/// the source attaches to J itself. When the source has no hypothesis J the
/// densities are the weight-averaged mixture over the contributing J u I.
MDeltaGlmbDensity mdglmb_set_marginal(const MDeltaGlmbDensity& density, const LabelSet& sub);

}  // namespace lmo
