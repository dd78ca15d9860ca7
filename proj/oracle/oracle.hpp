#pragma once

// Brute-force reference computations for tests and cross-checks. Kept naive
// on purpose and outside the public lmo headers.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "lmo/density.hpp"

namespace lmo::oracle {

using Integrand = std::function<double(const Eigen::VectorXd&)>;

/// Tensor-product trapezoidal rule over the box [lo, hi]; at most 3 axes.
/// Each axis is split into ceil((hi - lo) / step) equal intervals.
double grid_integrate(const Integrand& f, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                      double step);

/// Draws a label set by weight, then the joint state from its mixture.
std::vector<LabeledPoint> sample(const LabeledDensity& density, std::size_t count,
                                 std::uint64_t seed);

/// Probability of every existence pattern, indexed by bitmask over the
/// canonical label order (bit i set iff label i exists).
std::vector<double> existence_table(const LabeledDensity& density);

/// Density of a multivariate normal from the textbook formula (explicit
/// inverse and determinant).
double normal_pdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov);

}  // namespace lmo::oracle
