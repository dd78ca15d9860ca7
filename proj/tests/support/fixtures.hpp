#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <random>
#include <string>

#include "lmo/density.hpp"

namespace lmo::test {

GaussianBlock block(const LabelSet& labels, std::initializer_list<double> mean,
                    std::initializer_list<std::initializer_list<double>> cov);

/// Three-object example: weights 0.01 / 0.01, 0.01, 0.09 / 0.07, 0.09, 0.09 / 0.63
/// over the subsets of {1,2,3}, with correlated joints on {1,2} and {1,2,3}.
LabeledDensity example_density();

std::string data_path(const std::string& name);

struct RandomDensityOptions {
  std::size_t min_labels = 1;
  std::size_t max_labels = 4;
  int state_dim = 1;
  std::size_t max_components = 2;
  /// Probability that a subset is given a hypothesis (the full set and the
  /// empty set always are).
  double subset_probability = 0.7;
};

LabeledDensity random_density(std::mt19937_64& rng, const RandomDensityOptions& options = {},
                              const std::string& label_prefix = "t");

/// Random density whose joints all carry |rho| >= 0.2 between every label
/// pair, so its gamma graph is connected.
LabeledDensity random_connected_density(std::mt19937_64& rng, std::size_t labels,
                                        const std::string& label_prefix);

DeltaGlmbDensity random_dglmb(std::mt19937_64& rng, std::size_t labels, std::size_t max_xi = 2);

/// Random labeled point whose label set is a uniformly drawn subset of the
/// label space (it may carry zero weight).
LabeledPoint random_point(const LabelSet& space, int state_dim, std::mt19937_64& rng,
                          double spread = 3.0);

/// Random labeled point drawn from one of the density's own hypotheses.
LabeledPoint random_supported_point(const LabeledDensity& density, std::mt19937_64& rng,
                                    double spread = 3.0);

Eigen::MatrixXd random_spd(std::mt19937_64& rng, Eigen::Index n);

}  // namespace lmo::test
