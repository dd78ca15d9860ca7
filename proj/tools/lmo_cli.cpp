// Command-line front end: correlation analysis, approximations, set
// marginals and KL divergence for labeled multi-object density documents.

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lmo/approximations.hpp"
#include "lmo/correlation.hpp"
#include "lmo/divergence.hpp"
#include "lmo/document.hpp"
#include "lmo/error.hpp"
#include "lmo/profile.hpp"
#include "lmo/set_marginals.hpp"

namespace {

using ojson = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalidInput = 2, kNumericalFailure = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ojson labels_json(const lmo::LabelSet& labels) {
  ojson a = ojson::array();
  for (const auto& l : labels) a.push_back(l.id());
  return a;
}

ojson matrix_json(const Eigen::MatrixXd& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::isnan(m(i, j))) {
        row.push_back(nullptr);
      } else {
        row.push_back(m(i, j));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson profile_json(const lmo::ComplexityProfile& p) {
  ojson o;
  o["hypotheses"] = p.hypotheses;
  o["densities"] = p.densities;
  o["correlation_loss"] = p.correlation_loss;
  return o;
}

std::string profile_text(const lmo::ComplexityProfile& p) {
  std::string s = fmt::format("  T0 (hypotheses)   {}\n", p.hypotheses);
  for (std::size_t k = 1; k <= p.densities.size(); ++k) {
    s += fmt::format("  T{} (on X^{})       {}\n", k, k, p.t(k));
  }
  s += fmt::format("  correlation loss  {}\n", p.correlation_loss ? "yes" : "no");
  return s;
}

/// Parses and validates; validation failures become InvalidInput.
lmo::AnyDensity load(const std::string& path) {
  lmo::AnyDensity doc = lmo::read_document(path);
  const auto violations = lmo::validate(doc);
  if (!violations.empty()) {
    std::string msg = path + ": density fails validation";
    for (const auto& v : violations) msg += "\n  " + v;
    throw InvalidInput(msg);
  }
  return doc;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + output);
  out << text;
}

lmo::GaussianMixtureBlock compact(const lmo::GaussianMixtureBlock& mix) {
  return lmo::GaussianMixtureBlock::single(lmo::moment_match(mix));
}

lmo::LabeledDensity compact(const lmo::LabeledDensity& d) {
  std::vector<lmo::Hypothesis> hyps;
  for (const auto& [labels, h] : d.hypotheses()) {
    lmo::Hypothesis c = h;
    if (c.conditional) c.conditional = compact(*c.conditional);
    hyps.push_back(std::move(c));
  }
  return {d.label_space(), d.state_dim(), std::move(hyps)};
}

template <typename D>
D compact_products(D d) {
  for (auto& h : d.hypotheses) {
    for (auto& [label, mix] : h.densities) mix = compact(mix);
  }
  return d;
}

lmo::GlmbDensity compact(lmo::GlmbDensity d) {
  for (auto& c : d.components) {
    for (auto& [label, mix] : c.densities) mix = compact(mix);
  }
  return d;
}

lmo::AnyDensity compact(const lmo::AnyDensity& doc) {
  return std::visit(
      [](const auto& d) -> lmo::AnyDensity {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, lmo::LabeledDensity>) {
          return compact(d);
        } else if constexpr (std::is_same_v<T, lmo::FactorizedDensity>) {
          lmo::FactorizedDensity out = d;
          for (auto& b : out.blocks) b.density = compact(b.density);
          return out;
        } else if constexpr (std::is_same_v<T, lmo::GlmbDensity>) {
          return compact(d);
        } else {
          return compact_products(d);
        }
      },
      doc);
}

lmo::ComplexityProfile profile_of(const lmo::AnyDensity& doc) {
  return std::visit(
      [](const auto& d) -> lmo::ComplexityProfile {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, lmo::GlmbDensity>) {
          return lmo::profile(lmo::to_labeled(d));
        } else {
          return lmo::profile(d);
        }
      },
      doc);
}

// ---- analyze ----

struct AnalysisFlags {
  double omega_e = 0.5;
  double omega_s = 0.5;
  double threshold = lmo::kDefaultIndependenceThreshold;

  lmo::CorrelationWeights weights() const {
    lmo::CorrelationWeights w{omega_e, omega_s};
    try {
      w.check();
    } catch (const lmo::Error& e) {
      throw UsageError(e.what());
    }
    if (threshold < 0.0) throw UsageError("--threshold must be non-negative");
    return w;
  }
};

int cmd_analyze(const std::string& file, const AnalysisFlags& flags, bool as_json) {
  const auto weights = flags.weights();
  const lmo::AnyDensity doc = load(file);
  const lmo::LabeledDensity density = lmo::as_labeled(doc);
  const lmo::CorrelationReport r = lmo::analyze(density, weights, flags.threshold);
  const lmo::ComplexityProfile prof = profile_of(doc);
  const auto card = lmo::cardinality_distribution(density);
  const auto existence = lmo::existence_distribution(density);

  if (as_json) {
    ojson rep;
    rep["command"] = "analyze";
    rep["kind"] = lmo::kind_name(doc);
    rep["label_space"] = labels_json(r.label_space);
    rep["state_dim"] = density.state_dim();
    rep["omega_e"] = r.weights.existence;
    rep["omega_s"] = r.weights.state;
    rep["threshold"] = r.threshold;
    rep["alpha"] = matrix_json(r.alpha);
    rep["beta"] = matrix_json(r.beta);
    rep["gamma"] = matrix_json(r.gamma);
    ojson part = ojson::array();
    for (const auto& b : r.partition) part.push_back(labels_json(b));
    rep["partition"] = std::move(part);
    ojson ex = ojson::array();
    for (const auto& [labels, p] : existence.probabilities) {
      ojson e;
      e["labels"] = labels_json(labels);
      e["probability"] = p;
      ex.push_back(std::move(e));
    }
    rep["existence"] = std::move(ex);
    rep["cardinality"] = card;
    rep["profile"] = profile_json(prof);
    auto pairs = [](const auto& v) {
      ojson a = ojson::array();
      for (const auto& [x, y] : v) a.push_back(ojson::array({x.id(), y.id()}));
      return a;
    };
    rep["degenerate_existence"] = pairs(r.degenerate_existence);
    rep["degenerate_state"] = pairs(r.degenerate_state);
    if (r.vector_state_rule) rep["vector_state_rule"] = "max-abs-normalized-cross-covariance";
    ojson envelope;
    envelope["report"] = std::move(rep);
    std::cout << envelope.dump(2) << "\n";
    return kOk;
  }

  const auto& space = r.label_space;
  std::cout << fmt::format("density      {} ({}), state_dim {}\n", file, lmo::kind_name(doc),
                           density.state_dim());
  std::cout << fmt::format("weights      omega_E = {}, omega_S = {}, threshold = {}\n",
                           r.weights.existence, r.weights.state, r.threshold);
  if (r.vector_state_rule) {
    std::cout << "state rho    largest |entry| of the normalized cross-covariance (state_dim > 1)\n";
  }
  std::cout << "\nexistence distribution\n";
  for (const auto& [labels, p] : existence.probabilities) {
    std::cout << fmt::format("  {:<20} {:.6g}\n", labels.to_string(), p);
  }
  std::cout << "\ncardinality distribution\n";
  for (std::size_t n = 0; n < card.size(); ++n) std::cout << fmt::format("  {:<4} {:.6g}\n", n, card[n]);
  std::cout << "\npairwise correlation\n";
  std::cout << fmt::format("  {:<8} {:<8} {:>10} {:>10} {:>10}\n", "label", "label", "alpha", "beta",
                           "gamma");
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      std::cout << fmt::format("  {:<8} {:<8} {:>10.6f} {:>10.6f} {:>10.6f}\n", space[i].id(),
                               space[j].id(), r.alpha(ii, jj), r.beta(ii, jj), r.gamma(ii, jj));
    }
  }
  if (space.size() < 2) std::cout << "  (no label pairs)\n";
  for (const auto& [a, b] : r.degenerate_existence) {
    std::cout << fmt::format("  note: existence of ({}, {}) is degenerate; alpha set to 0\n", a.id(), b.id());
  }
  for (const auto& [a, b] : r.degenerate_state) {
    std::cout << fmt::format("  note: ({}, {}) never coexist or have zero variance; beta set to 0\n",
                             a.id(), b.id());
  }
  std::cout << "\npartition\n";
  for (const auto& b : r.partition) std::cout << "  " << b.to_string() << "\n";
  std::cout << "\ncomplexity\n" << profile_text(prof);
  return kOk;
}

// ---- approximate ----

struct Approximation {
  lmo::AnyDensity density;
  std::optional<lmo::Factorization<lmo::DeltaGlmbDensity>> product_blocks;
  lmo::ComplexityProfile profile;
};

ojson to_json(const lmo::Factorization<lmo::DeltaGlmbDensity>& f) {
  ojson o;
  o["kind"] = "factorized";
  o["label_space"] = labels_json(f.label_space());
  o["state_dim"] = f.blocks.front().density.state_dim;
  ojson arr = ojson::array();
  for (const auto& b : f.blocks) {
    ojson e;
    e["labels"] = labels_json(b.labels);
    e["density"] = lmo::to_json(b.density);
    arr.push_back(std::move(e));
  }
  o["blocks"] = std::move(arr);
  return o;
}

lmo::DeltaGlmbDensity as_dglmb(const lmo::AnyDensity& doc) {
  if (const auto* d = std::get_if<lmo::DeltaGlmbDensity>(&doc)) return *d;
  return lmo::dglmb_approximate(lmo::as_labeled(doc));
}

Approximation approximate(const lmo::AnyDensity& doc, const std::string& method,
                          const AnalysisFlags& flags) {
  const auto weights = flags.weights();
  const lmo::LabeledDensity src = lmo::as_labeled(doc);
  const bool source_is_dglmb = std::holds_alternative<lmo::DeltaGlmbDensity>(doc);
  Approximation out{lmo::LabeledDensity{}, std::nullopt, {}};

  if (method == "dglmb") {
    auto d = as_dglmb(doc);
    out.profile = lmo::profile(d);
    out.profile.correlation_loss = !source_is_dglmb && lmo::product_form_loses_correlation(src);
    out.density = std::move(d);
  } else if (method == "mdglmb") {
    const auto d = as_dglmb(doc);
    auto m = lmo::mdglmb_construct(d);
    out.profile = lmo::profile(m);
    out.profile.correlation_loss = (!source_is_dglmb && lmo::product_form_loses_correlation(src)) ||
                                   lmo::grouping_loses_correlation(d);
    out.density = std::move(m);
  } else if (method == "ca") {
    auto f = lmo::ca_factorize(src, weights, flags.threshold);
    out.profile = lmo::profile(f);
    out.profile.correlation_loss =
        lmo::partition_loses_correlation(lmo::analyze(src, weights, flags.threshold));
    out.density = std::move(f);
  } else if (method == "ca-of-dglmb") {
    const auto d = as_dglmb(doc);
    auto f = lmo::ca_factorize(d, weights, flags.threshold);
    out.profile = lmo::profile(f);
    out.profile.correlation_loss =
        (!source_is_dglmb && lmo::product_form_loses_correlation(src)) ||
        lmo::partition_loses_correlation(lmo::analyze(lmo::to_labeled(d), weights, flags.threshold));
    out.density = lmo::to_factorized(f);
    out.product_blocks = std::move(f);
  } else {
    throw UsageError("unknown method '" + method + "' (expected dglmb, ca, ca-of-dglmb or mdglmb)");
  }
  return out;
}

int cmd_approximate(const std::string& file, const std::string& method, const AnalysisFlags& flags,
                    bool compact_output, const std::string& output, bool as_json) {
  if (method != "dglmb" && method != "mdglmb" && method != "ca" && method != "ca-of-dglmb") {
    throw UsageError("unknown method '" + method + "' (expected dglmb, ca, ca-of-dglmb or mdglmb)");
  }
  const lmo::AnyDensity doc = load(file);
  Approximation a = approximate(doc, method, flags);

  ojson density_json;
  if (a.product_blocks && !compact_output) {
    density_json = to_json(*a.product_blocks);
  } else {
    density_json = lmo::to_json(compact_output ? compact(a.density) : a.density);
  }

  if (as_json) {
    ojson rep;
    rep["command"] = "approximate";
    rep["method"] = method;
    rep["profile"] = profile_json(a.profile);
    ojson envelope;
    envelope["report"] = std::move(rep);
    envelope["density"] = std::move(density_json);
    emit(envelope.dump(2) + "\n", output);
    return kOk;
  }
  emit(density_json.dump(2) + "\n", output);
  std::cerr << fmt::format("approximation {} of {}\n", method, file) << profile_text(a.profile);
  return kOk;
}

// ---- marginal ----

lmo::LabelSet parse_labels(const std::vector<std::string>& raw) {
  std::vector<lmo::Label> labels;
  for (const auto& r : raw) labels.emplace_back(r);
  try {
    return lmo::LabelSet::from_unique(std::move(labels));
  } catch (const lmo::Error& e) {
    throw UsageError(e.what());
  }
}

int cmd_marginal(const std::string& file, const std::vector<std::string>& raw_labels,
                 bool compact_output, const std::string& output, bool as_json) {
  const lmo::AnyDensity doc = load(file);
  const lmo::LabelSet sub = parse_labels(raw_labels);
  const lmo::LabelSet space = lmo::as_labeled(doc).label_space();
  if (sub.empty()) throw UsageError("--labels needs at least one label");
  for (const auto& l : sub) {
    if (!space.contains(l)) throw UsageError("label '" + l.id() + "' is not in " + space.to_string());
  }

  lmo::AnyDensity result = std::visit(
      [&](const auto& d) -> lmo::AnyDensity {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, lmo::LabeledDensity>) {
          return lmo::lmo_set_marginal(d, sub);
        } else if constexpr (std::is_same_v<T, lmo::DeltaGlmbDensity>) {
          return lmo::dglmb_set_marginal(d, sub);
        } else if constexpr (std::is_same_v<T, lmo::MDeltaGlmbDensity>) {
          return lmo::mdglmb_set_marginal(d, sub);
        } else if constexpr (std::is_same_v<T, lmo::GlmbDensity>) {
          return lmo::glmb_set_marginal(d, sub);
        } else {
          return lmo::lmo_set_marginal(lmo::to_labeled(d), sub);
        }
      },
      doc);
  if (compact_output) result = compact(result);

  ojson density_json = lmo::to_json(result);
  if (as_json) {
    ojson rep;
    rep["command"] = "marginal";
    rep["labels"] = labels_json(sub);
    rep["profile"] = profile_json(profile_of(result));
    ojson envelope;
    envelope["report"] = std::move(rep);
    envelope["density"] = std::move(density_json);
    emit(envelope.dump(2) + "\n", output);
    return kOk;
  }
  emit(density_json.dump(2) + "\n", output);
  return kOk;
}

// ---- kld ----

bool needs_sampling(const lmo::LabeledDensity& f, const lmo::LabeledDensity& g) {
  for (const auto& [labels, hf] : f.hypotheses()) {
    const lmo::Hypothesis* hg = g.find(labels);
    if (labels.empty() || hg == nullptr) continue;
    if (hf.conditional->size() > 1 || hg->conditional->size() > 1) return true;
    const auto& cov = hg->conditional->components.front().block.cov;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= 1e-12) return true;
  }
  return false;
}

int cmd_kld(const std::string& file_f, const std::string& file_g, std::optional<std::uint64_t> seed,
            std::size_t samples, const std::string& oracle, bool as_json) {
  if (oracle != "closed" && oracle != "mc" && oracle != "grid") {
    throw UsageError("unknown oracle '" + oracle + "' (expected closed, mc or grid)");
  }
  const lmo::LabeledDensity f = lmo::as_labeled(load(file_f));
  const lmo::LabeledDensity g = lmo::as_labeled(load(file_g));
  if (f.label_space() != g.label_space() || f.state_dim() != g.state_dim()) {
    throw InvalidInput("densities differ in label space or state_dim: " + f.label_space().to_string() +
                       " (d=" + std::to_string(f.state_dim()) + ") vs " + g.label_space().to_string() +
                       " (d=" + std::to_string(g.state_dim()) + ")");
  }

  lmo::KldEstimate est;
  if (oracle == "grid") {
    est = lmo::grid_kld(f, g);
  } else {
    const bool randomized = oracle == "mc" || needs_sampling(f, g);
    if (randomized && !seed) throw UsageError("this estimate is sampled; pass --seed");
    lmo::KldConfig config;
    config.samples = samples;
    config.seed = seed.value_or(0);
    config.force_monte_carlo = oracle == "mc";
    est = lmo::kld(f, g, config);
  }

  if (as_json) {
    ojson rep;
    rep["command"] = "kld";
    if (std::isinf(est.value)) {
      rep["value"] = "inf";
    } else {
      rep["value"] = est.value;
    }
    rep["method"] = lmo::to_string(est.method);
    rep["std_error"] = est.std_error;
    rep["samples"] = est.samples;
    rep["seed"] = est.seed;
    ojson envelope;
    envelope["report"] = std::move(rep);
    std::cout << envelope.dump(2) << "\n";
    return kOk;
  }
  std::cout << fmt::format("D_KL({} || {})\n", file_f, file_g);
  std::cout << fmt::format("  value      {:.10g}\n", est.value);
  std::cout << fmt::format("  method     {}\n", lmo::to_string(est.method));
  std::cout << fmt::format("  std_error  {:.3g}\n", est.std_error);
  if (est.method == lmo::KldMethod::kMonteCarlo) {
    std::cout << fmt::format("  samples    {} per hypothesis\n", est.samples);
    std::cout << fmt::format("  seed       {}\n", est.seed);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Labeled multi-object density analysis"};
  app.require_subcommand(1);

  AnalysisFlags flags;
  auto add_analysis_flags = [&](CLI::App* cmd) {
    cmd->add_option("--omega-e", flags.omega_e, "Weight of existence correlation")->capture_default_str();
    cmd->add_option("--omega-s", flags.omega_s, "Weight of state correlation")->capture_default_str();
    cmd->add_option("--threshold", flags.threshold, "Independence threshold on gamma")
        ->capture_default_str();
  };
  bool as_json = false;
  bool compact_output = false;
  std::string output;

  std::string file;
  auto* analyze = app.add_subcommand("analyze", "Correlation analysis and independence partition");
  analyze->add_option("file", file, "Density document")->required();
  add_analysis_flags(analyze);
  analyze->add_flag("--json", as_json, "Machine-readable report");

  std::string method;
  auto* approx = app.add_subcommand("approximate", "Approximate a density");
  approx->add_option("file", file, "Density document")->required();
  approx->add_option("--method", method, "dglmb | ca | ca-of-dglmb | mdglmb")->required();
  add_analysis_flags(approx);
  approx->add_flag("--compact", compact_output, "Moment-match every mixture in the output");
  approx->add_option("--output,-o", output, "Write the document here instead of stdout");
  approx->add_flag("--json", as_json, "Wrap the document in a report envelope");

  std::vector<std::string> labels;
  auto* marginal = app.add_subcommand("marginal", "Set marginal onto a label subspace");
  marginal->add_option("file", file, "Density document")->required();
  marginal->add_option("--labels", labels, "Labels to keep")->required()->delimiter(',');
  marginal->add_flag("--compact", compact_output, "Moment-match every mixture in the output");
  marginal->add_option("--output,-o", output, "Write the document here instead of stdout");
  marginal->add_flag("--json", as_json, "Wrap the document in a report envelope");

  std::string file_g;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 200'000;
  std::string oracle = "closed";
  auto* kld = app.add_subcommand("kld", "Kullback-Leibler divergence D(f || g)");
  kld->add_option("f", file, "Density document f")->required();
  kld->add_option("g", file_g, "Density document g")->required();
  kld->add_option("--seed", seed, "Seed for sampled estimates");
  kld->add_option("--samples", samples, "Monte-Carlo draws per hypothesis")->capture_default_str();
  kld->add_option("--oracle", oracle, "closed | mc | grid")->capture_default_str();
  kld->add_flag("--json", as_json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(file, flags, as_json);
    if (*approx) return cmd_approximate(file, method, flags, compact_output, output, as_json);
    if (*marginal) return cmd_marginal(file, labels, compact_output, output, as_json);
    if (*kld) return cmd_kld(file, file_g, seed, samples, oracle, as_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    std::cerr << e.what() << "\n";
    return kInvalidInput;
  } catch (const lmo::Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case lmo::ErrorKind::kSingularCovariance:
      case lmo::ErrorKind::kNumerical:
        return kNumericalFailure;
      default:
        return kInvalidInput;
    }
  }
  return kUsage;
}
