#include "lmo/document.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "lmo/error.hpp"

namespace lmo {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

/// Forward iterator over a char buffer that counts consumed newlines.
class LineCountingIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  LineCountingIterator() = default;
  LineCountingIterator(const char* p, int* line) : p_(p), line_(line) {}

  reference operator*() const { return *p_; }
  LineCountingIterator& operator++() {
    if (*p_ == '\n') ++*line_;
    ++p_;
    return *this;
  }
  LineCountingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const LineCountingIterator& o) const { return p_ == o.p_; }

 private:
  const char* p_ = nullptr;
  int* line_ = nullptr;
};

/// Parsed JSON plus the source line of every object member and array element
/// that opens a container, keyed by JSON pointer.
class SourceMap {
 public:
  SourceMap(std::string_view text, std::string_view source) : source_(source) {
    int line = 1;
    struct Frame {
      bool is_array = false;
      std::size_t index = 0;
      std::string key;
      std::string ptr;
    };
    std::vector<Frame> stack;
    auto child_ptr = [&]() -> std::string {
      if (stack.empty()) return "";
      const Frame& top = stack.back();
      return top.ptr + "/" + (top.is_array ? std::to_string(top.index) : escape(top.key));
    };
    json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t event, json& /*parsed*/) {
      switch (event) {
        case json::parse_event_t::key:
          break;
        case json::parse_event_t::object_start:
        case json::parse_event_t::array_start: {
          std::string ptr = child_ptr();
          lines_.emplace(ptr, line);
          stack.push_back({event == json::parse_event_t::array_start, 0, {}, std::move(ptr)});
          break;
        }
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
          stack.pop_back();
          if (!stack.empty() && stack.back().is_array) ++stack.back().index;
          break;
        case json::parse_event_t::value:
          if (!stack.empty() && stack.back().is_array) ++stack.back().index;
          break;
      }
      return true;
    };
    // Keys need the parsed string; the callback only exposes it on the key
    // event, so wrap once more to capture it.
    json::parser_callback_t tracking = [&](int depth, json::parse_event_t event, json& parsed) {
      if (event == json::parse_event_t::key && !stack.empty()) {
        stack.back().key = parsed.get<std::string>();
        lines_.emplace(stack.back().ptr + "/" + escape(stack.back().key), line);
      }
      return cb(depth, event, parsed);
    };
    const LineCountingIterator first(text.data(), &line);
    const LineCountingIterator last(text.data() + text.size(), &line);
    try {
      root_ = json::parse(first, last, tracking, true, false);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::kParse, where(line) + "malformed JSON: " + e.what());
    }
  }

  [[nodiscard]] const json& root() const { return root_; }

  [[nodiscard]] std::string where(int line) const {
    return std::string(source_) + ":" + std::to_string(line) + ": ";
  }

  /// Line of `ptr`, falling back to the nearest enclosing entry.
  [[nodiscard]] int line_of(std::string ptr) const {
    while (true) {
      auto it = lines_.find(ptr);
      if (it != lines_.end()) return it->second;
      if (ptr.empty()) return 1;
      ptr.erase(ptr.rfind('/'));
    }
  }

  [[noreturn]] void fail(const std::string& ptr, const std::string& message) const {
    throw Error(ErrorKind::kParse, where(line_of(ptr)) + message);
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

 private:
  std::string_view source_;
  json root_;
  std::map<std::string, int> lines_;
};

/// Typed accessors over a SourceMap, reporting failures at the right line.
class Reader {
 public:
  explicit Reader(const SourceMap& map) : map_(map) {}

  void expect_object(const json& j, const std::string& ptr) const {
    if (!j.is_object()) map_.fail(ptr, "expected an object");
  }

  void only_fields(const json& j, const std::string& ptr,
                   std::initializer_list<std::string_view> allowed) const {
    expect_object(j, ptr);
    for (const auto& [key, value] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        map_.fail(ptr + "/" + SourceMap::escape(key), "unknown field '" + key + "'");
      }
    }
  }

  const json& field(const json& j, const std::string& ptr, const std::string& key) const {
    auto it = j.find(key);
    if (it == j.end()) map_.fail(ptr, "missing field '" + key + "'");
    return *it;
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) map_.fail(ptr, "expected a number");
    return j.get<double>();
  }

  std::string string(const json& j, const std::string& ptr) const {
    if (!j.is_string()) map_.fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  int positive_int(const json& j, const std::string& ptr) const {
    if (!j.is_number_integer() || j.get<long long>() < 1) {
      map_.fail(ptr, "expected a positive integer");
    }
    return static_cast<int>(j.get<long long>());
  }

  LabelSet labels(const json& j, const std::string& ptr) const {
    if (!j.is_array()) map_.fail(ptr, "expected an array of label strings");
    std::vector<Label> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.emplace_back(string(j[i], ptr + "/" + std::to_string(i)));
    }
    const std::size_t n = out.size();
    LabelSet set(std::move(out));
    if (set.size() != n) map_.fail(ptr, "label listed more than once");
    return set;
  }

  Eigen::VectorXd vector(const json& j, const std::string& ptr) const {
    if (!j.is_array()) map_.fail(ptr, "expected an array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = number(j[i], ptr + "/" + std::to_string(i));
    }
    return v;
  }

  Eigen::MatrixXd matrix(const json& j, const std::string& ptr) const {
    if (!j.is_array()) map_.fail(ptr, "expected a row-major nested array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd m(rows, rows);
    for (std::size_t r = 0; r < j.size(); ++r) {
      const std::string rp = ptr + "/" + std::to_string(r);
      const Eigen::VectorXd row = vector(j[r], rp);
      if (row.size() != rows) map_.fail(rp, "covariance must be square");
      m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
  }

  /// Either {mean, cov} or {mixture: [...]}, plus any `extra` sibling fields.
  GaussianMixtureBlock mixture(const json& j, const std::string& ptr, const LabelSet& labels,
                               int state_dim) const {
    const auto n = static_cast<Eigen::Index>(labels.size()) * state_dim;
    auto block = [&](const json& c, const std::string& cp) {
      GaussianBlock b{labels, state_dim, vector(field(c, cp, "mean"), cp + "/mean"),
                      matrix(field(c, cp, "cov"), cp + "/cov")};
      if (b.mean.size() != n) {
        map_.fail(cp + "/mean", "mean has length " + std::to_string(b.mean.size()) + ", expected " +
                                    std::to_string(n));
      }
      if (b.cov.rows() != n) {
        map_.fail(cp + "/cov", "covariance has size " + std::to_string(b.cov.rows()) +
                                   ", expected " + std::to_string(n));
      }
      return b;
    };
    const bool has_mixture = j.contains("mixture");
    const bool has_single = j.contains("mean") || j.contains("cov");
    if (has_mixture && has_single) map_.fail(ptr, "give either 'mixture' or 'mean'/'cov', not both");
    if (!has_mixture && !has_single) map_.fail(ptr, "missing 'mixture' or 'mean'/'cov'");
    if (has_single) return GaussianMixtureBlock::single(block(j, ptr));

    const std::string mp = ptr + "/mixture";
    const json& arr = j.at("mixture");
    if (!arr.is_array() || arr.empty()) map_.fail(mp, "mixture must be a non-empty array");
    GaussianMixtureBlock mix;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string cp = mp + "/" + std::to_string(i);
      only_fields(arr[i], cp, {"weight", "mean", "cov"});
      const double w = number(field(arr[i], cp, "weight"), cp + "/weight");
      mix.components.push_back({w, block(arr[i], cp)});
    }
    return mix;
  }

  LabelDensities densities(const json& j, const std::string& ptr, const LabelSet& labels,
                           int state_dim) const {
    return densities(j, ptr, labels, labels, state_dim);
  }

  /// Densities may be given for any label in `allowed` and must be given for
  /// every label in `required`.
  LabelDensities densities(const json& j, const std::string& ptr, const LabelSet& allowed,
                           const LabelSet& required, int state_dim) const {
    expect_object(j, ptr);
    LabelDensities out;
    for (const auto& [key, value] : j.items()) {
      const std::string dp = ptr + "/" + SourceMap::escape(key);
      const Label label(key);
      if (!allowed.contains(label)) {
        map_.fail(dp, "density for label '" + key + "' outside " + allowed.to_string());
      }
      only_fields(value, dp, {"mixture", "mean", "cov"});
      out.emplace(label, mixture(value, dp, LabelSet{label}, state_dim));
    }
    for (const auto& label : required) {
      if (!out.contains(label)) map_.fail(ptr, "no density for label '" + label.id() + "'");
    }
    return out;
  }

  void check_within(const LabelSet& labels, const LabelSet& space, const std::string& ptr) const {
    if (!labels.is_subset_of(space)) {
      map_.fail(ptr, labels.to_string() + " is not within the label space " + space.to_string());
    }
  }

  AnyDensity density(const json& j, const std::string& ptr) const {
    expect_object(j, ptr);
    std::string kind = "lmo";
    if (j.contains("kind")) kind = string(j.at("kind"), ptr + "/kind");
    if (kind == "lmo") return lmo(j, ptr);
    if (kind == "dglmb") return dglmb(j, ptr);
    if (kind == "mdglmb") return mdglmb(j, ptr);
    if (kind == "glmb") return glmb(j, ptr);
    if (kind == "factorized") return factorized(j, ptr);
    map_.fail(ptr + "/kind", "unknown density kind '" + kind + "'");
  }

  LabeledDensity lmo(const json& j, const std::string& ptr) const {
    only_fields(j, ptr, {"kind", "label_space", "state_dim", "hypotheses"});
    const LabelSet space = labels(field(j, ptr, "label_space"), ptr + "/label_space");
    const int d = positive_int(field(j, ptr, "state_dim"), ptr + "/state_dim");
    const json& hyps = field(j, ptr, "hypotheses");
    const std::string hp = ptr + "/hypotheses";
    if (!hyps.is_array()) map_.fail(hp, "expected an array");
    std::vector<Hypothesis> out;
    std::set<LabelSet> seen;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      const std::string p = hp + "/" + std::to_string(i);
      const json& h = hyps[i];
      only_fields(h, p, {"labels", "weight", "mixture", "mean", "cov"});
      Hypothesis hyp;
      hyp.labels = labels(field(h, p, "labels"), p + "/labels");
      check_within(hyp.labels, space, p + "/labels");
      if (!seen.insert(hyp.labels).second) map_.fail(p, "label set " + hyp.labels.to_string() + " listed twice");
      hyp.weight = number(field(h, p, "weight"), p + "/weight");
      if (hyp.labels.empty()) {
        if (h.contains("mixture") || h.contains("mean") || h.contains("cov")) {
          map_.fail(p, "the empty hypothesis takes no state density");
        }
      } else {
        hyp.conditional = mixture(h, p, hyp.labels, d);
      }
      out.push_back(std::move(hyp));
    }
    try {
      return {space, d, std::move(out)};
    } catch (const Error& e) {
      map_.fail(ptr, e.what());
    }
  }

  template <typename H>
  std::vector<H> product_hypotheses(const json& j, const std::string& ptr, const LabelSet& space,
                                    int d, bool with_xi) const {
    const json& hyps = field(j, ptr, "hypotheses");
    const std::string hp = ptr + "/hypotheses";
    if (!hyps.is_array()) map_.fail(hp, "expected an array");
    std::vector<H> out;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      const std::string p = hp + "/" + std::to_string(i);
      const json& h = hyps[i];
      if (with_xi) {
        only_fields(h, p, {"labels", "xi", "weight", "densities"});
      } else {
        only_fields(h, p, {"labels", "weight", "densities"});
      }
      H hyp;
      hyp.labels = labels(field(h, p, "labels"), p + "/labels");
      check_within(hyp.labels, space, p + "/labels");
      hyp.weight = number(field(h, p, "weight"), p + "/weight");
      if constexpr (requires { hyp.xi; }) hyp.xi = string(field(h, p, "xi"), p + "/xi");
      if (h.contains("densities")) {
        hyp.densities = densities(h.at("densities"), p + "/densities", hyp.labels, d);
      } else if (!hyp.labels.empty()) {
        map_.fail(p, "missing field 'densities'");
      }
      out.push_back(std::move(hyp));
    }
    return out;
  }

  DeltaGlmbDensity dglmb(const json& j, const std::string& ptr) const {
    only_fields(j, ptr, {"kind", "label_space", "state_dim", "hypotheses"});
    DeltaGlmbDensity out;
    out.label_space = labels(field(j, ptr, "label_space"), ptr + "/label_space");
    out.state_dim = positive_int(field(j, ptr, "state_dim"), ptr + "/state_dim");
    out.hypotheses = product_hypotheses<DeltaGlmbHypothesis>(j, ptr, out.label_space,
                                                             out.state_dim, true);
    return out;
  }

  MDeltaGlmbDensity mdglmb(const json& j, const std::string& ptr) const {
    only_fields(j, ptr, {"kind", "label_space", "state_dim", "hypotheses"});
    MDeltaGlmbDensity out;
    out.label_space = labels(field(j, ptr, "label_space"), ptr + "/label_space");
    out.state_dim = positive_int(field(j, ptr, "state_dim"), ptr + "/state_dim");
    out.hypotheses = product_hypotheses<MDeltaGlmbHypothesis>(j, ptr, out.label_space,
                                                              out.state_dim, false);
    return out;
  }

  GlmbDensity glmb(const json& j, const std::string& ptr) const {
    only_fields(j, ptr, {"kind", "label_space", "state_dim", "components"});
    GlmbDensity out;
    out.label_space = labels(field(j, ptr, "label_space"), ptr + "/label_space");
    out.state_dim = positive_int(field(j, ptr, "state_dim"), ptr + "/state_dim");
    const json& comps = field(j, ptr, "components");
    const std::string cp = ptr + "/components";
    if (!comps.is_array()) map_.fail(cp, "expected an array");
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::string p = cp + "/" + std::to_string(c);
      only_fields(comps[c], p, {"weights", "densities"});
      GlmbComponent comp;
      const json& ws = field(comps[c], p, "weights");
      if (!ws.is_array()) map_.fail(p + "/weights", "expected an array");
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::string wp = p + "/weights/" + std::to_string(i);
        only_fields(ws[i], wp, {"labels", "weight"});
        const LabelSet ls = labels(field(ws[i], wp, "labels"), wp + "/labels");
        check_within(ls, out.label_space, wp + "/labels");
        if (comp.weights.contains(ls)) map_.fail(wp, "label set listed twice");
        comp.weights[ls] = number(field(ws[i], wp, "weight"), wp + "/weight");
      }
      LabelSet used;
      for (const auto& [ls, w] : comp.weights) {
        if (w > 0.0) used = used.union_with(ls);
      }
      comp.densities = densities(field(comps[c], p, "densities"), p + "/densities",
                                 out.label_space, used, out.state_dim);
      out.components.push_back(std::move(comp));
    }
    return out;
  }

  FactorizedDensity factorized(const json& j, const std::string& ptr) const {
    only_fields(j, ptr, {"kind", "label_space", "state_dim", "blocks"});
    const LabelSet space = labels(field(j, ptr, "label_space"), ptr + "/label_space");
    const int d = positive_int(field(j, ptr, "state_dim"), ptr + "/state_dim");
    const json& blocks = field(j, ptr, "blocks");
    const std::string bp = ptr + "/blocks";
    if (!blocks.is_array() || blocks.empty()) map_.fail(bp, "expected a non-empty array");
    FactorizedDensity out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::string p = bp + "/" + std::to_string(b);
      only_fields(blocks[b], p, {"labels", "density"});
      const LabelSet ls = labels(field(blocks[b], p, "labels"), p + "/labels");
      check_within(ls, space, p + "/labels");
      const std::string dp = p + "/density";
      const json& dj = field(blocks[b], p, "density");
      expect_object(dj, dp);
      const std::string kind = dj.contains("kind") ? string(dj.at("kind"), dp + "/kind") : "lmo";
      LabeledDensity block;
      if (kind == "lmo") {
        block = lmo(dj, dp);
      } else if (kind == "dglmb") {
        const DeltaGlmbDensity product_form = dglmb(dj, dp);
        for (const auto& v : validate(product_form)) map_.fail(dp, v);
        block = to_labeled(product_form);
      } else {
        map_.fail(dp + "/kind", "factor blocks must be lmo or dglmb densities");
      }
      if (block.label_space() != ls) map_.fail(dp, "block density label space differs from block labels");
      if (block.state_dim() != d) map_.fail(dp, "block state_dim differs from the document");
      out.blocks.push_back({ls, std::move(block)});
    }
    if (out.label_space() != space) map_.fail(bp, "blocks do not partition the label space");
    std::size_t total = 0;
    for (const auto& b : out.blocks) total += b.labels.size();
    if (total != space.size()) map_.fail(bp, "blocks overlap");
    return out;
  }

 private:
  const SourceMap& map_;
};

ojson labels_json(const LabelSet& labels) {
  ojson a = ojson::array();
  for (const auto& l : labels) a.push_back(l.id());
  return a;
}

ojson vector_json(const Eigen::VectorXd& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ojson matrix_json(const Eigen::MatrixXd& m) {
  ojson a = ojson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r).transpose()));
  return a;
}

void put_mixture(ojson& o, const GaussianMixtureBlock& mix) {
  if (mix.size() == 1) {
    o["mean"] = vector_json(mix.components.front().block.mean);
    o["cov"] = matrix_json(mix.components.front().block.cov);
    return;
  }
  ojson comps = ojson::array();
  for (const auto& c : mix.components) {
    ojson e;
    e["weight"] = c.weight;
    e["mean"] = vector_json(c.block.mean);
    e["cov"] = matrix_json(c.block.cov);
    comps.push_back(std::move(e));
  }
  o["mixture"] = std::move(comps);
}

ojson densities_json(const LabelDensities& densities) {
  ojson o = ojson::object();
  for (const auto& [label, mix] : densities) {
    ojson e = ojson::object();
    put_mixture(e, mix);
    o[label.id()] = std::move(e);
  }
  return o;
}

bool by_size_then_labels(const LabelSet& a, const LabelSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

ojson header(const char* kind, const LabelSet& space, int state_dim) {
  ojson o;
  o["kind"] = kind;
  o["label_space"] = labels_json(space);
  o["state_dim"] = state_dim;
  return o;
}

}  // namespace

const char* kind_name(const AnyDensity& density) {
  static constexpr const char* names[] = {"lmo", "dglmb", "mdglmb", "glmb", "factorized"};
  return names[density.index()];
}

AnyDensity parse_document(std::string_view text, std::string_view source) {
  const SourceMap map(text, source);
  const Reader reader(map);
  const json& root = map.root();
  reader.expect_object(root, "");
  if (root.contains("density") && root.contains("report")) {
    reader.only_fields(root, "", {"report", "density"});
    return reader.density(root.at("density"), "/density");
  }
  return reader.density(root, "");
}

AnyDensity read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path.string());
}

nlohmann::ordered_json to_json(const LabeledDensity& density) {
  ojson o = header("lmo", density.label_space(), density.state_dim());
  std::vector<const Hypothesis*> hyps;
  for (const auto& [labels, h] : density.hypotheses()) hyps.push_back(&h);
  std::stable_sort(hyps.begin(), hyps.end(), [](const Hypothesis* a, const Hypothesis* b) {
    return by_size_then_labels(a->labels, b->labels);
  });
  ojson arr = ojson::array();
  for (const Hypothesis* h : hyps) {
    ojson e;
    e["labels"] = labels_json(h->labels);
    e["weight"] = h->weight;
    if (h->conditional) put_mixture(e, *h->conditional);
    arr.push_back(std::move(e));
  }
  o["hypotheses"] = std::move(arr);
  return o;
}

nlohmann::ordered_json to_json(const DeltaGlmbDensity& density) {
  ojson o = header("dglmb", density.label_space, density.state_dim);
  ojson arr = ojson::array();
  for (const auto& h : density.hypotheses) {
    ojson e;
    e["labels"] = labels_json(h.labels);
    e["xi"] = h.xi;
    e["weight"] = h.weight;
    e["densities"] = densities_json(h.densities);
    arr.push_back(std::move(e));
  }
  o["hypotheses"] = std::move(arr);
  return o;
}

nlohmann::ordered_json to_json(const MDeltaGlmbDensity& density) {
  ojson o = header("mdglmb", density.label_space, density.state_dim);
  ojson arr = ojson::array();
  for (const auto& h : density.hypotheses) {
    ojson e;
    e["labels"] = labels_json(h.labels);
    e["weight"] = h.weight;
    e["densities"] = densities_json(h.densities);
    arr.push_back(std::move(e));
  }
  o["hypotheses"] = std::move(arr);
  return o;
}

nlohmann::ordered_json to_json(const GlmbDensity& density) {
  ojson o = header("glmb", density.label_space, density.state_dim);
  ojson arr = ojson::array();
  for (const auto& c : density.components) {
    ojson ws = ojson::array();
    for (const auto& [labels, w] : c.weights) {
      ojson e;
      e["labels"] = labels_json(labels);
      e["weight"] = w;
      ws.push_back(std::move(e));
    }
    ojson e;
    e["weights"] = std::move(ws);
    e["densities"] = densities_json(c.densities);
    arr.push_back(std::move(e));
  }
  o["components"] = std::move(arr);
  return o;
}

nlohmann::ordered_json to_json(const FactorizedDensity& density) {
  const int d = density.blocks.empty() ? 1 : density.blocks.front().density.state_dim();
  ojson o = header("factorized", density.label_space(), d);
  ojson arr = ojson::array();
  for (const auto& b : density.blocks) {
    ojson e;
    e["labels"] = labels_json(b.labels);
    e["density"] = to_json(b.density);
    arr.push_back(std::move(e));
  }
  o["blocks"] = std::move(arr);
  return o;
}

nlohmann::ordered_json to_json(const AnyDensity& density) {
  return std::visit([](const auto& d) { return to_json(d); }, density);
}

std::string dump_document(const AnyDensity& density) { return to_json(density).dump(2) + "\n"; }

LabeledDensity as_labeled(const AnyDensity& density) {
  return std::visit(
      [](const auto& d) -> LabeledDensity {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, LabeledDensity>) {
          return d;
        } else {
          return to_labeled(d);
        }
      },
      density);
}

std::vector<std::string> validate(const AnyDensity& density) {
  return std::visit([](const auto& d) { return validate(d); }, density);
}

}  // namespace lmo
