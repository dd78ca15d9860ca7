#include "lmo/labels.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>

#include "lmo/error.hpp"

namespace lmo {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnknownLabel: return "unknown label";
    case ErrorKind::kDuplicateLabel: return "duplicate label";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kSingularCovariance: return "singular covariance";
    case ErrorKind::kCapacityExceeded: return "capacity exceeded";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kNumerical: return "numerical failure";
  }
  return "error";
}

std::ostream& operator<<(std::ostream& os, const Label& label) { return os << label.id(); }

LabelSet::LabelSet(std::initializer_list<Label> labels) : LabelSet(std::vector<Label>(labels)) {}

LabelSet::LabelSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

LabelSet LabelSet::from_unique(std::vector<Label> labels) {
  const std::size_t n = labels.size();
  LabelSet set(std::move(labels));
  if (set.size() != n) {
    throw Error(ErrorKind::kDuplicateLabel, "label listed more than once");
  }
  return set;
}

bool LabelSet::contains(const Label& label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::size_t LabelSet::index_of(const Label& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return labels_.size();
  return static_cast<std::size_t>(it - labels_.begin());
}

bool LabelSet::is_subset_of(const LabelSet& other) const {
  return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(), labels_.end());
}

LabelSet LabelSet::union_with(const LabelSet& other) const {
  LabelSet out;
  std::set_union(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
                 std::back_inserter(out.labels_));
  return out;
}

LabelSet LabelSet::intersect(const LabelSet& other) const {
  LabelSet out;
  std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(),
                        other.labels_.end(), std::back_inserter(out.labels_));
  return out;
}

LabelSet LabelSet::minus(const LabelSet& other) const {
  LabelSet out;
  std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
                      std::back_inserter(out.labels_));
  return out;
}

std::string LabelSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) s += ',';
    s += labels_[i].id();
  }
  return s + "}";
}

std::ostream& operator<<(std::ostream& os, const LabelSet& set) { return os << set.to_string(); }

std::vector<LabelSet> all_subsets(const LabelSet& space) {
  const std::size_t n = space.size();
  if (n >= 63) throw Error(ErrorKind::kCapacityExceeded, "label space too large to enumerate");
  std::vector<LabelSet> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Label> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) members.push_back(space[i]);
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

}  // namespace lmo
