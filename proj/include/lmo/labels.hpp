#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace lmo {

/// Discrete object identifier. Ordered lexicographically by id.
class Label {
 public:
  Label() = default;
  explicit Label(std::string id) : id_(std::move(id)) {}
  Label(const char* id) : id_(id) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] const std::string& id() const { return id_; }

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::string id_;
};

std::ostream& operator<<(std::ostream& os, const Label& label);

/// Sorted, duplicate-free set of labels. The sort order is the canonical
/// block order for every stacked state vector.
class LabelSet {
 public:
  using const_iterator = std::vector<Label>::const_iterator;

  LabelSet() = default;
  LabelSet(std::initializer_list<Label> labels);
  explicit LabelSet(std::vector<Label> labels);

  /// Throws kDuplicateLabel when the input repeats a label.
  static LabelSet from_unique(std::vector<Label> labels);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool empty() const { return labels_.empty(); }
  [[nodiscard]] const_iterator begin() const { return labels_.begin(); }
  [[nodiscard]] const_iterator end() const { return labels_.end(); }
  [[nodiscard]] const Label& operator[](std::size_t i) const { return labels_[i]; }
  [[nodiscard]] std::span<const Label> labels() const { return labels_; }

  [[nodiscard]] bool contains(const Label& label) const;
  /// Position of `label` in canonical order, or size() when absent.
  [[nodiscard]] std::size_t index_of(const Label& label) const;
  [[nodiscard]] bool is_subset_of(const LabelSet& other) const;

  [[nodiscard]] LabelSet union_with(const LabelSet& other) const;
  [[nodiscard]] LabelSet intersect(const LabelSet& other) const;
  [[nodiscard]] LabelSet minus(const LabelSet& other) const;

  /// "{a,b,c}"
  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const LabelSet&, const LabelSet&) = default;
  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<Label> labels_;
};

std::ostream& operator<<(std::ostream& os, const LabelSet& set);

/// All 2^n subsets of `space`, ordered by bitmask over the canonical order.
std::vector<LabelSet> all_subsets(const LabelSet& space);

}  // namespace lmo
