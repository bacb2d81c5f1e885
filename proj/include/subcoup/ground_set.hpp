#pragma once

#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "subcoup/bits.hpp"
#include "subcoup/errors.hpp"

namespace subcoup {

// Ordered finite ground set. Element i of the set is labels()[i] and
// corresponds to bit i of a Mask. Dense tables over all subsets cap the
// size at 24 elements.
class GroundSet {
 public:
  static constexpr int kMaxElements = 24;

  GroundSet() = default;

  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (static_cast<int>(labels_.size()) > kMaxElements)
      throw capacity_error("ground set exceeds the dense-table cap of 24 elements");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l).second)
        throw std::domain_error("duplicate ground-set label: " + l);
  }

  // Elements "1", "2", ..., "n".
  static GroundSet numbered(int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return GroundSet(std::move(labels));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return full_mask(size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }

  int index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (labels_[i] == label) return i;
    return -1;
  }

  bool contains_mask(Mask x) const { return x <= full(); }

  void require_mask(Mask x) const {
    if (!contains_mask(x)) throw std::domain_error("subset mask out of range for ground set");
  }

  std::vector<std::string> mask_labels(Mask x) const {
    require_mask(x);
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i)
      if (has_bit(x, i)) out.push_back(labels_[i]);
    return out;
  }

  Mask mask_of(const std::vector<std::string>& labels) const {
    Mask m = 0;
    for (const auto& l : labels) {
      int i = index_of(l);
      if (i < 0) throw std::domain_error("label not in ground set: " + l);
      m |= bit(i);
    }
    return m;
  }

  bool operator==(const GroundSet& other) const { return labels_ == other.labels_; }
  bool operator!=(const GroundSet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> labels_;
};

// Partition of a ground set into q classes, classes may be empty.
class Partition {
 public:
  Partition(GroundSet ground, std::vector<int> class_of, int num_classes)
      : ground_(std::move(ground)), class_of_(std::move(class_of)), q_(num_classes) {
    if (static_cast<int>(class_of_.size()) != ground_.size())
      throw std::domain_error("partition must assign a class to every element");
    for (int c : class_of_)
      if (c < 0 || c >= q_) throw std::domain_error("partition class index out of range");
    element_masks_.assign(q_, 0);
    for (int i = 0; i < ground_.size(); ++i) element_masks_[class_of_[i]] |= bit(i);
  }

  static Partition identity(const GroundSet& g) {
    std::vector<int> cls(g.size());
    for (int i = 0; i < g.size(); ++i) cls[i] = i;
    return Partition(g, std::move(cls), g.size());
  }

  static Partition single_class(const GroundSet& g) {
    return Partition(g, std::vector<int>(g.size(), 0), 1);
  }

  // Classes given as element-index lists; they must cover every element once.
  static Partition from_classes(const GroundSet& g, const std::vector<std::vector<int>>& classes) {
    std::vector<int> cls(g.size(), -1);
    for (int c = 0; c < static_cast<int>(classes.size()); ++c)
      for (int e : classes[c]) {
        if (e < 0 || e >= g.size()) throw std::domain_error("partition element index out of range");
        if (cls[e] != -1) throw std::domain_error("partition classes overlap");
        cls[e] = c;
      }
    for (int e = 0; e < g.size(); ++e)
      if (cls[e] == -1) throw std::domain_error("partition classes do not cover the ground set");
    return Partition(g, std::move(cls), static_cast<int>(classes.size()));
  }

  const GroundSet& ground() const { return ground_; }
  int num_classes() const { return q_; }
  int class_of(int element) const { return class_of_.at(element); }
  Mask class_elements(int c) const { return element_masks_.at(c); }

  // Union of the classes selected by a mask over [q].
  Mask union_of_classes(Mask class_mask) const {
    Mask m = 0;
    for (int c = 0; c < q_; ++c)
      if (has_bit(class_mask, c)) m |= element_masks_[c];
    return m;
  }

  GroundSet quotient_ground() const {
    std::vector<std::string> labels;
    labels.reserve(q_);
    for (int c = 1; c <= q_; ++c) labels.push_back("q" + std::to_string(c));
    return GroundSet(std::move(labels));
  }

 private:
  GroundSet ground_;
  std::vector<int> class_of_;
  int q_ = 0;
  std::vector<Mask> element_masks_;
};

}  // namespace subcoup
