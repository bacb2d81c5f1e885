#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "subcoup/rational.hpp"

namespace subcoup {

// Finite union of half-open intervals [lo, hi) with exact rational endpoints,
// kept sorted, disjoint and merged (no touching pieces). Immutable value type.
class RationalIntervalSet {
 public:
  using Interval = std::pair<Rat, Rat>;

  RationalIntervalSet() = default;

  static RationalIntervalSet interval(Rat lo, Rat hi) {
    RationalIntervalSet s;
    if (lo < hi) s.intervals_.emplace_back(std::move(lo), std::move(hi));
    return s;
  }

  static RationalIntervalSet from_intervals(std::vector<Interval> pieces) {
    std::vector<Interval> kept;
    for (auto& p : pieces)
      if (p.first < p.second) kept.push_back(std::move(p));
    std::sort(kept.begin(), kept.end(),
              [](const Interval& a, const Interval& b) { return a.first < b.first; });
    RationalIntervalSet s;
    for (auto& p : kept) {
      if (!s.intervals_.empty() && p.first <= s.intervals_.back().second) {
        if (p.second > s.intervals_.back().second)
          s.intervals_.back().second = std::move(p.second);
      } else {
        s.intervals_.push_back(std::move(p));
      }
    }
    return s;
  }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

  Rat length() const {
    Rat total(0);
    for (const auto& [lo, hi] : intervals_) total += hi - lo;
    return total;
  }

  RationalIntervalSet unite(const RationalIntervalSet& other) const {
    std::vector<Interval> all = intervals_;
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return from_intervals(std::move(all));
  }

  RationalIntervalSet intersect(const RationalIntervalSet& other) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < intervals_.size() && j < other.intervals_.size()) {
      const Rat lo = std::max(intervals_[i].first, other.intervals_[j].first);
      const Rat hi = std::min(intervals_[i].second, other.intervals_[j].second);
      if (lo < hi) out.emplace_back(lo, hi);
      if (intervals_[i].second < other.intervals_[j].second)
        ++i;
      else
        ++j;
    }
    return from_intervals(std::move(out));
  }

  RationalIntervalSet subtract(const RationalIntervalSet& other) const {
    std::vector<Interval> out;
    std::size_t j = 0;
    for (const auto& [lo, hi] : intervals_) {
      Rat cur = lo;
      while (j < other.intervals_.size() && other.intervals_[j].second <= cur) ++j;
      std::size_t k = j;
      while (k < other.intervals_.size() && other.intervals_[k].first < hi) {
        if (cur < other.intervals_[k].first) out.emplace_back(cur, other.intervals_[k].first);
        if (other.intervals_[k].second > cur) cur = other.intervals_[k].second;
        ++k;
      }
      if (cur < hi) out.emplace_back(cur, hi);
    }
    return from_intervals(std::move(out));
  }

  RationalIntervalSet complement_within(const Rat& lo, const Rat& hi) const {
    return interval(lo, hi).subtract(*this);
  }

  RationalIntervalSet shift(const Rat& delta) const {
    RationalIntervalSet s;
    s.intervals_.reserve(intervals_.size());
    for (const auto& [lo, hi] : intervals_) s.intervals_.emplace_back(lo + delta, hi + delta);
    return s;
  }

  // Leftmost measurable subset of the given total length.
  RationalIntervalSet leftmost(const Rat& len) const {
    if (len < 0) throw std::domain_error("leftmost length must be nonnegative");
    RationalIntervalSet s;
    Rat need = len;
    for (const auto& [lo, hi] : intervals_) {
      if (need == 0) break;
      const Rat piece = hi - lo;
      if (piece <= need) {
        s.intervals_.emplace_back(lo, hi);
        need -= piece;
      } else {
        s.intervals_.emplace_back(lo, lo + need);
        need = 0;
      }
    }
    if (need > 0) throw std::domain_error("interval set shorter than the requested length");
    return s;
  }

  bool contains(const RationalIntervalSet& other) const {
    return other.subtract(*this).empty();
  }

  bool disjoint_with(const RationalIntervalSet& other) const {
    return intersect(other).empty();
  }

  bool operator==(const RationalIntervalSet& other) const {
    return intervals_ == other.intervals_;
  }
  bool operator!=(const RationalIntervalSet& other) const { return !(*this == other); }

 private:
  std::vector<Interval> intervals_;
};

inline mpz_class rat_floor(const Rat& v) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return fl;
}

// Image under the fractional-part map, normalized within [0,1). Idempotent on
// subsets of [0,1).
inline RationalIntervalSet fractional_image(const RationalIntervalSet& a) {
  std::vector<RationalIntervalSet::Interval> pieces;
  for (const auto& [lo, hi] : a.intervals()) {
    Rat cur = lo;
    while (cur < hi) {
      const Rat block = Rat(rat_floor(cur));
      const Rat boundary = block + 1;
      const Rat top = hi < boundary ? hi : boundary;
      pieces.emplace_back(cur - block, top - block);
      cur = top;
    }
  }
  return RationalIntervalSet::from_intervals(std::move(pieces));
}

// Φ(A) = λ(fr(A)): the Lebesgue measure of the fractional parts.
inline Rat phi_measure(const RationalIntervalSet& a) { return fractional_image(a).length(); }

}  // namespace subcoup
