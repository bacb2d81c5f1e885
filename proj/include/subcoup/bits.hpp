#pragma once

#include <bit>
#include <cstdint>

namespace subcoup {

// Subsets of a ground set with up to 24 elements, bit i = i-th element.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask bit(int i) { return Mask{1} << i; }

inline bool has_bit(Mask m, int i) { return (m >> i) & 1u; }

inline Mask full_mask(int n) { return n == 0 ? 0u : (Mask{2} << (n - 1)) - 1u; }

// Calls fn(s) for every submask s of m, descending from m down to 0.
template <typename Fn>
void for_each_submask(Mask m, Fn&& fn) {
  Mask s = m;
  while (true) {
    fn(s);
    if (s == 0) break;
    s = (s - 1) & m;
  }
}

// Next superset of `base` after `y` within an n-element universe, in
// increasing numeric order; start from y = base. Returns false when done.
inline bool next_superset(Mask& y, Mask base, int n) {
  if (y == (full_mask(n) | base)) return false;
  y = (y + 1) | base;
  return true;
}

}  // namespace subcoup
