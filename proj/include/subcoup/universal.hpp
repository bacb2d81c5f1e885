#pragma once

#include <string>
#include <utility>
#include <vector>

#include "subcoup/coverage.hpp"
#include "subcoup/interval_set.hpp"
#include "subcoup/set_function.hpp"

namespace subcoup {

// One placement step of the universal construction: at step t the set B_t^I
// of measure `required` was placed inside a feasible region of measure
// `capacity`.
struct UniversalBuildStep {
  int t = 0;
  Mask index_set = 0;  // I, bit i ↔ element i+1 of [q]
  Rat required;        // b_t^I
  Rat capacity;        // measure of the admissible region before placement
};

// Witness that ψ is a quotient of the universal coverage function Φ: q
// disjoint interval classes inside [0, q) with Φ(∪_{i∈I} Q_i) = ψ(I) for all
// I. The leftover fr⁻¹(L_i) ∖ ∪Q_j is assigned to Q_i symbolically by
// `residual_rule`; it changes no Φ value on unions of classes.
struct UniversalWitness {
  SetFunction psi;
  std::vector<RationalIntervalSet> classes;
  std::string residual_rule;
  std::vector<UniversalBuildStep> trace;
};

inline const char* kResidualRule = "assign fr^{-1}(L_i) minus the union of all classes to Q_i";

// b_t^I = Σ_{J ⊆ I∪{t}} (-1)^{|J|+1} ψ(([t-1]∖I) ∪ J), the measure that step
// t must place into the cell of membership pattern I. Elements of [q] are
// 1-based; bit i-1 of a mask is element i.
inline Rat compute_b(const SetFunction& psi, int t, Mask index_set) {
  const int q = psi.n();
  if (psi(0) != 0) throw std::domain_error("psi must satisfy psi(∅) = 0");
  if (psi(psi.full()) != 1) throw std::domain_error("psi must be normalized");
  if (t < 2 || t > q) throw std::domain_error("step index t must lie in [2, q]");
  const Mask before_t = full_mask(t - 1);
  if (index_set == 0 || (index_set & ~before_t) != 0)
    throw std::domain_error("index set must be a nonempty subset of [t-1]");

  const Mask with_t = index_set | bit(t - 1);
  const Mask base = before_t & ~index_set;
  Rat sum(0);
  for_each_submask(with_t, [&](Mask j) {
    if (popcount(j) % 2 == 1)
      sum += psi(base | j);
    else
      sum -= psi(base | j);
  });
  return sum;
}

// Constructive proof object: builds the interval partition realizing ψ as a
// quotient of Φ. Step 1 lays down Q_i = L_i = [ψ([i-1]), ψ([i])); step t
// places, for every nonempty I ⊆ [t-1] in decreasing-cardinality order, the
// leftmost set of measure b_t^I inside the admissible cell of J^t_{min I}.
inline UniversalWitness build_universal_partition(const SetFunction& psi) {
  const int q = psi.n();
  if (q < 1) throw std::domain_error("psi must have at least one element");
  if (psi(0) != 0) throw std::domain_error("psi must satisfy psi(∅) = 0");
  if (psi(psi.full()) != 1) throw std::domain_error("psi must be normalized");
  {
    CoverageResult cr = coverage_decompose(psi);
    if (!cr.is_coverage)
      throw std::domain_error("psi is not a coverage function: c_" +
                              std::to_string(cr.witness) + " = " +
                              rat_to_string(cr.witness_value));
  }

  // L_i and the initial classes
  std::vector<Rat> prefix(q + 1);
  for (int i = 0; i <= q; ++i) prefix[i] = psi(full_mask(i));
  std::vector<RationalIntervalSet> lower(q + 1);  // L_i, within [0,1)
  std::vector<RationalIntervalSet> classes(q + 1);
  std::vector<RationalIntervalSet> image(q + 1);  // f(Q_i) within [0,1)
  for (int i = 1; i <= q; ++i) {
    lower[i] = RationalIntervalSet::interval(prefix[i - 1], prefix[i]);
    classes[i] = lower[i];
    image[i] = lower[i];
  }

  UniversalWitness out{psi, {}, kResidualRule, {}};
  const RationalIntervalSet unit = RationalIntervalSet::interval(Rat(0), Rat(1));

  for (int t = 2; t <= q; ++t) {
    // nonempty I ⊆ [t-1], decreasing |I|, ties by mask value
    std::vector<Mask> order;
    for (Mask i = 1; i <= full_mask(t - 1); ++i) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [](Mask a, Mask b) { return popcount(a) > popcount(b); });

    for (Mask index_set : order) {
      const Rat required = compute_b(psi, t, index_set);
      if (required < 0)
        throw std::logic_error("internal feasibility failure: negative placement measure");

      RationalIntervalSet cell = unit;
      for (int i = 1; i < t; ++i) {
        if (has_bit(index_set, i - 1))
          cell = cell.intersect(image[i]);
        else
          cell = cell.subtract(image[i]);
      }
      const int min_elem = std::countr_zero(index_set) + 1;
      const RationalIntervalSet region = cell.intersect(lower[min_elem]);
      const Rat capacity = region.length();
      out.trace.push_back({t, index_set, required, capacity});
      if (capacity < required)
        throw std::logic_error("internal feasibility failure: region too small");

      const RationalIntervalSet placed01 = region.leftmost(required);
      classes[t] = classes[t].unite(placed01.shift(Rat(t - 1)));
      image[t] = image[t].unite(placed01);
    }
  }

  out.classes.assign(classes.begin() + 1, classes.end());
  return out;
}

struct UniversalCheck {
  bool holds = true;
  Mask witness = 0;  // the subset I at which verification failed
  Rat expected, actual;
  std::string reason;
};

// Exact verification: classes are pairwise disjoint, live in [0, q), and
// Φ(∪_{i∈I} Q_i) = ψ(I) for every I ⊆ [q].
inline UniversalCheck verify_universal(const UniversalWitness& w) {
  const int q = w.psi.n();
  if (static_cast<int>(w.classes.size()) != q)
    throw std::domain_error("witness must carry one class per element of [q]");

  const RationalIntervalSet span = RationalIntervalSet::interval(Rat(0), Rat(q));
  for (int i = 0; i < q; ++i)
    if (!span.contains(w.classes[i]))
      return {false, bit(i), Rat(0), Rat(0), "class outside [0, q)"};
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if (!w.classes[i].disjoint_with(w.classes[j]))
        return {false, bit(i) | bit(j), Rat(0), Rat(0), "classes not disjoint"};

  for (Mask sel = 0; sel < w.psi.table_size(); ++sel) {
    RationalIntervalSet u;
    for (int i = 0; i < q; ++i)
      if (has_bit(sel, i)) u = u.unite(w.classes[i]);
    Rat actual = phi_measure(u);
    Rat expected = w.psi(sel);
    if (actual != expected)
      return {false, sel, std::move(expected), std::move(actual), "Φ(∪ Q_i) != ψ(I)"};
  }
  return {};
}

}  // namespace subcoup
