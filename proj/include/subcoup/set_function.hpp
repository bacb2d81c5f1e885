#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subcoup/bits.hpp"
#include "subcoup/errors.hpp"
#include "subcoup/ground_set.hpp"
#include "subcoup/rational.hpp"

namespace subcoup {

// Real-valued set function on a finite ground set, stored as a dense table of
// 2^n exact rationals indexed by subset mask. Immutable after construction.
class SetFunction {
 public:
  SetFunction(GroundSet ground, std::vector<Rat> values)
      : ground_(std::move(ground)), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << ground_.size()))
      throw std::domain_error("set-function table must have exactly 2^n entries");
  }

  static SetFunction zero(const GroundSet& g) {
    return SetFunction(g, std::vector<Rat>(std::size_t{1} << g.size(), Rat(0)));
  }

  template <typename Fn>
  static SetFunction build(const GroundSet& g, Fn&& fn) {
    std::vector<Rat> vals(std::size_t{1} << g.size());
    for (Mask x = 0; x < vals.size(); ++x) vals[x] = fn(x);
    return SetFunction(g, std::move(vals));
  }

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.size(); }
  Mask full() const { return ground_.full(); }
  std::size_t table_size() const { return values_.size(); }
  const std::vector<Rat>& values() const { return values_; }

  // Unchecked table access; use evaluate() for the checked entry point.
  const Rat& operator()(Mask x) const { return values_[x]; }

  bool is_integer_valued() const {
    for (const Rat& v : values_)
      if (!rat_is_integer(v)) return false;
    return true;
  }

  bool operator==(const SetFunction& other) const {
    return ground_ == other.ground_ && values_ == other.values_;
  }
  bool operator!=(const SetFunction& other) const { return !(*this == other); }

 private:
  GroundSet ground_;
  std::vector<Rat> values_;
};

inline Rat evaluate(const SetFunction& f, Mask x) {
  if (x >= f.table_size()) throw std::domain_error("subset mask out of range");
  return f(x);
}

// Nonnegative per-element weights; w(X) = sum of w over X is modular.
struct ModularWeights {
  GroundSet ground;
  std::vector<Rat> w;

  ModularWeights(GroundSet g, std::vector<Rat> weights)
      : ground(std::move(g)), w(std::move(weights)) {
    if (static_cast<int>(w.size()) != ground.size())
      throw std::domain_error("one weight per ground-set element required");
    for (const Rat& v : w)
      if (v < 0) throw std::domain_error("modular weights must be nonnegative");
  }

  Rat total(Mask x) const {
    ground.require_mask(x);
    Rat s(0);
    for (int i = 0; i < ground.size(); ++i)
      if (has_bit(x, i)) s += w[i];
    return s;
  }

  SetFunction as_set_function() const {
    return SetFunction::build(ground, [&](Mask x) { return total(x); });
  }
};

enum class Property {
  normalized,
  increasing,
  decreasing,
  submodular,
  supermodular,
  modular,
  polymatroid,
  k_polymatroid,
  matroid_rank,
};

inline const char* property_name(Property p) {
  switch (p) {
    case Property::normalized: return "normalized";
    case Property::increasing: return "increasing";
    case Property::decreasing: return "decreasing";
    case Property::submodular: return "submodular";
    case Property::supermodular: return "supermodular";
    case Property::modular: return "modular";
    case Property::polymatroid: return "polymatroid";
    case Property::k_polymatroid: return "k_polymatroid";
    case Property::matroid_rank: return "matroid_rank";
  }
  return "?";
}

// Verdict of an exhaustive property check. On failure `witness` holds the
// lexicographically smallest violating tuple of masks and `reason` names the
// condition that broke.
struct PropertyCheck {
  bool holds = true;
  Property property{};
  std::vector<Mask> witness;
  std::string reason;

  static PropertyCheck ok(Property p) { return {true, p, {}, ""}; }
  static PropertyCheck fail(Property p, std::vector<Mask> w, std::string why) {
    return {false, p, std::move(w), std::move(why)};
  }
};

namespace detail {

inline std::optional<std::pair<Mask, Mask>> find_increasing_violation(const SetFunction& f) {
  const int n = f.n();
  for (Mask x = 0; x < f.table_size(); ++x) {
    Mask y = x;
    do {
      if (f(x) > f(y)) return std::make_pair(x, y);
    } while (next_superset(y, x, n));
  }
  return std::nullopt;
}

// Smallest (X, Y) with X < Y violating f(X)+f(Y) >= f(X∩Y)+f(X∪Y); the
// definitional double loop, kept deliberately literal.
inline std::optional<std::pair<Mask, Mask>> find_submodularity_violation(const SetFunction& f) {
  const std::size_t size = f.table_size();
  for (Mask x = 0; x < size; ++x) {
    for (Mask y = x + 1; y < size; ++y) {
      const Mask meet = x & y;
      if (meet == x || meet == y) continue;  // nested pairs hold with equality
      if (f(x) + f(y) < f(meet) + f(x | y)) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

inline std::optional<std::pair<Mask, Mask>> find_modularity_violation(const SetFunction& f) {
  const std::size_t size = f.table_size();
  for (Mask x = 0; x < size; ++x)
    for (Mask y = x + 1; y < size; ++y) {
      const Mask meet = x & y;
      if (meet == x || meet == y) continue;
      if (f(x) + f(y) != f(meet) + f(x | y)) return std::make_pair(x, y);
    }
  return std::nullopt;
}

}  // namespace detail

// Exhaustive property check with certificate. `k` is consulted only for
// Property::k_polymatroid.
inline PropertyCheck check_property(const SetFunction& f, Property p, const Rat& k = Rat(1)) {
  using detail::find_increasing_violation;
  using detail::find_modularity_violation;
  using detail::find_submodularity_violation;

  switch (p) {
    case Property::normalized: {
      if (f(f.full()) != 1)
        return PropertyCheck::fail(p, {f.full()}, "f(S) != 1");
      return PropertyCheck::ok(p);
    }
    case Property::increasing: {
      if (auto v = find_increasing_violation(f))
        return PropertyCheck::fail(p, {v->first, v->second}, "f(X) > f(Y) for X subset of Y");
      return PropertyCheck::ok(p);
    }
    case Property::decreasing: {
      const int n = f.n();
      for (Mask x = 0; x < f.table_size(); ++x) {
        Mask y = x;
        do {
          if (f(x) < f(y))
            return PropertyCheck::fail(p, {x, y}, "f(X) < f(Y) for X subset of Y");
        } while (next_superset(y, x, n));
      }
      return PropertyCheck::ok(p);
    }
    case Property::submodular: {
      if (auto v = find_submodularity_violation(f))
        return PropertyCheck::fail(p, {v->first, v->second},
                                   "f(X)+f(Y) < f(X∩Y)+f(X∪Y)");
      return PropertyCheck::ok(p);
    }
    case Property::supermodular: {
      const std::size_t size = f.table_size();
      for (Mask x = 0; x < size; ++x)
        for (Mask y = x + 1; y < size; ++y) {
          const Mask meet = x & y;
          if (meet == x || meet == y) continue;
          if (f(x) + f(y) > f(meet) + f(x | y))
            return PropertyCheck::fail(p, {x, y}, "f(X)+f(Y) > f(X∩Y)+f(X∪Y)");
        }
      return PropertyCheck::ok(p);
    }
    case Property::modular: {
      if (auto v = find_modularity_violation(f))
        return PropertyCheck::fail(p, {v->first, v->second},
                                   "f(X)+f(Y) != f(X∩Y)+f(X∪Y)");
      return PropertyCheck::ok(p);
    }
    case Property::polymatroid: {
      if (f(0) != 0) return PropertyCheck::fail(p, {0}, "f(∅) != 0");
      if (auto v = find_increasing_violation(f))
        return PropertyCheck::fail(p, {v->first, v->second}, "not increasing");
      if (auto v = find_submodularity_violation(f))
        return PropertyCheck::fail(p, {v->first, v->second}, "not submodular");
      return PropertyCheck::ok(p);
    }
    case Property::k_polymatroid: {
      PropertyCheck base = check_property(f, Property::polymatroid);
      if (!base.holds) {
        base.property = p;
        return base;
      }
      for (Mask x = 0; x < f.table_size(); ++x)
        if (f(x) > k * popcount(x))
          return PropertyCheck::fail(p, {x}, "f(X) > k|X|");
      return PropertyCheck::ok(p);
    }
    case Property::matroid_rank: {
      if (f(0) != 0) return PropertyCheck::fail(p, {0}, "(R1) r(∅) != 0");
      for (Mask x = 0; x < f.table_size(); ++x) {
        if (!rat_is_integer(f(x)))
          return PropertyCheck::fail(p, {x}, "rank value not an integer");
        if (f(x) < 0 || f(x) > popcount(x))
          return PropertyCheck::fail(p, {x}, "(R3) r(X) outside [0, |X|]");
      }
      if (auto v = find_increasing_violation(f))
        return PropertyCheck::fail(p, {v->first, v->second}, "(R2) not increasing");
      if (auto v = find_submodularity_violation(f))
        return PropertyCheck::fail(p, {v->first, v->second}, "(R4) not submodular");
      return PropertyCheck::ok(p);
    }
  }
  throw std::logic_error("unreachable property");
}

// Verdict of the k-alternating check. On violation, `witness` is the tuple
// (A0, A1, ..., Ak) and `excess` the positive value of the alternating sum.
struct KAlternatingCheck {
  bool holds = true;
  int k = 0;
  std::vector<Mask> witness;
  Rat excess;
};

namespace detail {

// Alternating sum over K ⊆ [k] of (-1)^|K| f(A0 ∪ ∪_{i∈K} Ai).
inline Rat alternating_sum(const SetFunction& f, Mask a0, const std::vector<Mask>& as) {
  const int k = static_cast<int>(as.size());
  Rat sum(0);
  for (Mask kset = 0; kset < (Mask{1} << k); ++kset) {
    Mask arg = a0;
    for (int i = 0; i < k; ++i)
      if (has_bit(kset, i)) arg |= as[i];
    if (popcount(kset) % 2 == 0)
      sum += f(arg);
    else
      sum -= f(arg);
  }
  return sum;
}

// Enumerates non-decreasing k-tuples over `pool` (repetitions allowed) in
// lexicographic order; returns true if `visit` asked to stop.
template <typename Visit>
bool for_each_tuple(const std::vector<Mask>& pool, int k, std::vector<Mask>& tuple, int depth,
                    std::size_t from, Visit&& visit) {
  if (depth == k) return visit(tuple);
  for (std::size_t i = from; i < pool.size(); ++i) {
    tuple[depth] = pool[i];
    if (for_each_tuple(pool, k, tuple, depth + 1, i, visit)) return true;
  }
  return false;
}

}  // namespace detail

// Checks f(∅)=0 and the k-alternating inequality. By default A1..Ak range
// over singletons (with repetition, so the k=1 and k=2 cases collapse to the
// increasing and increasing-submodular checks) while A0 ranges over all
// subsets; `exhaustive_tuples` widens A1..Ak to all subsets.
inline KAlternatingCheck check_k_alternating(const SetFunction& f, int k,
                                             bool exhaustive_tuples = false) {
  if (k < 1) throw std::domain_error("k must be at least 1");
  KAlternatingCheck out;
  out.k = k;
  if (f(0) != 0) {
    out.holds = false;
    out.witness = {0};
    out.excess = f(0);
    return out;
  }

  std::vector<Mask> pool;
  if (exhaustive_tuples) {
    for (Mask a = 0; a < f.table_size(); ++a) pool.push_back(a);
  } else {
    for (int i = 0; i < f.n(); ++i) pool.push_back(bit(i));
  }

  std::vector<Mask> tuple(k);
  for (Mask a0 = 0; a0 < f.table_size(); ++a0) {
    bool stop = detail::for_each_tuple(pool, k, tuple, 0, 0, [&](const std::vector<Mask>& as) {
      Rat s = detail::alternating_sum(f, a0, as);
      if (s > 0) {
        out.holds = false;
        out.witness.clear();
        out.witness.push_back(a0);
        out.witness.insert(out.witness.end(), as.begin(), as.end());
        out.excess = s;
        return true;
      }
      return false;
    });
    if (stop) break;
  }
  return out;
}

// (f/Q)(X) = f(union of the classes selected by X).
inline SetFunction quotient(const SetFunction& f, const Partition& q) {
  if (q.ground() != f.ground())
    throw std::domain_error("partition is over a different ground set");
  GroundSet qg = q.quotient_ground();
  return SetFunction::build(qg, [&](Mask x) { return f(q.union_of_classes(x)); });
}

}  // namespace subcoup
