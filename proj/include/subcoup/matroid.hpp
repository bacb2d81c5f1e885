#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "subcoup/errors.hpp"
#include "subcoup/set_function.hpp"

namespace subcoup {

namespace detail {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Rank of the selected columns over GF(p) by Gaussian elimination.
inline int gf_column_rank(const std::vector<std::vector<int>>& matrix, int p, Mask cols) {
  const int rows = static_cast<int>(matrix.size());
  std::vector<std::vector<int>> m;
  for (int j = 0; j < (rows == 0 ? 0 : static_cast<int>(matrix[0].size())); ++j)
    if (has_bit(cols, j)) {
      std::vector<int> col(rows);
      for (int i = 0; i < rows; ++i) col[i] = matrix[i][j];
      m.push_back(std::move(col));
    }
  // eliminate over the column list; rank = number of pivots
  int rank = 0;
  for (int r = 0; r < rows && rank < static_cast<int>(m.size()); ++r) {
    int pivot = -1;
    for (int j = rank; j < static_cast<int>(m.size()); ++j)
      if (m[j][r] % p != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    // normalize pivot column then clear entry r of the others
    int inv = 1;
    for (int t = 1; t < p; ++t)
      if (m[rank][r] * t % p == 1) inv = t;
    for (int i = 0; i < rows; ++i) m[rank][i] = m[rank][i] * inv % p;
    for (int j = 0; j < static_cast<int>(m.size()); ++j) {
      if (j == rank || m[j][r] == 0) continue;
      const int factor = m[j][r];
      for (int i = 0; i < rows; ++i) m[j][i] = ((m[j][i] - factor * m[rank][i]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

struct LinearRepresentation {
  int p = 0;
  std::vector<std::vector<int>> matrix;  // rows x columns, column j = element j
};

struct MatroidImpl {
  GroundSet ground;
  std::string kind;
  std::function<int(Mask)> raw;
  std::shared_ptr<const LinearRepresentation> linear;  // set for kind "linear"

  // memo: -1 = unfilled; write-once and idempotent, safe to fill concurrently
  mutable std::unique_ptr<std::atomic<std::int32_t>[]> memo;

  MatroidImpl(GroundSet g, std::string k, std::function<int(Mask)> fn, bool memoize)
      : ground(std::move(g)), kind(std::move(k)), raw(std::move(fn)) {
    if (memoize) {
      const std::size_t size = std::size_t{1} << ground.size();
      memo = std::make_unique<std::atomic<std::int32_t>[]>(size);
      for (std::size_t i = 0; i < size; ++i) memo[i].store(-1, std::memory_order_relaxed);
    }
  }

  int rank(Mask x) const {
    ground.require_mask(x);
    if (!memo) return raw(x);
    std::int32_t cached = memo[x].load(std::memory_order_relaxed);
    if (cached >= 0) return cached;
    const int value = raw(x);
    memo[x].store(value, std::memory_order_relaxed);
    return value;
  }
};

}  // namespace detail

// Matroid rank oracle over a finite ground set. Value type; cheap to copy.
class Matroid {
 public:
  Matroid() = default;

  const GroundSet& ground() const { return impl_->ground; }
  int n() const { return impl_->ground.size(); }
  const std::string& kind() const { return impl_->kind; }
  int rank(Mask x) const { return impl_->rank(x); }
  int rank_full() const { return impl_->rank(ground().full()); }

  const detail::LinearRepresentation* linear_representation() const {
    return impl_->linear.get();
  }

  SetFunction rank_table() const {
    return SetFunction::build(ground(), [&](Mask x) { return Rat(rank(x)); });
  }

  static Matroid uniform(GroundSet g, int r) {
    if (r < 0 || r > g.size()) throw std::domain_error("uniform matroid rank out of range");
    auto fn = [r](Mask x) { return std::min(popcount(x), r); };
    return Matroid(std::make_shared<detail::MatroidImpl>(std::move(g), "uniform", fn, false));
  }

  static Matroid uniform(int n, int r) { return uniform(GroundSet::numbered(n), r); }

  // r(X) = number of blocks met by X; elements outside every block are loops.
  static Matroid partition(GroundSet g, std::vector<Mask> blocks) {
    Mask seen = 0;
    for (Mask b : blocks) {
      g.require_mask(b);
      if (b & seen) throw std::domain_error("partition matroid blocks must be disjoint");
      seen |= b;
    }
    auto fn = [blocks](Mask x) {
      int r = 0;
      for (Mask b : blocks)
        if (x & b) ++r;
      return r;
    };
    return Matroid(std::make_shared<detail::MatroidImpl>(std::move(g), "partition", fn, false));
  }

  // Columns of `matrix` over GF(p) are the elements, in ground order.
  static Matroid linear(int p, std::vector<std::vector<int>> matrix, GroundSet g) {
    if (!detail::is_prime(p) || p > 97)
      throw std::domain_error("linear matroids require a prime field GF(p), p <= 97");
    const int cols = g.size();
    for (auto& row : matrix) {
      if (static_cast<int>(row.size()) != cols)
        throw std::domain_error("matrix must have one column per ground-set element");
      for (int& v : row) {
        v %= p;
        if (v < 0) v += p;
      }
    }
    auto rep = std::make_shared<detail::LinearRepresentation>();
    rep->p = p;
    rep->matrix = std::move(matrix);
    auto fn = [rep](Mask x) { return detail::gf_column_rank(rep->matrix, rep->p, x); };
    auto impl = std::make_shared<detail::MatroidImpl>(std::move(g), "linear", fn, true);
    impl->linear = rep;
    return Matroid(std::move(impl));
  }

  static Matroid linear(int p, std::vector<std::vector<int>> matrix) {
    const int cols = matrix.empty() ? 0 : static_cast<int>(matrix[0].size());
    return linear(p, std::move(matrix), GroundSet::numbered(cols));
  }

  // Rank-4 matroid on a1,a2,b1,b2,c1,c2,d1,d2 in which every 4-set is a basis
  // except A∪B, A∪C, A∪D, B∪C, B∪D for the pairs A={a1,a2}, ..., D={d1,d2}.
  static Matroid vamos() {
    GroundSet g({"a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"});
    constexpr Mask kA = 0x03, kB = 0x0C, kC = 0x30, kD = 0xC0;
    auto fn = [](Mask x) {
      const int size = popcount(x);
      if (size <= 3) return size;
      if (size == 4 &&
          (x == (kA | kB) || x == (kA | kC) || x == (kA | kD) || x == (kB | kC) ||
           x == (kB | kD)))
        return 3;
      return 4;
    };
    return Matroid(std::make_shared<detail::MatroidImpl>(std::move(g), "vamos", fn, false));
  }

  static Matroid free_on(GroundSet g) {
    auto fn = [](Mask x) { return popcount(x); };
    return Matroid(std::make_shared<detail::MatroidImpl>(std::move(g), "free", fn, false));
  }

  static Matroid zero_on(GroundSet g) {
    auto fn = [](Mask) { return 0; };
    return Matroid(std::make_shared<detail::MatroidImpl>(std::move(g), "zero", fn, false));
  }

  // Explicit rank table. The table must be integer-valued; the rank axioms
  // are not enforced here — certify_matroid reports violations.
  static Matroid from_table(const SetFunction& table) {
    if (!table.is_integer_valued())
      throw std::domain_error("explicit matroid tables must be integer-valued");
    std::vector<std::int32_t> ranks(table.table_size());
    for (Mask x = 0; x < table.table_size(); ++x)
      ranks[x] = static_cast<std::int32_t>(table(x).get_num().get_si());
    auto fn = [ranks = std::move(ranks)](Mask x) { return static_cast<int>(ranks[x]); };
    return Matroid(std::make_shared<detail::MatroidImpl>(table.ground(), "explicit", fn, false));
  }

  // Lambda-backed oracle for composite constructions (couplings, amalgams).
  static Matroid from_oracle(GroundSet g, std::string kind, std::function<int(Mask)> fn,
                             bool memoize = true) {
    return Matroid(
        std::make_shared<detail::MatroidImpl>(std::move(g), std::move(kind), std::move(fn), memoize));
  }

  static Matroid direct_sum(const Matroid& a, const Matroid& b) {
    std::vector<std::string> labels = a.ground().labels();
    GroundSet left = a.ground();
    for (std::string l : b.ground().labels()) {
      while (std::find(labels.begin(), labels.end(), l) != labels.end()) l += "'";
      labels.push_back(std::move(l));
    }
    GroundSet g(std::move(labels));
    const int n1 = a.n();
    auto ia = a.impl_, ib = b.impl_;
    auto fn = [ia, ib, n1](Mask x) {
      const Mask x1 = x & full_mask(n1);
      const Mask x2 = x >> n1;
      return ia->rank(x1) + ib->rank(x2);
    };
    return Matroid(std::make_shared<detail::MatroidImpl>(std::move(g), "direct_sum", fn, true));
  }

  // Restriction to the elements selected by `keep`.
  static Matroid restriction(const Matroid& m, Mask keep) {
    m.ground().require_mask(keep);
    std::vector<std::string> labels;
    std::vector<int> embed;
    for (int i = 0; i < m.n(); ++i)
      if (has_bit(keep, i)) {
        labels.push_back(m.ground().label(i));
        embed.push_back(i);
      }
    auto im = m.impl_;
    auto fn = [im, embed](Mask x) {
      Mask parent = 0;
      for (std::size_t j = 0; j < embed.size(); ++j)
        if (has_bit(x, static_cast<int>(j))) parent |= bit(embed[j]);
      return im->rank(parent);
    };
    return Matroid(
        std::make_shared<detail::MatroidImpl>(GroundSet(std::move(labels)), "restriction", fn, true));
  }

  // Contraction of the elements selected by `out`: r'(X) = r(X ∪ out) - r(out).
  static Matroid contraction(const Matroid& m, Mask out) {
    m.ground().require_mask(out);
    std::vector<std::string> labels;
    std::vector<int> embed;
    for (int i = 0; i < m.n(); ++i)
      if (!has_bit(out, i)) {
        labels.push_back(m.ground().label(i));
        embed.push_back(i);
      }
    auto im = m.impl_;
    const int base = im->rank(out);
    auto fn = [im, embed, out, base](Mask x) {
      Mask parent = out;
      for (std::size_t j = 0; j < embed.size(); ++j)
        if (has_bit(x, static_cast<int>(j))) parent |= bit(embed[j]);
      return im->rank(parent) - base;
    };
    return Matroid(
        std::make_shared<detail::MatroidImpl>(GroundSet(std::move(labels)), "contraction", fn, true));
  }

 private:
  explicit Matroid(std::shared_ptr<const detail::MatroidImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::MatroidImpl> impl_;
};

// Greedy in label order; returns an independent set of size r(S).
inline Mask find_basis(const Matroid& m) {
  Mask basis = 0;
  int rank = 0;
  for (int i = 0; i < m.n(); ++i) {
    const int r = m.rank(basis | bit(i));
    if (r > rank) {
      basis |= bit(i);
      rank = r;
    }
  }
  return basis;
}

// Greedy vertex of the base polyhedron B(φ) along the given element order:
// w(e_i) = φ({e_1..e_i}) - φ({e_1..e_{i-1}}). Integer whenever φ is.
inline ModularWeights base_vertex(const SetFunction& phi, const std::vector<int>& order) {
  PropertyCheck pc = check_property(phi, Property::polymatroid);
  if (!pc.holds)
    throw std::domain_error(std::string("base_vertex requires a polymatroid function: ") +
                            pc.reason);
  const int n = phi.n();
  if (static_cast<int>(order.size()) != n)
    throw std::domain_error("order must be a permutation of the ground set");
  Mask seen = 0;
  std::vector<Rat> w(n);
  for (int e : order) {
    if (e < 0 || e >= n || has_bit(seen, e))
      throw std::domain_error("order must be a permutation of the ground set");
    w[e] = phi(seen | bit(e)) - phi(seen);
    seen |= bit(e);
  }
  return ModularWeights(phi.ground(), std::move(w));
}

inline ModularWeights base_vertex(const SetFunction& phi) {
  std::vector<int> order(phi.n());
  std::iota(order.begin(), order.end(), 0);
  return base_vertex(phi, order);
}

inline ModularWeights basis_indicator(const Matroid& m, Mask basis) {
  std::vector<Rat> w(m.n(), Rat(0));
  for (int i = 0; i < m.n(); ++i)
    if (has_bit(basis, i)) w[i] = 1;
  return ModularWeights(m.ground(), std::move(w));
}

struct HelgasonExpansion {
  Matroid matroid;            // matroid over the expanded ground set
  std::vector<int> theta;     // copy index -> source element index
  GroundSet expanded_ground;  // labels "s#k"
};

// Expands an integer polymatroid into a matroid with φ({s}) parallel copies
// of each element s and rank r'(X') = min_{Y⊆S} (φ(Y) + |X' ∖ θ⁻¹(Y)|),
// so that φ(X) = r'(θ⁻¹(X)) for every X.
inline HelgasonExpansion helgason_expand(const SetFunction& phi) {
  if (!phi.is_integer_valued())
    throw std::domain_error("helgason_expand requires an integer-valued function");
  PropertyCheck pc = check_property(phi, Property::polymatroid);
  if (!pc.holds)
    throw std::domain_error(std::string("helgason_expand requires a polymatroid function: ") +
                            pc.reason);

  const int n = phi.n();
  const long total_rank = phi(phi.full()).get_num().get_si();
  std::vector<std::string> labels;
  std::vector<int> theta;
  std::vector<Mask> copies_of(n, 0);
  for (int s = 0; s < n; ++s) {
    const long c = std::min(phi(bit(s)).get_num().get_si(), total_rank);
    for (long k = 1; k <= c; ++k) {
      if (static_cast<int>(labels.size()) >= GroundSet::kMaxElements)
        throw capacity_error("expanded ground set exceeds the 24-element cap");
      copies_of[s] |= bit(static_cast<int>(labels.size()));
      labels.push_back(phi.ground().label(s) + "#" + std::to_string(k));
      theta.push_back(s);
    }
  }
  GroundSet expanded(std::move(labels));

  std::vector<long> phi_int(phi.table_size());
  for (Mask y = 0; y < phi.table_size(); ++y) phi_int[y] = phi(y).get_num().get_si();

  auto fn = [phi_int, copies_of, n](Mask xp) {
    long best = -1;
    for (Mask y = 0; y < (Mask{1} << n); ++y) {
      Mask preimage = 0;
      for (int s = 0; s < n; ++s)
        if (has_bit(y, s)) preimage |= copies_of[s];
      const long value = phi_int[y] + popcount(xp & ~preimage);
      if (best < 0 || value < best) best = value;
    }
    return static_cast<int>(best);
  };
  Matroid m = Matroid::from_oracle(expanded, "induced", fn, true);
  return HelgasonExpansion{std::move(m), std::move(theta), std::move(expanded)};
}

struct MatroidCertificate {
  bool holds = true;
  std::string axiom;           // "R1".."R4" when violated
  std::vector<Mask> witness;   // the violating set or pair
};

// Exhaustive (R1)-(R4) certification over the full rank table. (R2) and (R4)
// go through their single- and two-element characterizations, which quantify
// over the same table; local violations are converted to genuine violating
// pairs of the quantified axioms.
inline MatroidCertificate certify_matroid(const Matroid& m, int cap = 16) {
  const int n = m.n();
  if (n > cap) throw capacity_error("certify_matroid is capped at " + std::to_string(cap) +
                                    " elements");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::int32_t> r(size);
  for (Mask x = 0; x < size; ++x) r[x] = static_cast<std::int32_t>(m.rank(x));

  if (r[0] != 0) return {false, "R1", {0}};
  for (Mask x = 0; x < size; ++x)
    if (r[x] < 0 || r[x] > popcount(x)) return {false, "R3", {x}};
  for (Mask x = 0; x < size; ++x)
    for (int i = 0; i < n; ++i) {
      if (has_bit(x, i)) continue;
      if (r[x] > r[x | bit(i)]) return {false, "R2", {x, x | bit(i)}};
    }
  for (Mask x = 0; x < size; ++x)
    for (int i = 0; i < n; ++i) {
      if (has_bit(x, i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (has_bit(x, j)) continue;
        if (r[x | bit(i)] + r[x | bit(j)] < r[x] + r[x | bit(i) | bit(j)])
          return {false, "R4", {x | bit(i), x | bit(j)}};
      }
    }
  return {true, "", {}};
}

}  // namespace subcoup
