#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "subcoup/errors.hpp"
#include "subcoup/matroid.hpp"
#include "subcoup/set_function.hpp"
#include "subcoup/sfm.hpp"

namespace subcoup {

// Product ground set S1 × S2 with the fixed bijection index = i·n2 + j and
// labels "(x,y)" in row-major order.
struct ProductGround {
  GroundSet left, right, product;
  int n1 = 0, n2 = 0;

  // π2 of the e1-fiber of z, as a mask over S2.
  Mask row_of(Mask z, int e1) const { return (z >> (e1 * n2)) & full_mask(n2); }

  // π1 of the e2-fiber of z, as a mask over S1.
  Mask col_of(Mask z, int e2) const {
    Mask m = 0;
    for (int i = 0; i < n1; ++i)
      if (has_bit(z, i * n2 + e2)) m |= bit(i);
    return m;
  }

  Mask rectangle(Mask y1, Mask y2) const {
    Mask z = 0;
    for (int i = 0; i < n1; ++i)
      if (has_bit(y1, i)) z |= y2 << (i * n2);
    return z;
  }
};

inline ProductGround make_product_ground(const GroundSet& s1, const GroundSet& s2) {
  if (s1.size() * s2.size() > GroundSet::kMaxElements)
    throw capacity_error("product ground set exceeds the 24-element cap");
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(s1.size()) * s2.size());
  for (const auto& a : s1.labels())
    for (const auto& b : s2.labels()) labels.push_back("(" + a + "," + b + ")");
  return ProductGround{s1, s2, GroundSet(std::move(labels)), s1.size(), s2.size()};
}

// Partition of the product into x-fibers {x} × S2 (classes follow S1).
inline Partition row_fiber_partition(const ProductGround& pg) {
  std::vector<int> cls(static_cast<std::size_t>(pg.n1) * pg.n2);
  for (int i = 0; i < pg.n1; ++i)
    for (int j = 0; j < pg.n2; ++j) cls[i * pg.n2 + j] = i;
  return Partition(pg.product, std::move(cls), pg.n1);
}

// Partition of the product into y-fibers S1 × {y} (classes follow S2).
inline Partition col_fiber_partition(const ProductGround& pg) {
  std::vector<int> cls(static_cast<std::size_t>(pg.n1) * pg.n2);
  for (int i = 0; i < pg.n1; ++i)
    for (int j = 0; j < pg.n2; ++j) cls[i * pg.n2 + j] = j;
  return Partition(pg.product, std::move(cls), pg.n2);
}

// Inputs of the explicit coupling b(Z) = Σ μ1(e1)·φ2(π2(Z_{e1}))
// + Σ μ2(e2)·φ1(π1(Z^{e2})) − Σ_{(e1,e2)∈Z} μ1(e1)·μ2(e2).
struct CouplingSpec {
  SetFunction phi1, phi2;
  ModularWeights mu1, mu2;
};

namespace detail {

inline void validate_b_spec(const CouplingSpec& s) {
  if (s.phi1(0) != 0) throw std::domain_error("coupling requires phi1(∅) = 0");
  if (s.phi2(0) != 0) throw std::domain_error("coupling requires phi2(∅) = 0");
  for (Mask x = 0; x < s.phi1.table_size(); ++x)
    if (s.phi1(x) < 0) throw std::domain_error("coupling requires phi1 >= 0");
  for (Mask x = 0; x < s.phi2.table_size(); ++x)
    if (s.phi2(x) < 0) throw std::domain_error("coupling requires phi2 >= 0");
  if (!check_property(s.phi1, Property::submodular).holds)
    throw std::domain_error("coupling requires phi1 submodular");
  if (!check_property(s.phi2, Property::submodular).holds)
    throw std::domain_error("coupling requires phi2 submodular");
  if (s.mu1.ground != s.phi1.ground())
    throw std::domain_error("mu1 is over a different ground set than phi1");
  if (s.mu2.ground != s.phi2.ground())
    throw std::domain_error("mu2 is over a different ground set than phi2");
  if (s.mu1.total(s.phi1.full()) != s.phi1(s.phi1.full()))
    throw std::domain_error("coupling requires mu1(S1) = phi1(S1)");
  if (s.mu2.total(s.phi2.full()) != s.phi2(s.phi2.full()))
    throw std::domain_error("coupling requires mu2(S2) = phi2(S2)");
}

// Requires mu in the base polyhedron of phi: mu(X) <= phi(X) everywhere and
// mu(S) = phi(S).
inline void validate_base_vertex(const ModularWeights& mu, const SetFunction& phi,
                                 const char* which) {
  SetFunction mu_table = mu.as_set_function();
  for (Mask x = 0; x < phi.table_size(); ++x)
    if (mu_table(x) > phi(x))
      throw std::domain_error(std::string(which) + " is not in the base polyhedron: mu(X) > phi(X)");
  if (mu_table(phi.full()) != phi(phi.full()))
    throw std::domain_error(std::string(which) + " is not in the base polyhedron: mu(S) != phi(S)");
}

inline std::vector<Rat> b_table(const CouplingSpec& s, const ProductGround& pg) {
  const int n1 = pg.n1, n2 = pg.n2;
  std::vector<Rat> pair_product(static_cast<std::size_t>(n1) * n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) pair_product[i * n2 + j] = s.mu1.w[i] * s.mu2.w[j];

  const std::size_t size = std::size_t{1} << (n1 * n2);
  std::vector<Rat> b(size);
  for (Mask z = 0; z < size; ++z) {
    Rat v(0);
    for (int e1 = 0; e1 < n1; ++e1)
      if (s.mu1.w[e1] != 0) v += s.mu1.w[e1] * s.phi2(pg.row_of(z, e1));
    for (int e2 = 0; e2 < n2; ++e2)
      if (s.mu2.w[e2] != 0) v += s.mu2.w[e2] * s.phi1(pg.col_of(z, e2));
    Mask rest = z;
    while (rest) {
      const int pos = std::countr_zero(rest);
      v -= pair_product[pos];
      rest &= rest - 1;
    }
    b[z] = std::move(v);
  }
  return b;
}

// In-place min over supersets: out[Z] = min_{W ⊇ Z} in[W].
template <typename T>
void superset_min_transform(std::vector<T>& v, int n) {
  for (int i = 0; i < n; ++i)
    for (Mask z = 0; z < v.size(); ++z)
      if (!has_bit(z, i) && v[z | bit(i)] < v[z]) v[z] = v[z | bit(i)];
}

}  // namespace detail

// The explicit submodular coupling of phi1 and phi2 with weights mu1, mu2
// normalized by mu_i(S_i) = phi_i(S_i).
inline SetFunction build_b(const CouplingSpec& spec) {
  detail::validate_b_spec(spec);
  ProductGround pg = make_product_ground(spec.phi1.ground(), spec.phi2.ground());
  return SetFunction(pg.product, detail::b_table(spec, pg));
}

// Monotone closure of b: φ(Z) = min{ b(Z') : Z' ⊇ Z }. For k1- and
// k2-polymatroid inputs with mu_i in B(phi_i) the result is an integer-valued
// (when the inputs are) (k1·k2)-polymatroid coupling agreeing with b on all
// rectangles.
inline SetFunction build_polymatroid_coupling(const CouplingSpec& spec) {
  if (!check_property(spec.phi1, Property::polymatroid).holds)
    throw std::domain_error("polymatroid coupling requires phi1 to be a polymatroid function");
  if (!check_property(spec.phi2, Property::polymatroid).holds)
    throw std::domain_error("polymatroid coupling requires phi2 to be a polymatroid function");
  detail::validate_b_spec(spec);
  detail::validate_base_vertex(spec.mu1, spec.phi1, "mu1");
  detail::validate_base_vertex(spec.mu2, spec.phi2, "mu2");

  ProductGround pg = make_product_ground(spec.phi1.ground(), spec.phi2.ground());
  std::vector<Rat> table = detail::b_table(spec, pg);
  detail::superset_min_transform(table, pg.n1 * pg.n2);
  return SetFunction(pg.product, std::move(table));
}

// Matroid coupling of Cor-style form: rank r(Z) = min over W ⊇ Z of
//   Σ_{e1∈B1} r2(π2(W_{e1})) + Σ_{e2∈B2} r1(π1(W^{e2})) − |W ∩ (B1×B2)|.
// Every element of (S1∖B1)×(S2∖B2) is a loop; r(Y1×Y2) = r1(Y1)·r2(Y2)
// whenever Y1 ⊆ B1 or Y2 ⊆ B2.
inline Matroid build_matroid_coupling(const Matroid& m1, const Matroid& m2, Mask basis1,
                                      Mask basis2) {
  m1.ground().require_mask(basis1);
  m2.ground().require_mask(basis2);
  if (m1.rank(basis1) != popcount(basis1) || m1.rank(basis1) != m1.rank_full())
    throw std::domain_error("basis1 is not a basis of the first matroid");
  if (m2.rank(basis2) != popcount(basis2) || m2.rank(basis2) != m2.rank_full())
    throw std::domain_error("basis2 is not a basis of the second matroid");

  ProductGround pg = make_product_ground(m1.ground(), m2.ground());
  const int n1 = pg.n1, n2 = pg.n2, n = n1 * n2;

  std::vector<std::int32_t> r1(std::size_t{1} << n1), r2(std::size_t{1} << n2);
  for (Mask x = 0; x < r1.size(); ++x) r1[x] = static_cast<std::int32_t>(m1.rank(x));
  for (Mask x = 0; x < r2.size(); ++x) r2[x] = static_cast<std::int32_t>(m2.rank(x));
  const Mask basis_rect = pg.rectangle(basis1, basis2);

  auto b_int = [pg, r1, r2, basis1, basis2, basis_rect](Mask w) {
    int v = 0;
    for (int e1 = 0; e1 < pg.n1; ++e1)
      if (has_bit(basis1, e1)) v += r2[pg.row_of(w, e1)];
    for (int e2 = 0; e2 < pg.n2; ++e2)
      if (has_bit(basis2, e2)) v += r1[pg.col_of(w, e2)];
    return v - popcount(w & basis_rect);
  };

  // Small products: one dense pass of b plus the superset-min DP (the brute
  // force amortized over all masks). Larger products answer queries lazily.
  if (n <= 20) {
    auto table = std::make_shared<std::vector<std::int32_t>>(std::size_t{1} << n);
    auto built = std::make_shared<std::once_flag>();
    auto fn = [table, built, b_int, n](Mask z) {
      std::call_once(*built, [&] {
        for (Mask w = 0; w < table->size(); ++w) (*table)[w] = b_int(w);
        detail::superset_min_transform(*table, n);
      });
      return static_cast<int>((*table)[z]);
    };
    return Matroid::from_oracle(pg.product, "coupling", fn, false);
  }

  const Mask complement_universe = full_mask(n);
  auto fn = [b_int, complement_universe](Mask z) {
    int best = -1;
    for_each_submask(complement_universe & ~z, [&](Mask t) {
      const int v = b_int(z | t);
      if (best < 0 || v < best) best = v;
    });
    return best;
  };
  return Matroid::from_oracle(pg.product, "coupling", fn, true);
}

// Left fold of pairwise matroid couplings with greedily chosen bases.
inline Matroid couple_many(const std::vector<Matroid>& matroids) {
  if (matroids.empty()) throw std::domain_error("couple_many requires at least one matroid");
  Matroid acc = matroids.front();
  for (std::size_t i = 1; i < matroids.size(); ++i) {
    if (acc.n() * matroids[i].n() > GroundSet::kMaxElements)
      throw capacity_error("iterated coupling exceeds the 24-element cap");
    acc = build_matroid_coupling(acc, matroids[i], find_basis(acc), find_basis(matroids[i]));
  }
  return acc;
}

// Rank formula of the proper amalgam of N1 and N2 over their common
// restriction N0:
//   r(Z) = min{ r1(Y∩T1) + r2(Y∩T2) − r0(Y∩T1∩T2) : Y ⊇ Z }.
// The result is the amalgam's rank function whenever it is submodular.
inline SetFunction amalgam_rank(const Matroid& n0, const Matroid& n1, const Matroid& n2) {
  // union ground: T1 in order, then T2 ∖ T1 in order
  std::vector<std::string> labels = n1.ground().labels();
  for (const auto& l : n2.ground().labels())
    if (n1.ground().index_of(l) < 0) labels.push_back(l);
  if (static_cast<int>(labels.size()) > GroundSet::kMaxElements)
    throw capacity_error("amalgam ground set exceeds the 24-element cap");
  GroundSet t(std::move(labels));

  const int tn = t.size();
  std::vector<int> in1(tn, -1), in2(tn, -1), in0(tn, -1);
  for (int i = 0; i < tn; ++i) {
    in1[i] = n1.ground().index_of(t.label(i));
    in2[i] = n2.ground().index_of(t.label(i));
    in0[i] = n0.ground().index_of(t.label(i));
  }
  for (int i = 0; i < tn; ++i) {
    const bool overlap = in1[i] >= 0 && in2[i] >= 0;
    if (overlap != (in0[i] >= 0))
      throw std::domain_error("N0 must be over exactly the intersection of the two ground sets");
  }
  for (int i = 0; i < n0.n(); ++i)
    if (n1.ground().index_of(n0.ground().label(i)) < 0 ||
        n2.ground().index_of(n0.ground().label(i)) < 0)
      throw std::domain_error("N0 must be over exactly the intersection of the two ground sets");

  auto project = [tn](const std::vector<int>& map, Mask y) {
    Mask m = 0;
    for (int i = 0; i < tn; ++i)
      if (has_bit(y, i) && map[i] >= 0) m |= bit(map[i]);
    return m;
  };

  // restriction consistency: N1 and N2 must agree with N0 on the overlap
  for (Mask x = 0; x < (Mask{1} << n0.n()); ++x) {
    Mask y = 0;
    for (int i = 0; i < tn; ++i)
      if (in0[i] >= 0 && has_bit(x, in0[i])) y |= bit(i);
    const int r0 = n0.rank(x);
    if (n1.rank(project(in1, y)) != r0 || n2.rank(project(in2, y)) != r0)
      throw std::domain_error("restrictions of N1 and N2 to the overlap do not match N0");
  }

  std::vector<std::int32_t> table(std::size_t{1} << tn);
  for (Mask y = 0; y < table.size(); ++y)
    table[y] = static_cast<std::int32_t>(n1.rank(project(in1, y)) + n2.rank(project(in2, y)) -
                                         n0.rank(project(in0, y)));
  detail::superset_min_transform(table, tn);
  return SetFunction::build(t, [&](Mask y) { return Rat(table[y]); });
}

// Verdict of the coupling marginal check. side 1 means the X1 × S2 family
// failed at factor_subset, side 2 the S1 × X2 family.
struct CouplingCheck {
  bool holds = true;
  int side = 0;
  Mask factor_subset = 0;
  Rat expected, actual;
};

inline CouplingCheck verify_coupling(const SetFunction& phi, const SetFunction& phi1,
                                     const SetFunction& phi2) {
  if (phi.n() != phi1.n() * phi2.n())
    throw std::domain_error("product table size does not match the factor ground sets");
  ProductGround pg = make_product_ground(phi1.ground(), phi2.ground());
  const Mask full2 = phi2.full(), full1 = phi1.full();
  for (Mask x1 = 0; x1 < phi1.table_size(); ++x1) {
    Rat expected = phi1(x1) * phi2(full2);
    Rat actual = phi(pg.rectangle(x1, full2));
    if (actual != expected) return {false, 1, x1, std::move(expected), std::move(actual)};
  }
  for (Mask x2 = 0; x2 < phi2.table_size(); ++x2) {
    Rat expected = phi1(full1) * phi2(x2);
    Rat actual = phi(pg.rectangle(full1, x2));
    if (actual != expected) return {false, 2, x2, std::move(expected), std::move(actual)};
  }
  return {};
}

}  // namespace subcoup
