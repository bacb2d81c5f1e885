#pragma once

#include <map>
#include <utility>
#include <vector>

#include "subcoup/set_function.hpp"

namespace subcoup {

// Coverage functions are stored through their extreme-ray coefficients:
// f(X) = Σ_{A∩X≠∅} c_A with all c_A ≥ 0. Zero coefficients are omitted.
struct CoverageDecomposition {
  GroundSet ground;
  std::map<Mask, Rat> coefficients;  // keys are nonempty masks, values > 0
};

struct CoverageResult {
  bool is_coverage = false;
  CoverageDecomposition decomposition;  // meaningful when is_coverage
  Mask witness = 0;                     // smallest A with c_A < 0 otherwise
  Rat witness_value;                    // the negative coefficient
};

namespace detail {

// In-place subset-sum (zeta) transform: out[Y] = Σ_{B⊆Y} in[B].
inline void zeta_transform(std::vector<Rat>& v, int n) {
  for (int i = 0; i < n; ++i)
    for (Mask y = 0; y < v.size(); ++y)
      if (has_bit(y, i)) v[y] += v[y ^ bit(i)];
}

// Inverse of the zeta transform.
inline void moebius_transform(std::vector<Rat>& v, int n) {
  for (int i = 0; i < n; ++i)
    for (Mask y = 0; y < v.size(); ++y)
      if (has_bit(y, i)) v[y] -= v[y ^ bit(i)];
}

}  // namespace detail

// Inverts f against the extreme rays: with g(Y) = f(S) - f(S∖Y), the
// coefficients are c_A = Σ_{B⊆A} (-1)^{|A∖B|} g(B). f is a coverage function
// exactly when every c_A is nonnegative; the reconstruction identity
// Σ_{A∩X≠∅} c_A = f(X) then holds exactly.
inline CoverageResult coverage_decompose(const SetFunction& f) {
  if (f(0) != 0) throw std::domain_error("coverage decomposition requires f(∅) = 0");
  const int n = f.n();
  const Mask full = f.full();

  std::vector<Rat> c(f.table_size());
  for (Mask y = 0; y < f.table_size(); ++y) c[y] = f(full) - f(full & ~y);
  detail::moebius_transform(c, n);

  CoverageResult out;
  for (Mask a = 1; a < c.size(); ++a) {
    if (c[a] < 0) {
      out.is_coverage = false;
      out.witness = a;
      out.witness_value = c[a];
      return out;
    }
  }
  out.is_coverage = true;
  out.decomposition.ground = f.ground();
  for (Mask a = 1; a < c.size(); ++a)
    if (c[a] != 0) out.decomposition.coefficients.emplace(a, std::move(c[a]));
  return out;
}

// X ↦ Σ_{A∩X≠∅} c_A.
inline SetFunction coverage_reconstruct(const CoverageDecomposition& d, const GroundSet& ground) {
  std::vector<Rat> g(std::size_t{1} << ground.size(), Rat(0));
  for (const auto& [a, coeff] : d.coefficients) {
    if (a == 0) throw std::domain_error("coverage coefficient key must be a nonempty set");
    if (a >= g.size()) throw std::domain_error("coverage coefficient key outside ground set");
    if (coeff < 0) throw std::domain_error("coverage coefficients must be nonnegative");
    g[a] += coeff;
  }
  detail::zeta_transform(g, ground.size());
  const Mask full = ground.full();
  const Rat total = g[full];
  return SetFunction::build(ground, [&](Mask x) { return total - g[full & ~x]; });
}

}  // namespace subcoup
