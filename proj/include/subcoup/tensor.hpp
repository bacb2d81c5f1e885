#pragma once

#include <array>
#include <atomic>
#include <thread>
#include <string>
#include <utility>
#include <vector>

#include "subcoup/coupling.hpp"
#include "subcoup/coverage.hpp"
#include "subcoup/errors.hpp"
#include "subcoup/matroid.hpp"
#include "subcoup/set_function.hpp"

namespace subcoup {

struct ConditionCheck {
  bool holds = true;
  std::vector<Mask> witness;  // family-specific masks of the first failure
  std::string detail;
};

// Equivalent tensor-product conditions, each evaluated exhaustively:
// (i) all rectangles multiply, (ii) single-element fibers multiply and the
// full set multiplies, (iii) coupling plus multiplying singletons.
struct TensorVerdict {
  ConditionCheck condition_i, condition_ii, condition_iii;
  bool is_tensor = false;
};

inline TensorVerdict check_tensor(const SetFunction& phi, const SetFunction& phi1,
                                  const SetFunction& phi2) {
  if (phi.n() != phi1.n() * phi2.n())
    throw std::domain_error("product table size does not match the factor ground sets");
  ProductGround pg = make_product_ground(phi1.ground(), phi2.ground());
  TensorVerdict out;

  for (Mask y1 = 0; y1 < phi1.table_size() && out.condition_i.holds; ++y1)
    for (Mask y2 = 0; y2 < phi2.table_size(); ++y2)
      if (phi(pg.rectangle(y1, y2)) != phi1(y1) * phi2(y2)) {
        out.condition_i = {false, {y1, y2}, "phi(Y1×Y2) != phi1(Y1)·phi2(Y2)"};
        break;
      }

  for (int e1 = 0; e1 < pg.n1 && out.condition_ii.holds; ++e1)
    for (Mask y2 = 0; y2 < phi2.table_size(); ++y2)
      if (phi(pg.rectangle(bit(e1), y2)) != phi1(bit(e1)) * phi2(y2)) {
        out.condition_ii = {false, {bit(e1), y2}, "phi({e1}×Y2) != phi1(e1)·phi2(Y2)"};
        break;
      }
  for (int e2 = 0; e2 < pg.n2 && out.condition_ii.holds; ++e2)
    for (Mask y1 = 0; y1 < phi1.table_size(); ++y1)
      if (phi(pg.rectangle(y1, bit(e2))) != phi1(y1) * phi2(bit(e2))) {
        out.condition_ii = {false, {y1, bit(e2)}, "phi(Y1×{e2}) != phi1(Y1)·phi2(e2)"};
        break;
      }
  if (out.condition_ii.holds &&
      phi(phi.full()) != phi1(phi1.full()) * phi2(phi2.full()))
    out.condition_ii = {false, {phi1.full(), phi2.full()}, "phi(S) != phi1(S1)·phi2(S2)"};

  CouplingCheck cc = verify_coupling(phi, phi1, phi2);
  if (!cc.holds) {
    out.condition_iii = {false,
                         {cc.factor_subset},
                         cc.side == 1 ? "not a coupling (X1×S2 family)"
                                      : "not a coupling (S1×X2 family)"};
  } else {
    for (int e1 = 0; e1 < pg.n1 && out.condition_iii.holds; ++e1)
      for (int e2 = 0; e2 < pg.n2; ++e2)
        if (phi(pg.rectangle(bit(e1), bit(e2))) != phi1(bit(e1)) * phi2(bit(e2))) {
          out.condition_iii = {false, {bit(e1), bit(e2)},
                               "phi((e1,e2)) != phi1(e1)·phi2(e2)"};
          break;
        }
  }

  out.is_tensor = out.condition_i.holds;
  return out;
}

inline TensorVerdict check_tensor(const Matroid& m, const Matroid& m1, const Matroid& m2) {
  return check_tensor(m.rank_table(), m1.rank_table(), m2.rank_table());
}

// Tensor product of two linear matroids over the same prime field, via the
// Kronecker product of their representing matrices; columns in row-major
// product order.
inline Matroid kronecker_tensor(const Matroid& m1, const Matroid& m2) {
  const auto* r1 = m1.linear_representation();
  const auto* r2 = m2.linear_representation();
  if (r1 == nullptr || r2 == nullptr)
    throw std::domain_error("kronecker_tensor requires linear matroids");
  if (r1->p != r2->p)
    throw std::domain_error("kronecker_tensor requires matroids over the same field");
  ProductGround pg = make_product_ground(m1.ground(), m2.ground());

  const int d1 = static_cast<int>(r1->matrix.size());
  const int d2 = static_cast<int>(r2->matrix.size());
  std::vector<std::vector<int>> kron(static_cast<std::size_t>(d1) * d2,
                                     std::vector<int>(pg.n1 * pg.n2, 0));
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b)
      for (int i = 0; i < pg.n1; ++i)
        for (int j = 0; j < pg.n2; ++j)
          kron[a * d2 + b][i * pg.n2 + j] = r1->matrix[a][i] * r2->matrix[b][j] % r1->p;
  return Matroid::linear(r1->p, std::move(kron), pg.product);
}

// Tensor product through the coverage decomposition of phi1:
//   (phi1 ⊗ phi2)(X) = Σ_A c_A · phi2(π2((A×S2) ∩ X)).
// Exact; k-alternating whenever phi2 is.
inline SetFunction coverage_tensor(const SetFunction& phi1, const SetFunction& phi2) {
  if (phi2(0) != 0) throw std::domain_error("coverage_tensor requires phi2(∅) = 0");
  CoverageResult dec = coverage_decompose(phi1);
  if (!dec.is_coverage)
    throw std::domain_error("phi1 is not a coverage function: c_" +
                            std::to_string(dec.witness) + " = " +
                            rat_to_string(dec.witness_value));
  ProductGround pg = make_product_ground(phi1.ground(), phi2.ground());
  return SetFunction::build(pg.product, [&](Mask x) {
    Rat v(0);
    for (const auto& [a, coeff] : dec.decomposition.coefficients) {
      Mask covered = 0;
      for (int e1 = 0; e1 < pg.n1; ++e1)
        if (has_bit(a, e1)) covered |= pg.row_of(x, e1);
      v += coeff * phi2(covered);
    }
    return v;
  });
}

enum class IngletonMode { all, disjoint_only };

struct IngletonReport {
  bool holds = true;
  std::array<Mask, 4> witness{};  // A, B, C, D
  Rat lhs, rhs;
  IngletonMode mode = IngletonMode::all;
};

namespace detail {

// Scans all (C, B, A) for a fixed D, A innermost; fills `out` with the first
// (= colex-smallest for this D) violating quadruple. Value is the arithmetic
// type of the rank evaluations (exact rationals or plain integers).
template <typename Value, typename Eval>
bool ingleton_scan_fixed_d(int n, const Eval& f, IngletonMode mode, Mask d, IngletonReport& out) {
  const Mask size = full_mask(n);
  const bool disjoint = mode == IngletonMode::disjoint_only;
  for (Mask c = 0;; ++c) {
    if (disjoint && (c & d)) {
      if (c == size) break;
      continue;
    }
    for (Mask b = 0;; ++b) {
      if (disjoint && (b & (c | d))) {
        if (b == size) break;
        continue;
      }
      for (Mask a = 0;; ++a) {
        if (!(disjoint && (a & (b | c | d)))) {
          const Value lhs = f(a | b) + f(a | c) + f(a | d) + f(b | c) + f(b | d);
          const Value rhs = f(a) + f(b) + f(a | b | c) + f(a | b | d) + f(c | d);
          if (lhs < rhs) {
            out.holds = false;
            out.witness = {a, b, c, d};
            out.lhs = Rat(lhs);
            out.rhs = Rat(rhs);
            return true;
          }
        }
        if (a == size) break;
      }
      if (b == size) break;
    }
    if (c == size) break;
  }
  return false;
}

// D outermost, so the first hit is the colexicographically smallest violating
// quadruple. Multi-threaded runs shard the D axis dynamically and keep the
// smallest-D witness, which makes the reported certificate independent of the
// schedule.
template <typename Value, typename Eval>
IngletonReport ingleton_scan(int n, const Eval& f, IngletonMode mode, int threads) {
  IngletonReport out;
  out.mode = mode;
  const Mask size = full_mask(n);

  if (threads <= 1) {
    for (Mask d = 0;; ++d) {
      if (ingleton_scan_fixed_d<Value>(n, f, mode, d, out)) return out;
      if (d == size) break;
    }
    return out;
  }

  std::atomic<Mask> next{0};
  std::atomic<Mask> best_d{size + 1};
  std::vector<IngletonReport> hits(static_cast<std::size_t>(size) + 1);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const Mask d = next.fetch_add(1);
        if (d > size || d >= best_d.load()) break;
        IngletonReport local;
        local.mode = mode;
        if (ingleton_scan_fixed_d<Value>(n, f, mode, d, local)) {
          hits[d] = local;
          Mask cur = best_d.load();
          while (d < cur && !best_d.compare_exchange_weak(cur, d)) {
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  const Mask winner = best_d.load();
  if (winner <= size) return hits[winner];
  return out;
}

}  // namespace detail

// Exhaustive Ingleton check. Mode all enumerates 16^n independent quadruples
// (cap n <= 8); disjoint_only enumerates the 5^n colorings into
// {A,B,C,D,none} (cap n <= 10). First violation in the scan order is the
// colex-smallest witness.
inline IngletonReport check_ingleton(const SetFunction& f, IngletonMode mode = IngletonMode::all,
                                     int cap_override = 0, int threads = 1) {
  const int cap = cap_override > 0 ? cap_override : (mode == IngletonMode::all ? 8 : 10);
  if (f.n() > cap)
    throw capacity_error("check_ingleton capped at " + std::to_string(cap) +
                         " elements in this mode");
  auto eval = [&](Mask x) -> const Rat& { return f(x); };
  return detail::ingleton_scan<Rat>(f.n(), eval, mode, threads);
}

inline IngletonReport check_ingleton(const Matroid& m, IngletonMode mode = IngletonMode::all,
                                     int cap_override = 0, int threads = 1) {
  const int cap = cap_override > 0 ? cap_override : (mode == IngletonMode::all ? 8 : 10);
  if (m.n() > cap)
    throw capacity_error("check_ingleton capped at " + std::to_string(cap) +
                         " elements in this mode");
  std::vector<long> table(std::size_t{1} << m.n());
  for (Mask x = 0; x < table.size(); ++x) table[x] = m.rank(x);
  auto eval = [&](Mask x) { return table[x]; };
  return detail::ingleton_scan<long>(m.n(), eval, mode, threads);
}

}  // namespace subcoup
