#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "subcoup/errors.hpp"
#include "subcoup/set_function.hpp"

namespace subcoup {

enum class SfmAlgorithm { brute, minnorm };

inline const char* algorithm_name(SfmAlgorithm a) {
  return a == SfmAlgorithm::brute ? "brute" : "minnorm";
}

// Outcome of submodular minimization. `minimizer` is the lattice-minimum
// (inclusion-wise minimal) minimizer, which is well-defined for submodular
// inputs.
struct MinimizationResult {
  Mask minimizer = 0;
  Rat min_value;
  SfmAlgorithm algorithm = SfmAlgorithm::brute;
  long iterations = 0;
};

using SetFunctionOracle = std::function<Rat(Mask)>;

namespace detail {

inline MinimizationResult minimize_brute_oracle(int n, const SetFunctionOracle& f) {
  if (n > GroundSet::kMaxElements)
    throw capacity_error("brute-force minimization is capped at 24 elements");
  MinimizationResult out;
  out.algorithm = SfmAlgorithm::brute;
  Rat best = f(0);
  Mask meet = 0;
  Mask first = 0;
  const Mask size = full_mask(n);
  for (Mask x = 1; x <= size && size != 0; ++x) {
    Rat v = f(x);
    if (v < best) {
      best = v;
      meet = x;
      first = x;
    } else if (v == best) {
      meet &= x;
    }
  }
  out.iterations = static_cast<long>(size) + 1;
  // the intersection of all minimizers is itself a minimizer when f is
  // submodular; fall back to the first minimizer found otherwise
  out.minimizer = (f(meet) == best) ? meet : first;
  out.min_value = best;
  return out;
}

// One greedy vertex of the base polytope: order elements ascending by weight
// (ties by index) and take marginals. Minimizes <w, v> over B(f).
inline std::vector<double> greedy_vertex(int n, const SetFunctionOracle& f,
                                         const std::vector<double>& w) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });
  std::vector<double> v(n);
  Mask prefix = 0;
  Rat prev(0);
  for (int e : order) {
    Rat cur = f(prefix | bit(e));
    const Rat marginal = cur - prev;
    v[e] = marginal.get_d();
    prev = std::move(cur);
    prefix |= bit(e);
  }
  return v;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Minimum-norm point of the affine hull of `vertices` via Wolfe's trick:
// solve (11^T + G) a = 1 with G the Gram matrix, then normalize. Returns
// false when the system is numerically singular (affinely dependent set);
// `drop` then names a column to discard.
inline bool affine_minimizer(const std::vector<std::vector<double>>& vertices,
                             std::vector<double>& alpha, int& drop) {
  const int m = static_cast<int>(vertices.size());
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a[i][j] = 1.0 + dot(vertices[i], vertices[j]);
    a[i][m] = 1.0;
  }
  std::vector<int> where(m, -1);
  for (int col = 0; col < m; ++col) {
    int pivot = -1;
    double best = 1e-12;
    for (int row = col; row < m; ++row)
      if (std::fabs(a[row][col]) > best) {
        best = std::fabs(a[row][col]);
        pivot = row;
      }
    if (pivot < 0) {
      drop = col;
      return false;
    }
    std::swap(a[col], a[pivot]);
    for (int row = 0; row < m; ++row) {
      if (row == col) continue;
      const double factor = a[row][col] / a[col][col];
      for (int k = col; k <= m; ++k) a[row][k] -= factor * a[col][k];
    }
    where[col] = col;
  }
  alpha.assign(m, 0.0);
  double total = 0;
  for (int i = 0; i < m; ++i) {
    alpha[i] = a[i][m] / a[i][i];
    total += alpha[i];
  }
  if (std::fabs(total) < 1e-12) {
    drop = m - 1;
    return false;
  }
  for (double& v : alpha) v /= total;
  return true;
}

// Fujishige–Wolfe minimum-norm point over the base polytope, doubles inside,
// exact rational evaluation of the reported minimizer. `integer_valued`
// enables the gap-<1 optimality certificate.
inline MinimizationResult minimize_minnorm_oracle(int n, const SetFunctionOracle& f, double tol,
                                                  bool integer_valued) {
  if (f(0) != 0) throw std::domain_error("minimize_minnorm requires f(∅) = 0");
  MinimizationResult out;
  out.algorithm = SfmAlgorithm::minnorm;
  if (n == 0) {
    out.min_value = Rat(0);
    return out;
  }

  std::vector<std::vector<double>> vertices;
  std::vector<double> lambda;
  std::vector<double> x = greedy_vertex(n, f, std::vector<double>(n, 0.0));
  vertices.push_back(x);
  lambda.push_back(1.0);

  const long cap = 10L * n * n + 20;
  long major = 0;
  for (; major < cap; ++major) {
    std::vector<double> q = greedy_vertex(n, f, x);
    const double xx = dot(x, x);
    if (xx - dot(x, q) <= tol * (1.0 + std::fabs(xx))) break;
    vertices.push_back(q);
    lambda.push_back(0.0);

    for (long minor = 0; minor < cap; ++minor) {
      std::vector<double> alpha;
      int drop = -1;
      if (!affine_minimizer(vertices, alpha, drop)) {
        vertices.erase(vertices.begin() + drop);
        lambda.erase(lambda.begin() + drop);
        continue;
      }
      const double min_alpha = *std::min_element(alpha.begin(), alpha.end());
      if (min_alpha > -1e-12) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] < lambda[i])
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      for (std::size_t i = 0; i < alpha.size(); ++i)
        lambda[i] = theta * alpha[i] + (1.0 - theta) * lambda[i];
      for (int i = static_cast<int>(vertices.size()) - 1; i >= 0; --i)
        if (lambda[i] <= 1e-12 && vertices.size() > 1) {
          vertices.erase(vertices.begin() + i);
          lambda.erase(lambda.begin() + i);
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (int e = 0; e < n; ++e) x[e] += lambda[i] * vertices[i][e];
  }
  out.iterations = major;
  if (major >= cap) {
    double lower = 0;
    for (double v : x) lower += std::min(v, 0.0);
    throw solver_error("min-norm point did not converge within " + std::to_string(cap) +
                       " iterations; best lower bound " + std::to_string(lower));
  }

  Mask minimizer = 0;
  for (int e = 0; e < n; ++e)
    if (x[e] < -tol) minimizer |= bit(e);
  out.minimizer = minimizer;
  out.min_value = f(minimizer);

  if (integer_valued) {
    double lower = 0;
    for (double v : x) lower += std::min(v, 0.0);
    if (out.min_value.get_d() - lower >= 1.0 - 1e-6)
      throw solver_error("min-norm certificate gap >= 1; lower bound " + std::to_string(lower));
  }
  return out;
}

}  // namespace detail

// Global minimum by full enumeration; the reported minimizer is the
// intersection of all minimizers.
inline MinimizationResult minimize_brute(const SetFunction& f) {
  return detail::minimize_brute_oracle(f.n(), [&](Mask x) { return f(x); });
}

inline MinimizationResult minimize_minnorm(const SetFunction& f, double tol = 1e-9) {
  return detail::minimize_minnorm_oracle(
      f.n(), [&](Mask x) { return f(x); }, tol, f.is_integer_valued());
}

inline MinimizationResult minimize(const SetFunction& f, SfmAlgorithm alg, double tol = 1e-9) {
  return alg == SfmAlgorithm::brute ? minimize_brute(f) : minimize_minnorm(f, tol);
}

namespace detail {

// min f(Z') over Z' ⊇ Z for an oracle over n elements.
inline MinimizationResult minimize_over_supersets_oracle(int n, const SetFunctionOracle& f, Mask z,
                                                         SfmAlgorithm alg, double tol,
                                                         bool integer_valued) {
  if (z > full_mask(n)) throw std::domain_error("constraint set outside the ground set");
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (!has_bit(z, i)) rest.push_back(i);
  const int m = static_cast<int>(rest.size());
  auto embed = [&](Mask w) {
    Mask e = z;
    for (int j = 0; j < m; ++j)
      if (has_bit(w, j)) e |= bit(rest[j]);
    return e;
  };

  MinimizationResult inner;
  if (alg == SfmAlgorithm::brute) {
    inner = minimize_brute_oracle(m, [&](Mask w) { return f(embed(w)); });
  } else {
    const Rat offset = f(z);
    inner = minimize_minnorm_oracle(
        m, [&](Mask w) { return f(embed(w)) - offset; }, tol, integer_valued);
    inner.min_value += offset;
  }
  MinimizationResult out;
  out.algorithm = alg;
  out.iterations = inner.iterations;
  out.minimizer = embed(inner.minimizer);
  out.min_value = std::move(inner.min_value);
  return out;
}

}  // namespace detail

// Minimizes g(W) = f(Z ∪ W) over W ⊆ S∖Z and returns the minimizer as a
// superset of Z. g inherits submodularity from f.
inline MinimizationResult minimize_over_supersets(const SetFunction& f, Mask z,
                                                  SfmAlgorithm alg = SfmAlgorithm::brute,
                                                  double tol = 1e-9) {
  f.ground().require_mask(z);
  return detail::minimize_over_supersets_oracle(
      f.n(), [&](Mask x) { return f(x); }, z, alg, tol, f.is_integer_valued());
}

}  // namespace subcoup
