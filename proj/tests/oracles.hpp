#pragma once

// Independent verification routes used by the tests.  Nothing here shares
// code with the library under test: polynomial integrals are evaluated in
// closed form via exact coefficient arithmetic in long double, and general
// integrals through composite fixed-order Gauss-Legendre panels, so a bug
// in the adaptive quadrature cannot hide behind itself.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Exact polynomial arithmetic (ascending monomial coefficients)
// ---------------------------------------------------------------------------

using Poly = std::vector<long double>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0L};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<long double>(i);
  return out;
}

inline Poly poly_antiderivative(const Poly& p) {
  Poly out(p.size() + 1, 0.0L);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / static_cast<long double>(i + 1);
  return out;
}

inline long double poly_eval(const Poly& p, long double x) {
  long double acc = 0.0L;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// Exact definite integral of a polynomial on [a, b].
inline long double poly_integral(const Poly& p, long double a, long double b) {
  const Poly anti = poly_antiderivative(p);
  return poly_eval(anti, b) - poly_eval(anti, a);
}

// ---------------------------------------------------------------------------
// Composite Gauss-Legendre quadrature (5-point panels)
// ---------------------------------------------------------------------------

/// Integrate f over [a, b] with `panels` equal 5-point Gauss-Legendre
/// panels.  Degree-9 exactness per panel; for smooth integrands 64 panels
/// reach full double precision.
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                             std::size_t panels = 64) {
  // Nodes/weights for [-1, 1], computed from the closed forms
  // x = ±(1/3) sqrt(5 ∓ 2 sqrt(10/7)), w = (322 ± 13 sqrt(70)) / 900.
  const long double s70 = std::sqrt(70.0L);
  const long double s107 = std::sqrt(10.0L / 7.0L);
  const long double node[5] = {
      -std::sqrt(5.0L + 2.0L * s107) / 3.0L, -std::sqrt(5.0L - 2.0L * s107) / 3.0L, 0.0L,
      std::sqrt(5.0L - 2.0L * s107) / 3.0L, std::sqrt(5.0L + 2.0L * s107) / 3.0L};
  const long double weight[5] = {(322.0L - 13.0L * s70) / 900.0L,
                                 (322.0L + 13.0L * s70) / 900.0L, 128.0L / 225.0L,
                                 (322.0L + 13.0L * s70) / 900.0L,
                                 (322.0L - 13.0L * s70) / 900.0L};
  const long double h = (static_cast<long double>(b) - a) / panels;
  long double total = 0.0L;
  for (std::size_t p = 0; p < panels; ++p) {
    const long double mid = a + h * (static_cast<long double>(p) + 0.5L);
    long double panel = 0.0L;
    for (int k = 0; k < 5; ++k) {
      panel += weight[k] * f(static_cast<double>(mid + 0.5L * h * node[k]));
    }
    total += panel * 0.5L * h;
  }
  return static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Misc helpers
// ---------------------------------------------------------------------------

/// Symmetric finite-difference derivative.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Maximum of f over a uniform grid of n+1 points on [a, b].
inline double grid_max(const std::function<double(double)>& f, double a, double b,
                       std::size_t n) {
  double best = f(a);
  for (std::size_t i = 1; i <= n; ++i) {
    best = std::max(best, f(a + (b - a) * static_cast<double>(i) / static_cast<double>(n)));
  }
  return best;
}

/// Argmax counterpart of grid_max.
inline double grid_argmax(const std::function<double(double)>& f, double a, double b,
                          std::size_t n) {
  double best = f(a);
  double arg = a;
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    const double v = f(x);
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  return arg;
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

}  // namespace oracle
