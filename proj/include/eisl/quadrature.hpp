#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for real or complex
// integrands on finite intervals. Every call reports an error estimate.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <type_traits>
#include <vector>

#include "eisl/errors.hpp"

namespace eisl {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;

  QuadratureSpec halved() const { return {abs_tol / 2, rel_tol / 2, 2 * max_subdivisions}; }
};

template <class T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  friend bool operator<(const Segment& x, const Segment& y) { return x.error < y.error; }
};

template <class T, class F>
Segment<T> gauss_kronrod_15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const T pair = f(center - dx) + f(center + dx);
    kronrod += pair * kKronrodWeights[i];
    if (i % 2 == 1) gauss += pair * kGaussWeights[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integral of f over [a, b]. The loop bisects the segment with the largest
/// error until the summed estimate meets max(abs_tol, rel_tol * |value|).
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {})
    -> QuadratureResult<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  QuadratureResult<T> result;
  if (a == b) return result;

  std::priority_queue<detail::Segment<T>> heap;
  auto first = detail::gauss_kronrod_15<T>(f, a, b);
  T total = first.value;
  double error = first.error;
  heap.push(first);
  int evaluations = 15;
  int subdivisions = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdivisions >= spec.max_subdivisions) {
      result.converged = false;
      break;
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      result.converged = false;
      break;
    }
    auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
    evaluations += 30;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum to shed the drift of the running updates
  T resummed{};
  double err_sum = 0.0;
  while (!heap.empty()) {
    resummed += heap.top().value;
    err_sum += heap.top().error;
    heap.pop();
  }
  result.value = resummed;
  result.error_estimate = err_sum;
  result.evaluations = evaluations;
  return result;
}

/// Like integrate() but throws quadrature_failure instead of returning an
/// unconverged result.
template <class F>
auto integrate_or_throw(F&& f, double a, double b, const QuadratureSpec& spec, const char* what) {
  auto r = integrate(std::forward<F>(f), a, b, spec);
  if (!r.converged) throw quadrature_failure(what, r.error_estimate);
  return r;
}

}  // namespace eisl
