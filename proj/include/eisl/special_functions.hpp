#pragma once

// Special functions for the Fourier expansion of Eisenstein series:
// complex Gamma and its reciprocal, digamma, K-Bessel of real or imaginary
// order, E1, the closed Whittaker forms, and the oscillatory t-integral that
// defines the archimedean factor of a Fourier coefficient.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "eisl/errors.hpp"
#include "eisl/quadrature.hpp"

namespace eisl {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

namespace detail {
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// log Gamma for Re z >= 1/2 (Lanczos, g = 7).
inline cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}
}  // namespace detail

/// Gamma(z) for complex z; pole_error at non-positive integers.
inline cplx gamma(cplx z) {
  if (detail::is_nonpositive_integer(z)) throw pole_error("gamma: pole at a non-positive integer");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * std::exp(detail::lanczos_log_gamma(1.0 - z)));
  return std::exp(detail::lanczos_log_gamma(z));
}

/// 1/Gamma(s): entire, exactly zero at 0, -1, -2, ...
inline cplx reciprocal_gamma(cplx s) {
  if (detail::is_nonpositive_integer(s)) return {0.0, 0.0};
  if (s.real() < 0.5) return std::sin(kPi * s) * std::exp(detail::lanczos_log_gamma(1.0 - s)) / kPi;
  return std::exp(-detail::lanczos_log_gamma(s));
}

/// Digamma for real x > 0: upward recurrence to x >= 12, then the
/// Bernoulli asymptotic series.
inline double digamma(double x) {
  if (x <= 0.0) throw domain_error("digamma: x must be positive");
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // B_{2k} / (2k) for k = 1..7
  constexpr std::array<double, 7> c = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                       1.0 / 132, -691.0 / 32760, 1.0 / 12};
  double series = 0.0, power = inv2;
  for (double ck : c) {
    series += ck * power;
    power *= inv2;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

struct DigammaCheck {
  int kappa;
  double series_value;      // digamma((1 + kappa)/2) from the series
  double closed_form;       // -gamma_0 - 2 (1 - kappa) log 2
  double printed_constant;  // -log 8 - gamma_0 - (-1)^kappa pi/2
  double defect;            // |series_value - closed_form|
  double printed_defect;    // |series_value - printed_constant|
};

/// Compares the digamma series at (1 + kappa)/2 with its closed form, and
/// records the offset of the constant -log 8 - gamma_0 - (-1)^kappa pi/2,
/// which is digamma((1 + 2 kappa)/4) rather than digamma((1 + kappa)/2).
inline DigammaCheck digamma_halfint_check(int kappa) {
  if (kappa != 0 && kappa != 1) throw domain_error("digamma_halfint_check: kappa must be 0 or 1");
  DigammaCheck r{};
  r.kappa = kappa;
  r.series_value = digamma(0.5 * (1 + kappa));
  r.closed_form = -kEulerGamma - 2.0 * (1 - kappa) * std::numbers::ln2;
  r.printed_constant = -std::log(8.0) - kEulerGamma - (kappa == 0 ? 1.0 : -1.0) * kPi / 2;
  r.defect = std::abs(r.series_value - r.closed_form);
  r.printed_defect = std::abs(r.series_value - r.printed_constant);
  return r;
}

/// Scaled K-Bessel e^y K_nu(y) from the integral
///   int_0^inf exp(-y (cosh u - 1)) cosh(nu u) du,
/// with nu real or purely imaginary (cos(tau u) for nu = i tau). The upper
/// limit is chosen so the analytic tail bound is below the tolerance; the
/// bound is added to the reported error estimate.
inline QuadratureResult<double> bessel_k_scaled(cplx order, double y, const QuadratureSpec& spec = {}) {
  if (!(y > 0.0)) throw domain_error("bessel_k: y must be positive");
  if (order.real() != 0.0 && order.imag() != 0.0)
    throw unsupported_case("bessel_k: order must be real or purely imaginary");
  const bool imaginary = order.real() == 0.0 && order.imag() != 0.0;
  const double nu = imaginary ? order.imag() : std::abs(order.real());
  const double growth = imaginary ? 0.0 : nu;

  auto log_envelope = [&](double u) { return -y * (std::cosh(u) - 1.0) + growth * u; };
  double upper = 1.0;
  const double target = std::log(std::max(spec.abs_tol * 1e-3, 1e-300));
  while (log_envelope(upper) > target || y * std::sinh(upper) - growth < 1.0) upper *= 1.2;
  const double tail = std::exp(log_envelope(upper)) / (y * std::sinh(upper) - growth);

  auto f = [&](double u) {
    const double weight = std::exp(-y * (std::cosh(u) - 1.0));
    return imaginary ? weight * std::cos(nu * u) : weight * std::cosh(nu * u);
  };
  auto r = integrate(f, 0.0, upper, spec);
  r.error_estimate += tail;
  return r;
}

/// K_nu(y) with its quadrature error estimate.
inline QuadratureResult<double> bessel_k_result(cplx order, double y, const QuadratureSpec& spec = {}) {
  // relative tolerance on the scaled value carries over to K itself
  auto r = bessel_k_scaled(order, y, spec);
  const double scale = std::exp(-y);
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

inline double bessel_k(cplx order, double y, const QuadratureSpec& spec = {}) {
  auto r = bessel_k_result(order, y, spec);
  if (!r.converged) throw quadrature_failure("bessel_k", r.error_estimate);
  return r.value;
}

/// E1(x) = int_x^inf e^-u / u du: power series for x <= 1, Lentz continued
/// fraction otherwise.
inline double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw domain_error("exp_integral_e1: x must be positive");
  if (x <= 1.0) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 100; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) - sum;
  }
  // E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
  constexpr double tiny = 1e-300;
  double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

/// The first index of W_{alpha, nu}; only the three cases with closed forms exist.
enum class WhittakerIndex { Zero, PlusHalf, MinusHalf };

/// Closed-form Whittaker functions, argument w = 4 pi |m| y:
///   W_{0,nu}(w)      = sqrt(w/pi) K_nu(w/2)   (nu real or purely imaginary),
///   W_{1/2,0}(w)     = sqrt(w) e^{-w/2},
///   W_{-1/2,0}(w)    = sqrt(w) e^{w/2} E1(w).
inline double whittaker_closed(WhittakerIndex alpha, cplx nu, double w, const QuadratureSpec& spec = {}) {
  if (!(w > 0.0)) throw domain_error("whittaker_closed: argument must be positive");
  switch (alpha) {
    case WhittakerIndex::Zero:
      if (nu.real() != 0.0 && nu.imag() != 0.0)
        throw unsupported_case("whittaker_closed: W_{0,nu} needs nu real or purely imaginary");
      return std::sqrt(w / kPi) * bessel_k(nu, 0.5 * w, spec);
    case WhittakerIndex::PlusHalf:
      if (nu != cplx{0.0, 0.0}) throw unsupported_case("whittaker_closed: W_{1/2,nu} only for nu = 0");
      return std::sqrt(w) * std::exp(-0.5 * w);
    case WhittakerIndex::MinusHalf:
      if (nu != cplx{0.0, 0.0}) throw unsupported_case("whittaker_closed: W_{-1/2,nu} only for nu = 0");
      // e^{w/2} E1(w) = e^{-w/2} (e^w E1(w)); the scaled form avoids overflow
      return std::sqrt(w) * std::exp(-0.5 * w) * (exp_integral_e1(w) * std::exp(w));
  }
  throw unsupported_case("whittaker_closed: unknown index");
}

namespace detail {

// z^a with arg(z) taken in [arg_lo, arg_lo + 2 pi).
inline cplx cpow_branch(cplx z, cplx a, double arg_lo) {
  double arg = std::arg(z);
  while (arg < arg_lo) arg += 2 * kPi;
  while (arg >= arg_lo + 2 * kPi) arg -= 2 * kPi;
  const cplx log_z{std::log(std::abs(z)), arg};
  return std::exp(a * log_z);
}

}  // namespace detail

/// The archimedean integral
///   int_R ((t+i)/|t+i|)^{-kappa} e(-m y t) |t+i|^{-2s} dt
/// for Re(s) > 1/2. The integrand is continued analytically as
/// (t+i)^{-s-kappa/2} (t-i)^{-s+kappa/2}. The central range [-A, A] is split
/// into panels of width at most 1/(8|m|y); each tail is moved onto a vertical
/// ray where the oscillation becomes e^{-2 pi |m y| u} decay.
inline QuadratureResult<cplx> whittaker_via_t_integral(int kappa, cplx s, long m, double y,
                                                        const QuadratureSpec& spec = {}) {
  if (kappa != 0 && kappa != 1) throw domain_error("whittaker_via_t_integral: kappa must be 0 or 1");
  if (!(s.real() > 0.5)) throw domain_error("whittaker_via_t_integral: Re(s) must exceed 1/2");
  if (!(y > 0.0)) throw domain_error("whittaker_via_t_integral: y must be positive");
  if (m == 0) throw domain_error("whittaker_via_t_integral: m must be nonzero");

  const double omega = 2.0 * kPi * static_cast<double>(m) * y;
  const double dir = omega > 0 ? 1.0 : -1.0;
  const cplx a_plus = -s - 0.5 * kappa;   // exponent on (t + i)
  const cplx a_minus = -s + 0.5 * kappa;  // exponent on (t - i)
  // Closing downward (omega > 0) needs the cut of (t+i)^a to point down,
  // closing upward needs the cut of (t-i)^b to point up. Both branches agree
  // with the principal one on the real line.
  const double lo_plus = omega > 0 ? -kPi / 2 : -kPi;
  const double lo_minus = omega > 0 ? -kPi : -1.5 * kPi;
  auto g = [&](cplx t) {
    return detail::cpow_branch(t + cplx{0, 1}, a_plus, lo_plus) *
           detail::cpow_branch(t - cplx{0, 1}, a_minus, lo_minus);
  };

  QuadratureSpec piece = spec;
  const double A = 2.0;
  const double width = std::min(0.25, 1.0 / (8.0 * std::abs(static_cast<double>(m)) * y));
  const int panels = static_cast<int>(std::ceil(2 * A / width));
  piece.abs_tol = spec.abs_tol / (panels + 2);

  QuadratureResult<cplx> total;
  total.value = {0.0, 0.0};
  auto central = [&](double t) { return g(cplx{t, 0.0}) * std::exp(cplx{0.0, -omega * t}); };
  for (int k = 0; k < panels; ++k) {
    const double lo = -A + 2 * A * k / panels, hi = -A + 2 * A * (k + 1) / panels;
    auto r = integrate(central, lo, hi, piece);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }

  // Ray integrals: t = +-A - i dir u, u in [0, U].
  const double decay = std::abs(omega);
  const double max_phase = 1.5 * kPi * (std::abs(a_plus.imag()) + std::abs(a_minus.imag()));
  const double bound0 = std::pow(A, -2.0 * s.real()) * std::exp(max_phase);
  const double upper = (std::log(std::max(bound0 / (decay * piece.abs_tol * 1e-2), 1.0)) + 1.0) / decay;
  const double truncation = bound0 * std::exp(-decay * upper) / decay;
  const cplx jac{0.0, -dir};
  auto right = [&](double u) {
    const cplx t{A, -dir * u};
    return g(t) * std::exp(cplx{0.0, -omega} * t) * jac;
  };
  auto left = [&](double u) {
    const cplx t{-A, -dir * u};
    return -g(t) * std::exp(cplx{0.0, -omega} * t) * jac;
  };
  auto add_ray = [&](const auto& ray) {
    auto r = integrate(ray, 0.0, upper, piece);
    total.value += r.value;
    total.error_estimate += r.error_estimate + truncation;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  };
  add_ray(right);
  add_ray(left);
  const double allowed = std::max(spec.abs_tol, spec.rel_tol * std::abs(total.value));
  if (!total.converged || total.error_estimate > allowed)
    throw quadrature_failure("whittaker_via_t_integral", total.error_estimate);
  return total;
}

}  // namespace eisl
