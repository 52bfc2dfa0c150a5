#pragma once

// The Maass-Selberg right-hand sides at the cusp infinity and the strip
// integral of |Lambda^T E(z, 1/2, chi)|^2 over y > 1/T, computed mode by mode
// through Parseval.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eisl/characters.hpp"
#include "eisl/eisenstein.hpp"
#include "eisl/errors.hpp"
#include "eisl/lfunctions.hpp"
#include "eisl/quadrature.hpp"
#include "eisl/sieve.hpp"
#include "eisl/special_functions.hpp"

namespace eisl {

struct ModeContribution {
  i64 m;
  double value;
};

struct StripIntegral {
  double big_t;
  double eta;
  double constant_part;
  std::vector<ModeContribution> mode_contributions;  // ascending m, negative first
  double tail_bound;
  double quadrature_error;
  double total;
  i64 mode_cutoff;

  double mode_part() const { return total - constant_part; }
};

namespace detail {

inline double k0_squared_over_u(double u) {
  const double k = bessel_k(0.0, 2.0 * kPi * u, bessel_spec());
  return k * k / u;
}

// int_a^inf K_0(2 pi u)^2 du/u <= e^{-4 pi a}/(16 pi a^2), from K_0(x) < sqrt(pi/(2x)) e^{-x}
inline double k0_tail_bound(double a) { return std::exp(-4.0 * kPi * a) / (16.0 * kPi * a * a); }

}  // namespace detail

/// I(chi, 1/T, T) = 2 log T + sum_{m != 0} |rho(m, 1/2)|^2 int_{1/T}^inf W(4 pi |m| y)^2 dy/y^2.
/// With |rho(m)|^2 = c_kappa |sigma_0(m)|^2/(q |L(1, chi)|^2 |m|):
///   kappa = 0:  4 |sigma_0(m)|^2/(q |L|^2) int_{|m|/T}^inf K_0(2 pi u)^2 du/u for each sign,
///   kappa = 1:  4 pi^2 |sigma_0(m)|^2 E1(4 pi m/T)/(q |L|^2) for m >= 1, nothing for m < 0.
inline StripIntegral strip_integral_parseval(const DirichletCharacter& chi, double big_t, double tol = 1e-9) {
  detail::require_primitive_nontrivial(chi, "strip_integral_parseval");
  if (!(big_t >= 1.0)) throw domain_error("strip_integral_parseval: T must be >= 1");
  const double q = static_cast<double>(chi.modulus());
  const int kappa = chi.parity();
  const double l_abs2 = std::norm(dirichlet_l(cplx{1.0, 0.0}, chi));
  const double norm = q * l_abs2;
  const double decay = std::exp(-4.0 * kPi / big_t);

  StripIntegral out{};
  out.big_t = big_t;
  out.eta = 1.0 / big_t;
  out.constant_part = 2.0 * std::log(big_t);

  // tail over |m| > M, with |sigma_0(m)|^2 <= d(m)^2 <= 4m
  auto mode_tail = [&](i64 big_m) {
    const double m1 = static_cast<double>(big_m + 1);
    const double geometric = std::exp(-4.0 * kPi * m1 / big_t) / (1.0 - decay);
    if (kappa == 0) return 2.0 * big_t * big_t / (kPi * norm * m1) * geometric;
    return 4.0 * kPi * big_t / norm * geometric;
  };
  i64 big_m = 1;
  while (mode_tail(big_m) > 0.5 * tol) ++big_m;
  out.mode_cutoff = big_m;

  std::vector<double> sigma_sq(static_cast<std::size_t>(big_m + 1), 0.0);
  for (i64 m = 1; m <= big_m; ++m) sigma_sq[m] = std::norm(sigma_twisted(m, 0.0, chi).value);

  std::vector<double> archimedean(static_cast<std::size_t>(big_m + 1), 0.0);
  double quad_error = 0.0;
  if (kappa == 0) {
    // G_m = int_{m/T}^inf K_0(2 pi u)^2 du/u as suffix sums of the pieces
    // [k/T, (k+1)/T], continued until the residual is negligible.
    double weight = 0.0;
    for (i64 m = 1; m <= big_m; ++m) weight += 8.0 * sigma_sq[m] / norm;
    i64 last = big_m;
    while (weight * detail::k0_tail_bound(static_cast<double>(last + 1) / big_t) > 0.05 * tol) ++last;
    const double residual = detail::k0_tail_bound(static_cast<double>(last + 1) / big_t);
    QuadratureSpec spec{1e-16, 1e-12, 2000};
    std::vector<double> pieces(static_cast<std::size_t>(last + 1), 0.0);
    for (i64 k = 1; k <= last; ++k) {
      auto r = integrate(detail::k0_squared_over_u, k / big_t, (k + 1) / big_t, spec);
      if (!r.converged) throw quadrature_failure("strip_integral_parseval: K_0^2 piece", r.error_estimate);
      pieces[k] = r.value;
      quad_error += r.error_estimate * weight;
    }
    double suffix = 0.0;
    for (i64 k = last; k >= 1; --k) {
      suffix += pieces[k];
      if (k <= big_m) archimedean[k] = 4.0 * suffix;
    }
    quad_error += weight * residual;
  } else {
    for (i64 m = 1; m <= big_m; ++m) archimedean[m] = 4.0 * kPi * kPi * exp_integral_e1(4.0 * kPi * m / big_t);
  }

  double modes = 0.0;
  for (i64 m = -big_m; m <= big_m; ++m) {
    if (m == 0) continue;
    const i64 am = m < 0 ? -m : m;
    const double c = (kappa == 1 && m < 0) ? 0.0 : sigma_sq[am] * archimedean[am] / norm;
    out.mode_contributions.push_back({m, c});
  }
  // fixed ascending order
  for (const auto& mc : out.mode_contributions) modes += mc.value;
  out.tail_bound = mode_tail(big_m);
  out.quadrature_error = quad_error;
  out.total = out.constant_part + modes;
  return out;
}

// ---------------------------------------------------------------------------
// Maass-Selberg right-hand sides

/// 2 log T - Re(phi'/phi)(1/2, chi).
inline double ms_corollary_rhs(const DirichletCharacter& chi, double big_t) {
  if (!(big_t >= 1.0)) throw domain_error("ms_corollary_rhs: T must be >= 1");
  return 2.0 * std::log(big_t) - scattering_log_derivative(chi).closed_form;
}

/// Overload reusing a precomputed phi'/phi(1/2).
inline double ms_corollary_rhs(double log_derivative, double big_t) {
  if (!(big_t >= 1.0)) throw domain_error("ms_corollary_rhs: T must be >= 1");
  return 2.0 * std::log(big_t) - log_derivative;
}

/// For a = b = infinity and q >= 2:
///   T^{a}/a + phi(s) conj(phi(r)) T^{-a}/(-a),   a = s + conj(r) - 1.
/// The terms in T^{+-(s - conj r)} carry phi_{inf,inf} = 0, so s = conj(r) is
/// regular; only a = 0 is a pole.
inline cplx ms_general_rhs(cplx s, cplx r, double big_t, const DirichletCharacter& chi) {
  detail::require_primitive_nontrivial(chi, "ms_general_rhs");
  if (!(big_t >= 1.0)) throw domain_error("ms_general_rhs: T must be >= 1");
  const cplx a = s + std::conj(r) - 1.0;
  if (a == cplx{0.0, 0.0}) throw pole_error("ms_general_rhs: s + conj(r) = 1");
  const cplx product = scattering_phi_value(s, chi) * std::conj(scattering_phi_value(r, chi));
  const double log_t = std::log(big_t);
  // (T^a - P T^{-a})/a = (expm1(a L) - expm1(-a L))/a + (1 - P) T^{-a}/a
  const cplx al = a * log_t;
  return (detail::expm1(al) - detail::expm1(-al)) / a + (1.0 - product) * std::exp(-al) / a;
}

struct MsRhs {
  double big_t;
  double corollary_value;
  double log_derivative;
};

inline MsRhs ms_rhs(const DirichletCharacter& chi, double big_t) {
  const double ld = scattering_log_derivative(chi).closed_form;
  return {big_t, ms_corollary_rhs(ld, big_t), ld};
}

// ---------------------------------------------------------------------------
// Sandwich and lower bound

struct SandwichRecord {
  i64 q;
  double big_t;
  double integral;        // I(chi, 1/T, T)
  double constant_part;
  double ms_rhs;          // R = 2 log T - Re phi'/phi
  double upper_bound;     // (1 + 10T/q) R
  double ratio_to_rhs;    // I/R
  double ratio_to_upper;  // I/((1 + 10T/q) R)
  double tail_bound;
  bool upper_ok;
  bool lower_observed;    // I >= R
};

inline SandwichRecord sandwich_check(const DirichletCharacter& chi, double big_t, double slack = 1e-6,
                                     double tol = 1e-9) {
  const double q = static_cast<double>(chi.modulus());
  const auto strip = strip_integral_parseval(chi, big_t, tol);
  SandwichRecord rec{};
  rec.q = chi.modulus();
  rec.big_t = big_t;
  rec.integral = strip.total;
  rec.constant_part = strip.constant_part;
  rec.ms_rhs = ms_corollary_rhs(chi, big_t);
  rec.upper_bound = (1.0 + 10.0 * big_t / q) * rec.ms_rhs;
  rec.ratio_to_rhs = rec.integral / rec.ms_rhs;
  rec.ratio_to_upper = rec.integral / rec.upper_bound;
  rec.tail_bound = strip.tail_bound + strip.quadrature_error;
  rec.upper_ok = rec.integral <= rec.upper_bound + slack;
  rec.lower_observed = rec.integral >= rec.ms_rhs;
  return rec;
}

struct ParsevalLowerBound {
  double big_t;
  double restricted_sum;     // sum_{T <= m <= 2T} |sigma_0(m)|^2
  double min_factor;         // min over T <= m <= 2T of the archimedean factor
  double mode_part;          // I - 2 log T
  double window_part;        // modes with T <= |m| <= 2T only
  double implied_lower;      // restricted_sum * min_factor/(q |L(1)|^2)
  double realized_constant;  // I q |L(1)|^2/restricted_sum
  bool positive;
};

/// The archimedean factor multiplying |sigma_0(m)|^2/(q |L|^2), summed over
/// both signs of m (for kappa = 1 only m > 0 contributes). Decreasing in m.
inline double parseval_mode_factor(int kappa, i64 m, double big_t) {
  if (kappa == 1) return 4.0 * kPi * kPi * exp_integral_e1(4.0 * kPi * m / big_t);
  auto r = integrate(detail::k0_squared_over_u, m / big_t, (m + 1) / big_t, {1e-16, 1e-12, 2000});
  double g = r.value;
  // continue piecewise until the remainder is negligible relative to g
  for (i64 k = m + 1; detail::k0_tail_bound(k / big_t) > 1e-14 * g; ++k)
    g += integrate(detail::k0_squared_over_u, k / big_t, (k + 1) / big_t, {1e-16, 1e-12, 2000}).value;
  return 2.0 * 4.0 * g;
}

inline ParsevalLowerBound parseval_lower_bound(const DirichletCharacter& chi, double big_t, double tol = 1e-9) {
  const double q = static_cast<double>(chi.modulus());
  const int kappa = chi.parity();
  const auto strip = strip_integral_parseval(chi, big_t, tol);
  const double norm = q * std::norm(dirichlet_l(cplx{1.0, 0.0}, chi));
  ParsevalLowerBound out{};
  out.big_t = big_t;
  out.restricted_sum = restricted_sigma_sum(chi, big_t).value;
  const i64 lo = static_cast<i64>(std::ceil(big_t)), hi = static_cast<i64>(std::floor(2 * big_t));
  out.min_factor = parseval_mode_factor(kappa, hi, big_t);
  out.mode_part = strip.mode_part();
  for (const auto& mc : strip.mode_contributions) {
    const i64 am = mc.m < 0 ? -mc.m : mc.m;
    if (am >= lo && am <= hi) out.window_part += mc.value;
  }
  out.implied_lower = out.restricted_sum * out.min_factor / norm;
  out.realized_constant = strip.total * norm / out.restricted_sum;
  out.positive = out.realized_constant > 0.0;
  return out;
}

inline nlohmann::ordered_json to_json(const SandwichRecord& r, int chi_id) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["chi_id"] = chi_id;
  j["T"] = r.big_t;
  j["I_total"] = r.integral;
  j["I_const"] = r.constant_part;
  j["ms_rhs"] = r.ms_rhs;
  j["upper_bound"] = r.upper_bound;
  j["ratios"] = {{"I_over_rhs", r.ratio_to_rhs}, {"I_over_upper", r.ratio_to_upper}};
  j["tail_bound"] = r.tail_bound;
  return j;
}

}  // namespace eisl
