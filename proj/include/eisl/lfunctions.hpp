#pragma once

// Dirichlet L-functions by Hurwitz-zeta continuation, the completed
// L-function, its functional equation, and L'/L at s = 1.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "eisl/characters.hpp"
#include "eisl/errors.hpp"
#include "eisl/special_functions.hpp"

namespace eisl {

namespace detail {

using lcplx = std::complex<long double>;

// B_{2k} / (2k)! for k = 1..15
inline constexpr std::array<long double, 15> kBernoulliOverFactorial = {
    1.0L / 6 / 2.0L,
    -1.0L / 30 / 24.0L,
    1.0L / 42 / 720.0L,
    -1.0L / 30 / 40320.0L,
    5.0L / 66 / 3628800.0L,
    -691.0L / 2730 / 479001600.0L,
    7.0L / 6 / 87178291200.0L,
    -3617.0L / 510 / 20922789888000.0L,
    43867.0L / 798 / 6402373705728000.0L,
    -174611.0L / 330 / 2432902008176640000.0L,
    854513.0L / 138 / 1124000727777607680000.0L,
    -236364091.0L / 2730 / 620448401733239439360000.0L,
    8553103.0L / 6 / 403291461126605635584000000.0L,
    -23749461029.0L / 870 / 304888344611713860501504000000.0L,
    8615841276005.0L / 14322 / 265252859812191058636308480000000.0L};

inline cplx expm1(cplx z) {
  const double em1 = std::expm1(z.real());
  const double s_half = std::sin(0.5 * z.imag());
  return {em1 * std::cos(z.imag()) - 2.0 * s_half * s_half, std::exp(z.real()) * std::sin(z.imag())};
}

// Number of direct terms before the Euler-Maclaurin tail. Minimizes the sum of
// the first omitted correction, |B_32/32! (s)_31| x^{-Re s - 31}, and the
// long double rounding on the direct sum and the x^{1-s}/(s-1) term, which
// cancel against each other when Re s < 0.
inline int hurwitz_em_terms(cplx s, double a) {
  const double sigma = s.real();
  double log_rising = 0.0;
  for (int j = 0; j <= 30; ++j) log_rising += std::log(std::abs(s + static_cast<double>(j)));
  const double log_b32 = std::log(2.0) - 32.0 * std::log(2.0 * kPi);
  const double pole_scale = 1.0 / std::max(std::abs(s - 1.0), 0.1);  // pole-free form is O(log x) near s = 1
  const int n_max = 40 + static_cast<int>(std::abs(s));
  int best = 1;
  double best_err = std::numeric_limits<double>::infinity();
  double direct = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    direct += std::pow(n - 1 + a, -sigma);
    const double x = n + a;
    const double truncation = std::exp(log_b32 + log_rising - (sigma + 31.0) * std::log(x));
    const double rounding = 1e-19 * (direct + std::pow(x, 1.0 - sigma) * pole_scale);
    if (truncation + rounding < best_err) {
      best_err = truncation + rounding;
      best = n;
    }
  }
  return best;
}

// Euler-Maclaurin for zeta(s, a) in long double, with the pole term optionally
// removed: returns zeta(s, a) - [subtract_pole] / (s - 1).
inline cplx hurwitz_euler_maclaurin(cplx s_in, double a_in, bool subtract_pole) {
  const int n_terms = hurwitz_em_terms(s_in, a_in);
  const lcplx s(s_in.real(), s_in.imag());
  const long double a = a_in;
  lcplx sum{0.0L, 0.0L};
  for (int n = 0; n < n_terms; ++n) sum += std::exp(-s * std::log(n + a));
  const long double x = n_terms + a;
  const long double log_x = std::log(x);
  const lcplx x_pow = std::exp(-s * log_x);  // x^{-s}

  if (subtract_pole) {
    // (x^{1-s} - 1)/(s - 1) = -log x * expm1(w)/w,  w = (1 - s) log x
    const cplx w = (1.0 - s_in) * static_cast<double>(log_x);
    const cplx ratio = std::abs(w) < 1e-8 ? 1.0 + 0.5 * w : expm1(w) / w;
    if (std::abs(w) < 1.0) {
      sum += -log_x * lcplx(ratio.real(), ratio.imag());
    } else {
      sum += (x * x_pow - 1.0L) / (s - 1.0L);
    }
  } else {
    sum += x * x_pow / (s - 1.0L);
  }
  sum += 0.5L * x_pow;

  lcplx rising = s;         // s (s+1) ... (s + 2k - 2)
  lcplx power = x_pow / x;  // x^{-s-2k+1}
  const long double inv_x2 = 1.0L / (x * x);
  for (int k = 1; k <= 15; ++k) {
    sum += kBernoulliOverFactorial[k - 1] * rising * power;
    rising *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
    power *= inv_x2;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Hurwitz's series, used for Re s <= -5 and |Im s| <= -Re s:
// zeta(s, a) = 2 Gamma(1-s) (2 pi)^{s-1} sum_n n^{s-1} [sin(pi s/2) cos(2 pi n a) + cos(pi s/2) sin(2 pi n a)].
// Converges absolutely and avoids the cancellation Euler-Maclaurin suffers there.
inline cplx hurwitz_fourier_series(cplx s_in, double a_in) {
  const lcplx s(s_in.real(), s_in.imag());
  const long double a = a_in;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const lcplx w = 1.0L - s;
  const long double exponent = w.real();
  const lcplx sin_h = std::sin(std::numbers::pi_v<long double> * s / 2.0L);
  const lcplx cos_h = std::cos(std::numbers::pi_v<long double> * s / 2.0L);
  lcplx acc{0.0L, 0.0L};
  for (long n = 1; n <= 1000000; ++n) {
    const long double angle = two_pi * std::fmod(static_cast<long double>(n) * a, 1.0L);
    acc += std::exp(-w * std::log(static_cast<long double>(n))) * (sin_h * std::cos(angle) + cos_h * std::sin(angle));
    // remaining tail <= n^{1 - Re w}/(Re w - 1) times |sin_h| + |cos_h|
    const long double tail = std::pow(static_cast<long double>(n), 1.0L - exponent) / (exponent - 1.0L) *
                             (std::abs(sin_h) + std::abs(cos_h));
    if (tail < 1e-19L * std::abs(acc)) break;
  }
  const cplx prefactor = 2.0 * std::exp(lanczos_log_gamma(1.0 - s_in) + (s_in - 1.0) * std::log(2.0 * kPi));
  const cplx sum{static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  return prefactor * sum;
}

// zeta(s, a) - [subtract_pole]/(s - 1) by whichever method is accurate at s.
inline cplx hurwitz_value(cplx s, double a, bool subtract_pole) {
  if (s.real() <= -5.0 && std::abs(s.imag()) <= -s.real()) {
    const cplx z = hurwitz_fourier_series(s, a);
    return subtract_pole ? z - 1.0 / (s - 1.0) : z;
  }
  return hurwitz_euler_maclaurin(s, a, subtract_pole);
}

}  // namespace detail

/// Hurwitz zeta(s, a) for complex s != 1 and a in (0, 1].
inline cplx hurwitz_zeta(cplx s, double a) {
  if (s == cplx{1.0, 0.0}) throw pole_error("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw domain_error("hurwitz_zeta: a must lie in (0, 1]");
  return detail::hurwitz_value(s, a, false);
}

/// L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q). Non-principal
/// characters use the pole-free part of zeta(s, a/q), so s = 1 is regular.
inline cplx dirichlet_l(cplx s, const DirichletCharacter& chi) {
  const i64 q = chi.modulus();
  const bool principal = chi.is_principal();
  if (principal && s == cplx{1.0, 0.0}) throw pole_error("dirichlet_l: principal character at s = 1");
  cplx sum{0.0, 0.0};
  for (i64 a = 1; a <= q; ++a) {
    const cplx c = chi(a);
    if (c == cplx{0.0, 0.0}) continue;
    sum += c * detail::hurwitz_value(s, static_cast<double>(a) / q, !principal);
  }
  return std::exp(-s * std::log(static_cast<double>(q))) * sum;
}

/// Pole-free Hurwitz values zeta(s, a/q) - 1/(s-1), a = 1..q, shared by all
/// non-principal characters modulo q.
inline std::vector<cplx> hurwitz_row(cplx s, i64 q) {
  std::vector<cplx> row(static_cast<std::size_t>(q));
  for (i64 a = 1; a <= q; ++a)
    row[a - 1] = detail::hurwitz_value(s, static_cast<double>(a) / static_cast<double>(q), true);
  return row;
}

/// L(s, chi) for non-principal chi from a precomputed hurwitz_row(s, q).
inline cplx dirichlet_l_from_row(cplx s, const DirichletCharacter& chi, const std::vector<cplx>& row) {
  const i64 q = chi.modulus();
  if (chi.is_principal()) throw precondition_error("dirichlet_l_from_row: character must be non-principal");
  if (static_cast<i64>(row.size()) != q) throw precondition_error("dirichlet_l_from_row: row has the wrong length");
  cplx sum{0.0, 0.0};
  for (i64 a = 1; a <= q; ++a) sum += chi(a) * row[a - 1];
  return std::exp(-s * std::log(static_cast<double>(q))) * sum;
}

struct CompletedL {
  cplx s;
  cplx raw_l;
  cplx completed;
  cplx gamma_factor;
};

/// Lambda(s, chi) = (pi/q)^{-(s+kappa)/2} Gamma((s+kappa)/2) L(s, chi).
inline CompletedL completed_lambda(cplx s, const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw precondition_error("completed_lambda: character must be primitive");
  const double q = static_cast<double>(chi.modulus());
  const cplx half = 0.5 * (s + static_cast<double>(chi.parity()));
  if (detail::is_nonpositive_integer(half)) throw pole_error("completed_lambda: Gamma factor pole");
  const cplx gamma_factor = std::exp(-half * std::log(kPi / q)) * gamma(half);
  const cplx raw = dirichlet_l(s, chi);
  return {s, raw, gamma_factor * raw, gamma_factor};
}

/// |Lambda(s, chi) - tau(chi)/(i^kappa sqrt q) Lambda(1 - s, conj chi)| / (1 + |Lambda(s, chi)|).
inline double functional_equation_defect(cplx s, const DirichletCharacter& chi) {
  const auto lhs = completed_lambda(s, chi).completed;
  const auto rhs = completed_lambda(1.0 - s, chi.conj()).completed;
  const cplx root_number = gauss_sum(chi).value /
                           (std::pow(cplx{0.0, 1.0}, chi.parity()) * std::sqrt(static_cast<double>(chi.modulus())));
  return std::abs(lhs - root_number * rhs) / (1.0 + std::abs(lhs));
}

struct LogDerivativeAtOne {
  cplx l_value;          // L(1, chi)
  cplx l_prime;          // L'(1, chi), Richardson-extrapolated
  cplx log_derivative;   // L'/L(1, chi)
  double step_agreement; // relative gap between the (h, h/2) and (h/2, h/4) extrapolants
};

/// L'(1, chi) from central differences with h = 1e-3 and 5e-4 combined by
/// Richardson extrapolation.
inline LogDerivativeAtOne l_log_derivative_at_one(const DirichletCharacter& chi) {
  if (chi.modulus() < 2 || chi.is_principal())
    throw precondition_error("l_log_derivative_at_one: needs a non-principal character, q >= 2");
  auto central = [&](double h) {
    return (dirichlet_l(cplx{1.0 + h, 0.0}, chi) - dirichlet_l(cplx{1.0 - h, 0.0}, chi)) / (2.0 * h);
  };
  const double h = 1e-3;
  const cplx d1 = central(h), d2 = central(h / 2), d4 = central(h / 4);
  const cplx coarse = (4.0 * d2 - d1) / 3.0;
  const cplx fine = (4.0 * d4 - d2) / 3.0;
  LogDerivativeAtOne out;
  out.l_value = dirichlet_l(cplx{1.0, 0.0}, chi);
  out.l_prime = coarse;
  out.log_derivative = coarse / out.l_value;
  out.step_agreement = std::abs(coarse - fine) / std::abs(fine);
  return out;
}

}  // namespace eisl
