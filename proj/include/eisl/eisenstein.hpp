#pragma once

// The Eisenstein series E_inf(z, s, chi) on Gamma_0(q) with nebentypus chi:
// Fourier coefficients, a Fourier-side and a direct (coset sum) evaluator,
// the scattering entry phi_{inf,1}, truncation on the strip, and the cusp
// geometry used by the consistency checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "eisl/arith.hpp"
#include "eisl/characters.hpp"
#include "eisl/errors.hpp"
#include "eisl/lfunctions.hpp"
#include "eisl/quadrature.hpp"
#include "eisl/special_functions.hpp"

namespace eisl {

struct UpperHalfPlanePoint {
  double x;
  double y;

  UpperHalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
    if (!(y > 0.0)) throw domain_error("UpperHalfPlanePoint: y must be positive");
  }
  cplx z() const { return {x, y}; }
  static UpperHalfPlanePoint from(cplx z) { return {z.real(), z.imag()}; }
};

/// Real 2x2 matrix acting by Moebius transformations.
struct Mat2 {
  double a, b, c, d;

  double det() const { return a * d - b * c; }
  Mat2 inverse() const {
    const double k = det();
    return {d / k, -b / k, -c / k, a / k};
  }
  cplx act(cplx z) const { return (a * z + b) / (c * z + d); }
  /// j(z) = (cz + d)/|cz + d|
  cplx j(cplx z) const {
    const cplx u = c * z + d;
    return u / std::abs(u);
  }
  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
};

/// Integer matrix of determinant 1.
struct IntMat2 {
  i64 a, b, c, d;

  i64 det() const { return a * d - b * c; }
  bool in_gamma0(i64 q) const { return det() == 1 && mod(c, q) == 0; }
  Mat2 real() const {
    return {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c), static_cast<double>(d)};
  }
  friend IntMat2 operator*(const IntMat2& m, const IntMat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend bool operator==(const IntMat2&, const IntMat2&) = default;
};

/// The cusp 1/v of Gamma_0(q), v | q, gcd(v, q/v) = 1. v = q is infinity.
struct CuspData {
  i64 v;
  i64 w;
  Mat2 scaling_matrix;

  bool is_infinity() const { return w == 1; }
};

inline CuspData scaling_matrix(i64 q, i64 v) {
  if (q < 1 || v < 1 || q % v != 0) throw precondition_error("scaling_matrix: v must divide q");
  const i64 w = q / v;
  if (std::gcd(v, w) != 1) throw precondition_error("scaling_matrix: gcd(v, q/v) must be 1");
  if (w == 1) return {v, w, {1.0, 0.0, 0.0, 1.0}};
  const double rw = std::sqrt(static_cast<double>(w));
  return {v, w, {rw, 0.0, static_cast<double>(v) * rw, 1.0 / rw}};
}

// ---------------------------------------------------------------------------
// Fourier coefficients

struct FourierCoefficient {
  i64 m;
  cplx value;
  cplx gauss_factor;        // tau(conj chi)
  cplx reciprocal_gamma;    // 1/Gamma(s + sgn(m) kappa/2)
  cplx divisor_sum;         // sigma_{1-2s}(|m|, chi)
  cplx l_value;             // L(2s, conj chi)
};

namespace detail {

inline void require_primitive_nontrivial(const DirichletCharacter& chi, const char* who) {
  if (chi.modulus() < 2) throw precondition_error(std::string(who) + ": needs q >= 2");
  if (!chi.is_primitive()) throw precondition_error(std::string(who) + ": character must be primitive");
}

inline cplx cpow_real(double base, cplx e) { return std::exp(e * std::log(base)); }

}  // namespace detail

/// Coefficients rho(m, s, chi) for a fixed (s, chi). The sign-dependent
/// prefactors and L(2s, conj chi) are computed once; tables are immutable
/// after construction and safe to share between threads.
class CoefficientTable {
 public:
  CoefficientTable(const DirichletCharacter& chi, cplx s, double perturbation = 0.0)
      : chi_(chi), s_(s), scale_(1.0 + perturbation) {
    detail::require_primitive_nontrivial(chi, "CoefficientTable");
    const double q = static_cast<double>(chi.modulus());
    const int kappa = chi.parity();
    gauss_ = gauss_sum(chi.conj()).value;
    l_value_ = dirichlet_l(2.0 * s, chi.conj());
    if (std::abs(l_value_) < 1e-12) throw division_hazard("rho_coefficient: L(2s, conj chi) vanishes");
    const cplx i_pow = kappa == 0 ? cplx{1.0, 0.0} : cplx{0.0, -1.0};  // i^{-kappa}
    const cplx common = i_pow * gauss_ * detail::cpow_real(kPi, s) / (detail::cpow_real(q, 2.0 * s) * l_value_);
    rgamma_plus_ = reciprocal_gamma(s + 0.5 * kappa);
    rgamma_minus_ = reciprocal_gamma(s - 0.5 * kappa);
    prefactor_plus_ = common * rgamma_plus_;
    prefactor_minus_ = chi(-1) * common * rgamma_minus_;
  }

  const DirichletCharacter& character() const { return chi_; }
  cplx s() const { return s_; }
  /// |prefactor| for m > 0 and m < 0; rho(m) = prefactor |m|^{s-1} sigma.
  double prefactor_bound(int sign) const { return std::abs(sign > 0 ? prefactor_plus_ : prefactor_minus_); }

  FourierCoefficient coefficient(i64 m) const {
    if (m == 0) throw precondition_error("rho_coefficient: m must be nonzero");
    const i64 am = m < 0 ? -m : m;
    FourierCoefficient out;
    out.m = m;
    out.gauss_factor = gauss_;
    out.reciprocal_gamma = m > 0 ? rgamma_plus_ : rgamma_minus_;
    out.divisor_sum = sigma_twisted(am, 1.0 - 2.0 * s_, chi_).value;
    out.l_value = l_value_;
    const cplx pre = m > 0 ? prefactor_plus_ : prefactor_minus_;
    out.value = pre == cplx{0.0, 0.0}
                    ? cplx{0.0, 0.0}
                    : scale_ * pre * detail::cpow_real(static_cast<double>(am), s_ - 1.0) * out.divisor_sum;
    return out;
  }

  cplx operator()(i64 m) const { return coefficient(m).value; }

 private:
  DirichletCharacter chi_;
  cplx s_;
  double scale_;
  cplx gauss_;
  cplx l_value_;
  cplx rgamma_plus_, rgamma_minus_;
  cplx prefactor_plus_, prefactor_minus_;
};

inline FourierCoefficient rho_coefficient(i64 m, cplx s, const DirichletCharacter& chi) {
  return CoefficientTable(chi, s).coefficient(m);
}

/// CSV rows m,Re rho,Im rho,|rho| for 1 <= |m| <= m_max, negative m first.
inline void write_coefficient_csv(std::ostream& os, const CoefficientTable& table, i64 m_max) {
  os << "m,re_rho,im_rho,abs_rho\n";
  auto row = [&](i64 m) {
    const cplx r = table(m);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n", static_cast<long long>(m), r.real(), r.imag(),
                  std::abs(r));
    os << buf;
  };
  for (i64 m = -m_max; m <= -1; ++m) row(m);
  for (i64 m = 1; m <= m_max; ++m) row(m);
}

// ---------------------------------------------------------------------------
// Archimedean factors

namespace detail {

enum class SupportedCase { EvenReal, EvenCritical, OddHalf };

inline SupportedCase classify(int kappa, cplx s) {
  if (kappa == 0) {
    if (s.imag() == 0.0 && s.real() > 0.5) return SupportedCase::EvenReal;
    if (s.real() == 0.5) return SupportedCase::EvenCritical;
  } else if (s == cplx{0.5, 0.0}) {
    return SupportedCase::OddHalf;
  }
  throw unsupported_case("eval_fourier: supported are kappa = 0 with s > 1/2 real or Re(s) = 1/2, kappa = 1 at s = 1/2");
}

inline QuadratureSpec bessel_spec() { return {1e-30, 1e-13, 4000}; }

}  // namespace detail

/// W_{sgn(m) kappa/2, s-1/2}(4 pi |m| y) from the closed forms.
inline double archimedean_factor(int kappa, cplx s, i64 m, double y) {
  detail::classify(kappa, s);
  const double w = 4.0 * kPi * std::abs(static_cast<double>(m)) * y;
  if (kappa == 0) return whittaker_closed(WhittakerIndex::Zero, s - 0.5, w, detail::bessel_spec());
  return whittaker_closed(m > 0 ? WhittakerIndex::PlusHalf : WhittakerIndex::MinusHalf, 0.0, w);
}

/// The same archimedean factor recovered from the t-integral:
///   i^kappa Gamma(s + sgn(m) kappa/2) pi^{-s} |m|^{1-s} y^{1-s} I(kappa, s, m, y).
/// Valid for every Re(s) > 1/2, so it serves as an oracle off the closed-form cases.
inline QuadratureResult<cplx> archimedean_factor_t_integral(int kappa, cplx s, i64 m, double y,
                                                            const QuadratureSpec& spec = {1e-13, 1e-11, 4000}) {
  auto r = whittaker_via_t_integral(kappa, s, static_cast<long>(m), y, spec);
  const double sgn = m > 0 ? 1.0 : -1.0;
  const cplx i_pow = kappa == 0 ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
  const cplx factor = i_pow * gamma(s + 0.5 * sgn * kappa) * detail::cpow_real(kPi, -s) *
                      detail::cpow_real(std::abs(static_cast<double>(m)) * y, 1.0 - s);
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

// ---------------------------------------------------------------------------
// Fourier-side evaluation

struct FourierValue {
  cplx value;
  double tail_bound;      // certified bound on the discarded modes
  double quadrature_error;
  i64 modes;              // modes 1..modes of each sign were summed
};

namespace detail {

// Bound B(m) = C m^p e^{-2 pi m y} on |rho(m) W(m)| + |rho(-m) W(-m)|, using
// |sigma_{1-2s}(m)| <= d(m) max(1, m^{1-2 sigma}), d(m) <= 2 sqrt m, and the
// decay of e^x K_nu(x).
struct ModeEnvelope {
  double c;
  double p;
  double y;
  double at(double m) const { return c * std::pow(m, p) * std::exp(-2.0 * kPi * m * y); }
  // sum_{m > M} B(m) via the ratio bound; infinite when not yet decreasing
  double tail(i64 big_m) const {
    const double m1 = static_cast<double>(big_m + 1);
    const double ratio = std::max(std::pow(1.0 + 1.0 / m1, std::max(p, 0.0)), 1.0) * std::exp(-2.0 * kPi * y);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return at(m1) / (1.0 - ratio);
  }
};

inline ModeEnvelope mode_envelope(const CoefficientTable& table, double y) {
  const cplx s = table.s();
  const double sigma = s.real();
  const int kappa = table.character().parity();
  const double excess = std::max(0.0, 1.0 - 2.0 * sigma);
  if (kappa == 0) {
    const cplx nu = s - 0.5;
    const double k_order = nu.imag() != 0.0 ? 0.0 : std::abs(nu.real());
    const double k1 = bessel_k(k_order, 2.0 * kPi * y, bessel_spec()) * (1.0 + 1e-9);
    const double c = (table.prefactor_bound(1) + table.prefactor_bound(-1)) * 2.0 * std::sqrt(4.0 * y) * k1 *
                     std::exp(2.0 * kPi * y);
    return {c, sigma - 1.0 + 0.5 + excess + 0.5, y};
  }
  // kappa = 1, s = 1/2: the negative modes vanish identically
  const double c = table.prefactor_bound(1) * 2.0 * std::sqrt(4.0 * kPi * y);
  return {c, 0.5, y};
}

}  // namespace detail

/// E_inf(z, s, chi) = y^s + sum_{m != 0} rho(m) W(4 pi |m| y) e(mx), truncated
/// once the certified tail drops below tol.
inline FourierValue eval_fourier(const UpperHalfPlanePoint& z, const CoefficientTable& table, double tol = 1e-10) {
  const DirichletCharacter& chi = table.character();
  const cplx s = table.s();
  const int kappa = chi.parity();
  detail::classify(kappa, s);
  if (z.y < 0.05) throw truncation_failure("eval_fourier: y < 0.05, truncation cannot be certified");

  const auto envelope = detail::mode_envelope(table, z.y);
  i64 big_m = 1;
  while (!(envelope.tail(big_m) < tol)) {
    ++big_m;
    if (big_m > 100000) throw truncation_failure("eval_fourier: mode count exceeds 1e5");
  }

  FourierValue out{detail::cpow_real(z.y, s), envelope.tail(big_m), 0.0, big_m};
  const double w_unit = 4.0 * kPi * z.y;
  for (i64 m = 1; m <= big_m; ++m) {
    for (int sign : {1, -1}) {
      const i64 mm = sign * m;
      const cplx rho = table(mm);
      if (rho == cplx{0.0, 0.0}) continue;
      double w;
      if (kappa == 0) {
        auto k = bessel_k_result(s - 0.5, 0.5 * w_unit * m, detail::bessel_spec());
        const double pre = std::sqrt(w_unit * m / kPi);
        w = pre * k.value;
        out.quadrature_error += std::abs(rho) * pre * k.error_estimate;
      } else {
        w = archimedean_factor(kappa, s, mm, z.y);
      }
      out.value += rho * w * std::exp(cplx{0.0, 2.0 * kPi * static_cast<double>(mm) * z.x});
    }
  }
  return out;
}

inline FourierValue eval_fourier(const UpperHalfPlanePoint& z, cplx s, const DirichletCharacter& chi,
                                 double tol = 1e-10) {
  detail::require_primitive_nontrivial(chi, "eval_fourier");
  detail::classify(chi.parity(), s);
  return eval_fourier(z, CoefficientTable(chi, s), tol);
}

// ---------------------------------------------------------------------------
// Direct evaluation over the cosets Gamma_inf \ Gamma_0(q)

struct DirectValue {
  cplx value;
  double tail_bound;
  i64 c_max;
  i64 window;
};

namespace detail {

// sum over c = qk, k > K of the full d-sums, times Im(w)^sigma
inline double direct_c_tail(double sigma, double q, double yw, double big_k) {
  const double a = std::sqrt(kPi) * std::exp(std::lgamma(sigma - 0.5) - std::lgamma(sigma));
  return std::pow(yw, sigma) * (a * std::pow(q * yw, 1.0 - 2.0 * sigma) * std::pow(big_k, 2.0 - 2.0 * sigma) /
                                    (2.0 * sigma - 2.0) +
                                std::pow(q * yw, -2.0 * sigma) * std::pow(big_k, 1.0 - 2.0 * sigma) /
                                    (2.0 * sigma - 1.0));
}

// terms with |c Re(w) + d| > window, summed over k <= K
inline double direct_window_tail(double sigma, double yw, double big_k, double window) {
  return big_k * std::pow(yw, sigma) * 2.0 * std::pow(window - 1.0, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
}

}  // namespace detail

/// j_{sigma_b}(z)^{-kappa} E_inf(sigma_b z, s, chi), summing c = q, 2q, ..., <= c_max
/// and |c Re(w) + d| <= window, w = sigma_b z.
inline DirectValue eval_direct(const UpperHalfPlanePoint& z, cplx s, const DirichletCharacter& chi,
                               const CuspData& cusp, i64 c_max, i64 window) {
  if (!chi.is_primitive()) throw precondition_error("eval_direct: character must be primitive");
  if (!(s.real() > 1.0)) throw domain_error("eval_direct: the coset sum diverges for Re(s) <= 1");
  if (window < 2 || c_max < 0) throw precondition_error("eval_direct: window >= 2 and c_max >= 0 required");
  const i64 q = chi.modulus();
  if (cusp.v * cusp.w != q) throw precondition_error("eval_direct: cusp does not belong to this level");
  const int kappa = chi.parity();
  const double sigma = s.real();

  const cplx w = cusp.scaling_matrix.act(z.z());
  const double xw = w.real(), yw = w.imag();
  cplx sum{1.0, 0.0};  // identity coset; every term carries Im(w)^s, applied below
  for (i64 c = q; c <= c_max; c += q) {
    const double center = -static_cast<double>(c) * xw;
    const i64 d_lo = static_cast<i64>(std::ceil(center - window));
    const i64 d_hi = static_cast<i64>(std::floor(center + window));
    const double cy2 = static_cast<double>(c) * c * yw * yw;
    for (i64 d = d_lo; d <= d_hi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const cplx chibar = std::conj(chi(d));
      const double t = c * xw + static_cast<double>(d);
      const double norm2 = t * t + cy2;
      cplx term = chibar * std::exp(-s * std::log(norm2));
      if (kappa == 1) term *= std::sqrt(norm2) / cplx{t, c * yw};
      sum += term;
    }
  }
  sum *= detail::cpow_real(yw, s);
  DirectValue out;
  out.c_max = c_max;
  out.window = window;
  out.value = sum;
  const double big_k = std::floor(static_cast<double>(c_max) / q);
  out.tail_bound = detail::direct_c_tail(sigma, static_cast<double>(q), yw, std::max(big_k, 1.0)) +
                   detail::direct_window_tail(sigma, yw, big_k, static_cast<double>(window));
  if (big_k < 1.0) out.tail_bound = std::numeric_limits<double>::infinity();
  if (kappa == 1 && !cusp.is_infinity()) out.value *= std::conj(cusp.scaling_matrix.j(z.z()));
  return out;
}

/// Chooses c_max and the d-window so the certified tail is below tol.
inline DirectValue eval_direct(const UpperHalfPlanePoint& z, cplx s, const DirichletCharacter& chi,
                               const CuspData& cusp, double tol) {
  if (!(s.real() > 1.0)) throw domain_error("eval_direct: the coset sum diverges for Re(s) <= 1");
  const double sigma = s.real();
  const double q = static_cast<double>(chi.modulus());
  const double yw = cusp.scaling_matrix.act(z.z()).imag();
  double big_k = 1.0;
  while (detail::direct_c_tail(sigma, q, yw, big_k) > 0.5 * tol) {
    big_k *= 1.25;
    if (big_k > 1e6) throw truncation_failure("eval_direct: c-range exceeds 1e6 multiples of q");
  }
  big_k = std::ceil(big_k);
  // solve direct_window_tail = tol/2 for the window
  const double rhs = 0.5 * tol * (2.0 * sigma - 1.0) / (2.0 * big_k * std::pow(yw, sigma));
  const double window = std::ceil(1.0 + std::pow(rhs, 1.0 / (1.0 - 2.0 * sigma))) + 1.0;
  if (window > 1e7) throw truncation_failure("eval_direct: d-window exceeds 1e7");
  return eval_direct(z, s, chi, cusp, static_cast<i64>(big_k * q), static_cast<i64>(window));
}

/// Fourier mode int_0^1 f(x + iy) e(-mx) dx of x -> eval_direct, by the
/// n-point trapezoid rule (exponentially accurate for periodic f).
inline cplx direct_fourier_mode(double y, i64 m, cplx s, const DirichletCharacter& chi, const CuspData& cusp,
                                double tol, int points = 32) {
  cplx acc{0.0, 0.0};
  for (int k = 0; k < points; ++k) {
    const double x = static_cast<double>(k) / points;
    const cplx f = eval_direct({x, y}, s, chi, cusp, tol).value;
    acc += f * std::exp(cplx{0.0, -2.0 * kPi * static_cast<double>(m) * x});
  }
  return acc / static_cast<double>(points);
}

// ---------------------------------------------------------------------------
// Scattering

struct ScatteringEntry {
  cplx s;
  cplx value;
  std::optional<double> unitarity_defect;          // ||phi| - 1| when Re(s) = 1/2
  std::optional<double> log_derivative_at_half;    // closed form, when s = 1/2
};

/// phi_{inf,1}(s, chi) = conj(tau(chi)) q^{-s} Lambda(2-2s, chi)/Lambda(2s, conj chi).
/// Where Gamma((2-2s+kappa)/2) has a pole the functional equation gives the
/// equivalent form i^{-kappa} q^{1/2-s} Lambda(2s-1, conj chi)/Lambda(2s, conj chi).
inline cplx scattering_phi_value(cplx s, const DirichletCharacter& chi) {
  detail::require_primitive_nontrivial(chi, "scattering_phi");
  const double q = static_cast<double>(chi.modulus());
  const int kappa = chi.parity();
  const DirichletCharacter chi_bar = chi.conj();
  if (detail::is_nonpositive_integer(0.5 * (2.0 * s + static_cast<double>(kappa))))
    throw pole_error("scattering_phi: Lambda(2s, conj chi) has a Gamma pole");
  const cplx denom = completed_lambda(2.0 * s, chi_bar).completed;
  if (std::abs(denom) < 1e-14) throw division_hazard("scattering_phi: Lambda(2s, conj chi) vanishes");
  if (detail::is_nonpositive_integer(0.5 * (2.0 - 2.0 * s + static_cast<double>(kappa)))) {
    const cplx i_pow = kappa == 0 ? cplx{1.0, 0.0} : cplx{0.0, -1.0};
    return i_pow * detail::cpow_real(q, 0.5 - s) * completed_lambda(2.0 * s - 1.0, chi_bar).completed / denom;
  }
  const cplx tau = gauss_sum(chi).value;
  return std::conj(tau) * detail::cpow_real(q, -s) * completed_lambda(2.0 - 2.0 * s, chi).completed / denom;
}

/// Level one: phi_{inf,inf}(s) = sqrt(pi) Gamma(s - 1/2)/Gamma(s) zeta(2s-1)/zeta(2s).
inline cplx scattering_phi_level_one(cplx s) {
  return std::sqrt(kPi) * gamma(s - 0.5) * reciprocal_gamma(s) * hurwitz_zeta(2.0 * s - 1.0, 1.0) /
         hurwitz_zeta(2.0 * s, 1.0);
}

struct ScatteringLogDerivative {
  double closed_form;
  double numeric;
  double numeric_imag;   // vanishes in exact arithmetic
  double relative_defect;
  cplx l_log_derivative;
};

/// phi'/phi(1/2, chi) = -4 Re L'/L(1, chi) - 3 log q + 2 log pi - 2 psi((1+kappa)/2),
/// together with a Richardson-extrapolated central difference of log phi.
inline ScatteringLogDerivative scattering_log_derivative(const DirichletCharacter& chi) {
  detail::require_primitive_nontrivial(chi, "scattering_log_derivative");
  const double q = static_cast<double>(chi.modulus());
  const int kappa = chi.parity();
  const auto ld = l_log_derivative_at_one(chi);
  const double psi = kappa == 0 ? -kEulerGamma - 2.0 * std::log(2.0) : -kEulerGamma;
  ScatteringLogDerivative out;
  out.l_log_derivative = ld.log_derivative;
  out.closed_form = -4.0 * ld.log_derivative.real() - 3.0 * std::log(q) + 2.0 * std::log(kPi) - 2.0 * psi;

  auto central = [&](double h) {
    return std::log(scattering_phi_value(cplx{0.5 + h, 0.0}, chi) / scattering_phi_value(cplx{0.5 - h, 0.0}, chi)) /
           (2.0 * h);
  };
  const double h = 1e-3;
  const cplx d1 = central(h), d2 = central(h / 2);
  const cplx extrapolated = (4.0 * d2 - d1) / 3.0;
  out.numeric = extrapolated.real();
  out.numeric_imag = extrapolated.imag();
  out.relative_defect = std::abs(out.numeric - out.closed_form) / std::abs(out.closed_form);
  return out;
}

inline ScatteringEntry scattering_phi(cplx s, const DirichletCharacter& chi) {
  ScatteringEntry e{s, scattering_phi_value(s, chi), std::nullopt, std::nullopt};
  if (s.real() == 0.5) e.unitarity_defect = std::abs(std::abs(e.value) - 1.0);
  if (s == cplx{0.5, 0.0}) e.log_derivative_at_half = scattering_log_derivative(chi).closed_form;
  return e;
}

// ---------------------------------------------------------------------------
// Truncation on the strip, automorphy, translates

/// Lambda^T E(z, s, chi) for 1/T < y: E itself for y <= T, and E - y^s above T.
inline cplx truncated_eval_strip(const UpperHalfPlanePoint& z, const CoefficientTable& table, double big_t,
                                 double tol = 1e-10) {
  if (!(big_t >= 1.0)) throw domain_error("truncated_eval_strip: T must be >= 1");
  if (!(z.y > 1.0 / big_t)) throw domain_error("truncated_eval_strip: needs Im(z) > 1/T");
  const cplx s = table.s();
  if (s.real() != 0.5) throw unsupported_case("truncated_eval_strip: only Re(s) = 1/2");
  const cplx e = eval_fourier(z, table, tol).value;
  if (z.y <= big_t) return e;
  return e - detail::cpow_real(z.y, s);
}

struct AutomorphyDefect {
  double defect;
  cplx lhs;  // E(gamma z)
  cplx rhs;  // chi(d) j_gamma(z)^kappa E(z)
};

inline AutomorphyDefect automorphy_defect(const IntMat2& g, const UpperHalfPlanePoint& z,
                                          const CoefficientTable& table, double tol = 1e-10) {
  const DirichletCharacter& chi = table.character();
  if (!g.in_gamma0(chi.modulus())) throw precondition_error("automorphy_defect: matrix not in Gamma_0(q)");
  const Mat2 m = g.real();
  const auto gz = UpperHalfPlanePoint::from(m.act(z.z()));
  AutomorphyDefect out;
  out.lhs = eval_fourier(gz, table, tol).value;
  cplx factor = chi(g.d);
  if (chi.parity() == 1) factor *= m.j(z.z());
  out.rhs = factor * eval_fourier(z, table, tol).value;
  out.defect = std::abs(out.lhs - out.rhs);
  return out;
}

/// |j_{g1 g2}(z) - j_{g2}(z) j_{g1}(g2 z)|
inline double cocycle_defect(const Mat2& g1, const Mat2& g2, cplx z) {
  return std::abs((g1 * g2).j(z) - g2.j(z) * g1.j(g2.act(z)));
}

/// #{gamma in Gamma_inf \ Gamma_0(q) : Im(gamma z) > eta}.
inline i64 count_translates(const UpperHalfPlanePoint& z, double eta, i64 q) {
  if (!(eta > 0.0 && eta <= 1.0)) throw domain_error("count_translates: eta must lie in (0, 1]");
  if (q < 1) throw precondition_error("count_translates: q must be positive");
  i64 count = z.y > eta ? 1 : 0;
  const double limit = z.y / eta;  // |cz + d|^2 < y/eta
  for (i64 c = q; static_cast<double>(c) * c * z.y * z.y < limit; c += q) {
    const double room = limit - static_cast<double>(c) * c * z.y * z.y;
    const double r = std::sqrt(room);
    const double center = -static_cast<double>(c) * z.x;
    for (i64 d = static_cast<i64>(std::floor(center - r)); d <= static_cast<i64>(std::ceil(center + r)); ++d) {
      if (std::gcd(c, d) != 1) continue;
      const double t = c * z.x + static_cast<double>(d);
      if (t * t + static_cast<double>(c) * c * z.y * z.y < limit) ++count;
    }
  }
  return count;
}

struct HeightPair {
  double product;      // Im(z) Im(gamma z)
  bool translation;    // gamma fixes infinity
  double ratio;        // Im(gamma z)/Im(z)
  double bound;        // 1/(w w') for the two cusps
};

/// gamma = sigma_c^{-1} g sigma_b for g in Gamma_0(q).
inline HeightPair height_pair_check(const CuspData& b, const CuspData& c, const IntMat2& g,
                                    const UpperHalfPlanePoint& z) {
  const Mat2 gamma = c.scaling_matrix.inverse() * g.real() * b.scaling_matrix;
  const double im = gamma.act(z.z()).imag();
  HeightPair out;
  out.product = z.y * im;
  out.translation = std::abs(gamma.c) < 1e-12;
  out.ratio = im / z.y;
  out.bound = 1.0 / static_cast<double>(b.w * c.w);
  return out;
}

/// Random words in T^{+-1} = (1, +-1; 0, 1) and L^{+-1} = (1, 0; +-q, 1),
/// kept while every entry is at most 1e6 in size and 0 < |c| <= c_limit.
/// The result is normalized to c > 0.
inline IntMat2 sample_gamma0(i64 q, std::mt19937_64& rng, i64 c_limit, int max_length = 12) {
  if (q < 1 || c_limit < q) throw precondition_error("sample_gamma0: need q >= 1 and c_limit >= q");
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> length(2, max_length);
  const IntMat2 gens[4] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, q, 1}, {1, 0, -q, 1}};
  auto small = [](const IntMat2& m) {
    return std::abs(m.a) <= 1000000 && std::abs(m.b) <= 1000000 && std::abs(m.c) <= 1000000 &&
           std::abs(m.d) <= 1000000;
  };
  for (;;) {
    IntMat2 g{1, 0, 0, 1};
    const int len = length(rng);
    bool ok = true;
    for (int i = 0; i < len && ok; ++i) {
      g = g * gens[pick(rng)];
      ok = small(g);
    }
    if (!ok || g.c == 0 || std::abs(g.c) > c_limit) continue;
    if (g.c < 0) g = {-g.a, -g.b, -g.c, -g.d};
    return g;
  }
}

}  // namespace eisl
