#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eisl/special_functions.hpp"

namespace eisl {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

TEST(Gamma, FrozenValues) {
  const cplx g = gamma(cplx{0.5, 2.0});
  EXPECT_NEAR(g.real(), 0.089855176706431635814, 1e-13);
  EXPECT_NEAR(g.imag(), -0.06049376029288756848, 1e-13);
  EXPECT_NEAR(gamma(cplx{-2.5, 0.0}).real(), -0.94530872048294188123, 1e-12);
  EXPECT_NEAR(gamma(cplx{5.0, 0.0}).real(), 24.0, 1e-11);
}

TEST(Gamma, PoleThrows) { EXPECT_THROW(gamma(cplx{-3.0, 0.0}), pole_error); }

TEST(ReciprocalGamma, Values) {
  EXPECT_NEAR(std::abs(reciprocal_gamma(1.0) - 1.0), 0.0, 1e-14);
  EXPECT_EQ(reciprocal_gamma(0.0), cplx(0.0, 0.0));
  EXPECT_EQ(reciprocal_gamma(-4.0), cplx(0.0, 0.0));
  EXPECT_NEAR(std::abs(reciprocal_gamma(0.5) - 1.0 / kSqrtPi), 0.0, 1e-12);
}

TEST(ReciprocalGamma, Recurrence) {
  for (double re = -3.3; re < 4.0; re += 0.7) {
    const cplx s{re, 0.9};
    // 1/Gamma(s) = s/Gamma(s+1)
    EXPECT_LT(std::abs(reciprocal_gamma(s) - s * reciprocal_gamma(s + 1.0)), 1e-12 * (1 + std::abs(reciprocal_gamma(s))));
  }
}

TEST(BesselK, HalfIntegerClosedForm) {
  EXPECT_NEAR(bessel_k(0.5, 1.0), std::sqrt(std::numbers::pi / 2) * std::exp(-1.0), 1e-10);
  for (double y : {0.2, 1.0, 3.0, 9.0})
    EXPECT_NEAR(bessel_k(0.5, y) / (std::sqrt(std::numbers::pi / (2 * y)) * std::exp(-y)), 1.0, 1e-10);
}

TEST(BesselK, FrozenValues) {
  EXPECT_NEAR(bessel_k(0.0, 1.0), 0.42102443824070833334, 1e-9);
  EXPECT_NEAR(bessel_k(0.0, 0.1), 2.4270690247020166125, 1e-10);
  EXPECT_NEAR(bessel_k(2.5, 3.0), 0.084060631974117382653, 1e-11);
  EXPECT_NEAR(bessel_k(cplx{0.0, 2.0}, 1.5), 0.069331857212619631928, 1e-10);
  EXPECT_NEAR(bessel_k(0.3, 20.0) / 5.7538625183587375076e-10, 1.0, 1e-9);
}

TEST(BesselK, EvenInOrder) {
  for (double nu : {0.1, 0.7, 1.5, 2.3})
    for (double y : {0.3, 1.0, 4.0}) {
      EXPECT_EQ(bessel_k(nu, y), bessel_k(-nu, y));
      EXPECT_EQ(bessel_k(cplx{0, nu}, y), bessel_k(cplx{0, -nu}, y));
    }
}

TEST(BesselK, PositiveOnGrid) {
  for (double y = 0.05; y <= 20.0; y *= 1.5) {
    for (double nu : {0.0, 0.25, 0.5, 1.0, 2.0}) EXPECT_GT(bessel_k(nu, y), 0.0);
    for (double tau : {0.1, 0.3}) EXPECT_GT(bessel_k(cplx{0, tau}, y), 0.0);
  }
}

TEST(BesselK, Recurrence) {
  // K_{nu+1}(y) = K_{nu-1}(y) + 2 nu/y K_nu(y)
  for (double nu : {0.3, 1.0, 1.7})
    for (double y : {0.5, 2.0, 6.0}) {
      const double lhs = bessel_k(nu + 1, y);
      EXPECT_NEAR(lhs / (bessel_k(nu - 1, y) + 2 * nu / y * bessel_k(nu, y)), 1.0, 1e-9);
    }
}

TEST(BesselK, ErrorEstimateAndTighterTolerance) {
  const QuadratureSpec spec{1e-12, 1e-10, 4000};
  for (double y : {0.1, 1.0, 7.0}) {
    const auto coarse = bessel_k_result(0.4, y, spec);
    const auto fine = bessel_k_result(0.4, y, spec.halved());
    EXPECT_TRUE(coarse.converged);
    EXPECT_LE(coarse.error_estimate, std::max(spec.abs_tol, spec.rel_tol * std::abs(coarse.value)));
    EXPECT_LE(std::abs(coarse.value - fine.value), std::max(coarse.error_estimate, 1e-15));
  }
}

TEST(BesselK, DomainAndUnsupported) {
  EXPECT_THROW(bessel_k(0.0, 0.0), domain_error);
  EXPECT_THROW(bessel_k(0.0, -1.0), domain_error);
  EXPECT_THROW(bessel_k(cplx{0.5, 0.5}, 1.0), unsupported_case);
}

TEST(ExpIntegral, Values) {
  EXPECT_NEAR(exp_integral_e1(1.0), 0.21938393439552027368, 1e-10);
  EXPECT_NEAR(exp_integral_e1(0.5), 0.55977359477616081175, 1e-13);
  EXPECT_NEAR(exp_integral_e1(5.0), 0.0011482955912753257973, 1e-16);
  EXPECT_NEAR(exp_integral_e1(30.0) / 3.0215520106888125448e-15, 1.0, 1e-12);
}

TEST(ExpIntegral, MonotoneAndAsymptotic) {
  double prev = exp_integral_e1(0.01);
  for (double x = 0.02; x < 60.0; x *= 1.1) {
    const double v = exp_integral_e1(x);
    EXPECT_LT(v, prev);
    prev = v;
  }
  const double x = 50.0;
  EXPECT_NEAR(std::exp(x) * exp_integral_e1(x) * x, 1.0, 0.02);
  // continuity across the series / continued fraction switch
  EXPECT_NEAR(exp_integral_e1(1.0 - 1e-12), exp_integral_e1(1.0 + 1e-12), 1e-11);
}

TEST(ExpIntegral, Domain) {
  EXPECT_THROW(exp_integral_e1(0.0), domain_error);
  EXPECT_THROW(exp_integral_e1(-2.0), domain_error);
}

TEST(Whittaker, ClosedForms) {
  const double w = 4 * std::numbers::pi;
  EXPECT_NEAR(whittaker_closed(WhittakerIndex::PlusHalf, 0.0, w), std::sqrt(w) * std::exp(-2 * std::numbers::pi),
              1e-15);
  EXPECT_NEAR(whittaker_closed(WhittakerIndex::MinusHalf, 0.0, w),
              std::sqrt(w) * std::exp(2 * std::numbers::pi) * exp_integral_e1(w), 1e-12);
  for (double v : {0.3, 2.0, 9.0}) {
    const double closed = std::sqrt(v / std::numbers::pi) * std::sqrt(std::numbers::pi / v) * std::exp(-v / 2);
    EXPECT_NEAR(whittaker_closed(WhittakerIndex::Zero, 0.5, v), closed, 1e-9);
  }
}

TEST(Whittaker, FrozenValues) {
  EXPECT_NEAR(whittaker_closed(WhittakerIndex::Zero, 0.75, 2.0), 0.41152914926872884911, 1e-10);
  EXPECT_NEAR(whittaker_closed(WhittakerIndex::PlusHalf, 0.0, 3.0), 0.3864727740780608066, 1e-14);
  EXPECT_NEAR(whittaker_closed(WhittakerIndex::MinusHalf, 0.0, 3.0), 0.10128823013722687564, 1e-13);
  EXPECT_NEAR(whittaker_closed(WhittakerIndex::Zero, cplx{0.0, 1.0}, 1.7), 0.25150951857698921006, 1e-10);
}

TEST(Whittaker, Unsupported) {
  EXPECT_THROW(whittaker_closed(WhittakerIndex::PlusHalf, 0.5, 1.0), unsupported_case);
  EXPECT_THROW(whittaker_closed(WhittakerIndex::MinusHalf, cplx{0, 1}, 1.0), unsupported_case);
  EXPECT_THROW(whittaker_closed(WhittakerIndex::Zero, cplx{0.5, 1.0}, 1.0), unsupported_case);
  EXPECT_THROW(whittaker_closed(WhittakerIndex::Zero, 0.5, 0.0), domain_error);
}

TEST(TIntegral, FrozenValues) {
  const auto a = whittaker_via_t_integral(1, 3.0, 1, 1.0);
  EXPECT_NEAR(a.value.real(), 0.0, 1e-12);
  EXPECT_NEAR(a.value.imag(), -0.099262219721787355024, 1e-11);
  const auto b = whittaker_via_t_integral(1, 3.0, -1, 1.0);
  EXPECT_NEAR(b.value.imag(), -0.017851811338249475979, 1e-11);
  const auto c = whittaker_via_t_integral(0, 2.5, 2, 0.6);
  EXPECT_NEAR(c.value.real(), 0.01160724802109875513, 1e-11);
  EXPECT_NEAR(c.value.imag(), 0.0, 1e-12);
}

// int ... dt = i^{-kappa} pi^s |m|^{s-1} y^{s-1}/Gamma(s + sgn(m) kappa/2) W(4 pi |m| y)
cplx closed_t_integral(cplx s, long m, double y) {
  const double am = std::abs(static_cast<double>(m));
  const double w = 4 * std::numbers::pi * am * y;
  return std::pow(std::numbers::pi, s) * std::pow(am * y, s - 1.0) * reciprocal_gamma(s) *
         whittaker_closed(WhittakerIndex::Zero, s - 0.5, w, {1e-30, 1e-13, 4000});
}

TEST(TIntegral, AgreesWithClosedFormOnGrid) {
  // kept where the value is well above the absolute quadrature floor
  for (double s : {0.8, 1.6, 3.0})
    for (long m : {1L, -1L, 2L})
      for (double y : {0.3, 0.6, 1.0}) {
        const cplx lhs = whittaker_via_t_integral(0, s, m, y).value;
        const cplx rhs = closed_t_integral(s, m, y);
        EXPECT_LT(std::abs(lhs - rhs), 1e-6 * std::abs(rhs)) << s << ' ' << m << ' ' << y;
      }
}

TEST(TIntegral, ExampleAtThree) {
  const cplx lhs = whittaker_via_t_integral(0, 3.0, 1, 1.0).value;
  const double w = 4 * std::numbers::pi;
  const cplx rhs = std::pow(std::numbers::pi, 3.0) / 2.0 * whittaker_closed(WhittakerIndex::Zero, 2.5, w);
  EXPECT_LT(std::abs(lhs - rhs), 1e-6 * std::abs(rhs));
}

TEST(TIntegral, OddNearHalfSelfConsistent) {
  const QuadratureSpec spec{};
  const auto coarse = whittaker_via_t_integral(1, 0.75, 1, 0.5, spec);
  const auto fine = whittaker_via_t_integral(1, 0.75, 1, 0.5, spec.halved());
  EXPECT_TRUE(std::isfinite(coarse.value.real()) && std::isfinite(coarse.value.imag()));
  EXPECT_LE(std::abs(coarse.value - fine.value), std::max(coarse.error_estimate, 1e-12));
}

TEST(TIntegral, EvenCaseInvariantUnderSignOfM) {
  for (double y : {0.4, 1.3}) {
    const cplx plus = whittaker_via_t_integral(0, cplx{1.2, 0.7}, 3, y).value;
    const cplx minus = whittaker_via_t_integral(0, cplx{1.2, 0.7}, -3, y).value;
    EXPECT_LT(std::abs(plus - minus), 1e-9);
  }
}

TEST(TIntegral, OddCaseAtHalfPlusMatchesClosedForms) {
  // kappa = 1 at s close to 1/2 tends to the W_{+-1/2,0} closed forms
  const double y = 0.5;
  const double w = 4 * std::numbers::pi * y;
  const cplx plus = whittaker_via_t_integral(1, 0.5 + 1e-6, 1, y).value;
  const cplx expected_plus = cplx{0, -1} * std::sqrt(std::numbers::pi) * std::pow(y, -0.5) *
                             whittaker_closed(WhittakerIndex::PlusHalf, 0.0, w);
  EXPECT_LT(std::abs(plus - expected_plus), 1e-4);
}

TEST(TIntegral, Domain) {
  EXPECT_THROW(whittaker_via_t_integral(0, 0.5, 1, 1.0), domain_error);
  EXPECT_THROW(whittaker_via_t_integral(0, 2.0, 0, 1.0), domain_error);
  EXPECT_THROW(whittaker_via_t_integral(2, 2.0, 1, 1.0), domain_error);
  EXPECT_THROW(whittaker_via_t_integral(0, 2.0, 1, -1.0), domain_error);
}

TEST(Digamma, HalfIntegerChecks) {
  const auto odd = digamma_halfint_check(1);
  EXPECT_NEAR(odd.series_value, -std::numbers::egamma, 1e-12);
  EXPECT_LT(odd.defect, 1e-10);
  const auto even = digamma_halfint_check(0);
  EXPECT_NEAR(even.series_value, -std::numbers::egamma - 2 * std::numbers::ln2, 1e-12);
  EXPECT_LT(even.defect, 1e-10);
  // the alternative constant -log 8 - gamma_0 -+ pi/2 is psi(1/4) resp. psi(3/4)
  EXPECT_NEAR(even.printed_constant, digamma(0.25), 1e-10);
  EXPECT_NEAR(odd.printed_constant, digamma(0.75), 1e-10);
  EXPECT_GT(even.printed_defect, 0.1);
  const auto again = digamma_halfint_check(0);
  EXPECT_EQ(again.defect, even.defect);
}

}  // namespace
}  // namespace eisl
