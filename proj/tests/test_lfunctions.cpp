#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "eisl/lfunctions.hpp"
#include "support.hpp"

namespace eisl {
namespace {

using test::near;
constexpr double kPi = std::numbers::pi;

TEST(Hurwitz, Values) {
  EXPECT_NEAR(std::abs(hurwitz_zeta(2.0, 1.0) - kPi * kPi / 6), 0.0, 1e-12);
  for (double a : {0.1, 0.37, 0.5, 1.0}) EXPECT_NEAR(std::abs(hurwitz_zeta(0.0, a) - (0.5 - a)), 0.0, 1e-12);
  double zeta3 = 0.0;
  for (int n = 200000; n >= 1; --n) zeta3 += 1.0 / (static_cast<double>(n) * n * n);
  EXPECT_NEAR(hurwitz_zeta(3.0, 1.0).real(), zeta3, 1e-10);
}

TEST(Hurwitz, FrozenValues) {
  EXPECT_NEAR(hurwitz_zeta(2.0, 1.0 / 3).real(), 10.095597125427094082, 1e-11);
  EXPECT_TRUE(near(hurwitz_zeta(cplx{0.5, 2.0}, 0.3), {-1.2757983667240528383, 0.68270009783285956905}, 1e-12));
  EXPECT_NEAR(hurwitz_zeta(-1.5, 0.7).real(), 0.02347827433316148241, 1e-13);
}

TEST(Hurwitz, RelativeAccuracyAcrossTheDisc) {
  // mpmath references, |s| <= 20, checked to 1e-12 relative
  struct Case {
    cplx s;
    double a;
    cplx value;
  };
  const Case cases[] = {
      {{-12.3, 0.0}, 0.3, {0.049073342563491786327, 0.0}},
      {{-8.0, 4.0}, 0.7, {-0.29012311393903709197, 0.4910300496192448294}},
      {{-5.5, 1.0}, 0.05, {-0.0075972636815611809385, -0.0039779216034206550628}},
      {{-2.0, -15.0}, 0.3, {3.4365590186087628123, -7.7344052565361212788}},
      {{0.5, 19.0}, 0.3, {-2.1713322427013036573, -0.4157864774632955249}},
      {{-12.3, 10.0}, 0.7, {-2779.936006115828864, 3649.8813448039713371}},
  };
  for (const auto& c : cases)
    EXPECT_LT(std::abs(hurwitz_zeta(c.s, c.a) - c.value), 1e-12 * std::abs(c.value)) << c.s << ' ' << c.a;
}

TEST(Hurwitz, Errors) {
  EXPECT_THROW(hurwitz_zeta(1.0, 0.5), pole_error);
  EXPECT_THROW(hurwitz_zeta(2.0, 0.0), domain_error);
  EXPECT_THROW(hurwitz_zeta(2.0, 1.5), domain_error);
}

TEST(Hurwitz, DuplicationFormula) {
  // zeta(s, a) + zeta(s, a + 1/2) = 2^s zeta(s, 2a)
  for (double a : {0.1, 0.25, 0.45, 0.5})
    for (cplx s : {cplx{0.7, 3.0}, cplx{-1.3, 0.4}, cplx{2.5, 0.0}}) {
      const cplx lhs = hurwitz_zeta(s, a) + hurwitz_zeta(s, a + 0.5);
      const cplx rhs = std::pow(2.0, s) * hurwitz_zeta(s, 2 * a);
      EXPECT_TRUE(near(lhs, rhs, 1e-11 * (1 + std::abs(rhs)))) << a << ' ' << s;
    }
}

TEST(DirichletL, ClosedForms) {
  EXPECT_NEAR(std::abs(dirichlet_l(1.0, test::quadratic(4)) - kPi / 4), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(dirichlet_l(1.0, test::quadratic(3)) - kPi / (3 * std::sqrt(3.0))), 0.0, 1e-10);
  const auto trivial = enumerate_primitive_characters(1)[0];
  EXPECT_NEAR(dirichlet_l(3.0, trivial).real(), 1.2020569031595942854, 1e-10);
}

TEST(DirichletL, FrozenValues) {
  EXPECT_NEAR(dirichlet_l(1.0, test::quadratic(3)).real(), 0.60459978807807261686, 1e-12);
  EXPECT_NEAR(dirichlet_l(1.0, test::quadratic(5)).real(), 0.43040894096400403889, 1e-12);
  EXPECT_TRUE(near(dirichlet_l(1.0, test::chi5_complex()), {0.86480626597720996723, 0.20415306613838514619}, 1e-12));
  EXPECT_NEAR(dirichlet_l(1.0, test::chi8_even()).real(), 0.62322524014023051339, 1e-12);
  EXPECT_NEAR(dirichlet_l(1.0, test::chi8_odd()).real(), 1.1107207345395915618, 1e-12);
  EXPECT_TRUE(near(dirichlet_l(cplx{0.5, 2.0}, test::chi5_complex()),
                   {1.3914498601558735454, 0.60432003190907780748}, 1e-11));
  EXPECT_NEAR(dirichlet_l(2.0, test::quadratic(4)).real(), 0.91596559417721901505, 1e-12);
}

TEST(DirichletL, PrincipalPole) {
  const auto chars = enumerate_characters(5);
  for (const auto& chi : chars)
    if (chi.is_principal()) EXPECT_THROW(dirichlet_l(1.0, chi), pole_error);
}

TEST(DirichletL, AgreesWithDirectSeriesAtRealPartTwo) {
  for (i64 q : {3, 5, 7, 8, 12})
    for (const auto& chi : enumerate_primitive_characters(q)) {
      const cplx s{2.0, 1.5};
      cplx direct{0, 0};
      for (int n = 100000; n >= 1; --n) direct += chi(n) * std::pow(static_cast<double>(n), -s);
      // tail of the 1e5-term series is below 1e-5/ (n^2) sums of size ~1e-10
      EXPECT_TRUE(near(dirichlet_l(s, chi), direct, 1e-9)) << q;
    }
}

TEST(DirichletL, FromRowMatches) {
  for (i64 q : {5, 12, 31, 97}) {
    const cplx s{1.0, 0.0};
    const auto row = hurwitz_row(s, q);
    for (const auto& chi : enumerate_primitive_characters(q))
      EXPECT_TRUE(near(dirichlet_l_from_row(s, chi, row), dirichlet_l(s, chi), 1e-13));
  }
  const auto row = hurwitz_row(1.0, 5);
  EXPECT_THROW(dirichlet_l_from_row(1.0, test::quadratic(4), row), precondition_error);
  for (const auto& chi : enumerate_characters(5))
    if (chi.is_principal()) EXPECT_THROW(dirichlet_l_from_row(1.0, chi, row), precondition_error);
}

TEST(DirichletL, BoundedByLogQ) {
  for (i64 q = 3; q <= 300; ++q) {
    const auto row = hurwitz_row(1.0, q);
    for (const auto& chi : enumerate_primitive_characters(q))
      EXPECT_LE(std::abs(dirichlet_l_from_row(1.0, chi, row)), std::log(static_cast<double>(q)) + 2.0) << q;
  }
}

TEST(CompletedLambda, ConjugationSymmetry) {
  for (i64 q : {4, 5, 7, 13}) {
    for (const auto& chi : enumerate_primitive_characters(q)) {
      const cplx s{0.4, 1.3};
      const cplx a = std::conj(completed_lambda(s, chi).completed);
      const cplx b = completed_lambda(std::conj(s), chi.conj()).completed;
      EXPECT_TRUE(near(a, b, 1e-10));
    }
  }
}

TEST(CompletedLambda, FieldsAndExamples) {
  const auto chi4 = test::quadratic(4);
  const auto l = completed_lambda(1.0, chi4);
  EXPECT_TRUE(std::isfinite(std::abs(l.completed)));
  EXPECT_TRUE(near(l.completed, l.gamma_factor * l.raw_l, 1e-14));
  const auto chi5 = test::quadratic(5);
  const double expected = std::pow(kPi / 5, -0.25) * 3.6256099082219083119;  // Gamma(1/4)
  EXPECT_NEAR(completed_lambda(0.5, chi5).gamma_factor.real(), expected, 1e-10);
}

TEST(CompletedLambda, Errors) {
  EXPECT_THROW(completed_lambda(0.0, test::quadratic(5)), pole_error);
  EXPECT_THROW(completed_lambda(-1.0, test::quadratic(4)), pole_error);
  for (const auto& chi : enumerate_characters(9))
    if (!chi.is_primitive()) EXPECT_THROW(completed_lambda(2.0, chi), precondition_error);
}

TEST(FunctionalEquation, Grid) {
  for (i64 q = 1; q <= 50; ++q)
    for (const auto& chi : enumerate_primitive_characters(q))
      for (cplx s : {cplx{0.3, 0}, cplx{0.5, 0}, cplx{0.7, 0}, cplx{0.5, 2.0}})
        EXPECT_LT(functional_equation_defect(s, chi), 1e-8) << "q=" << q << " s=" << s;
}

TEST(FunctionalEquation, SymmetricUnderSwap) {
  for (const auto& chi : enumerate_primitive_characters(13)) {
    const cplx s{0.3, 0.8};
    const double d1 = functional_equation_defect(s, chi);
    const double d2 = functional_equation_defect(1.0 - s, chi.conj());
    EXPECT_NEAR(d1, d2, 1e-10);
  }
}

TEST(LogDerivative, FrozenValues) {
  EXPECT_NEAR(l_log_derivative_at_one(test::quadratic(5)).log_derivative.real(), 0.8276794760933035173, 1e-8);
  EXPECT_NEAR(l_log_derivative_at_one(test::quadratic(3)).log_derivative.real(), 0.36828161623699293324, 1e-8);
  EXPECT_TRUE(near(l_log_derivative_at_one(test::chi5_complex()).log_derivative,
                   {0.15786453543433711677, -0.08833613255513893912}, 1e-8));
  EXPECT_NEAR(l_log_derivative_at_one(test::chi8_even()).log_derivative.real(), 0.6321149660200808844, 1e-8);
}

TEST(LogDerivative, SelfConsistencyAndReality) {
  for (i64 q : {3, 4, 5, 8, 11, 24, 97})
    for (const auto& chi : enumerate_primitive_characters(q)) {
      const auto r = l_log_derivative_at_one(chi);
      EXPECT_LT(r.step_agreement, 1e-6);
      if (chi.is_real()) EXPECT_LT(std::abs(r.log_derivative.imag()), 1e-9);
    }
}

TEST(LogDerivative, DerivativeBoundOnScanRange) {
  // |L'(1, chi)| <= (log q + 2)^2; L' from one Richardson step on shared Hurwitz rows
  const double h = 1e-3;
  for (i64 q = 3; q <= 300; ++q) {
    const auto chars = enumerate_primitive_characters(q);
    if (chars.empty()) continue;
    const cplx s_pts[] = {1.0 + h, 1.0 - h, 1.0 + h / 2, 1.0 - h / 2};
    std::vector<std::vector<cplx>> rows;
    for (cplx s : s_pts) rows.push_back(hurwitz_row(s, q));
    const double bound = std::pow(std::log(static_cast<double>(q)) + 2.0, 2);
    for (const auto& chi : chars) {
      cplx l[4];
      for (int k = 0; k < 4; ++k) l[k] = dirichlet_l_from_row(s_pts[k], chi, rows[k]);
      const cplx d1 = (l[0] - l[1]) / (2.0 * h), d2 = (l[2] - l[3]) / h;
      EXPECT_LE(std::abs((4.0 * d2 - d1) / 3.0), bound) << q;
    }
  }
}

TEST(LogDerivative, RejectsPrincipal) {
  EXPECT_THROW(l_log_derivative_at_one(enumerate_primitive_characters(1)[0]), precondition_error);
}

}  // namespace
}  // namespace eisl
