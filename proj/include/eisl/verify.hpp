#pragma once

// The verification suite: fourteen numbered checks over fixed grids, run at a
// reduced ("quick") or full size. Failures are collected, never short-circuited.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eisl/bounds.hpp"
#include "eisl/characters.hpp"
#include "eisl/eisenstein.hpp"
#include "eisl/lfunctions.hpp"
#include "eisl/ms_analysis.hpp"
#include "eisl/sieve.hpp"

namespace eisl {

enum class Level { Quick, Full };

inline Level parse_level(const std::string& s) {
  if (s == "quick") return Level::Quick;
  if (s == "full") return Level::Full;
  throw precondition_error("verify: level must be 'quick' or 'full', got '" + s + "'");
}

inline const char* to_string(Level l) { return l == Level::Quick ? "quick" : "full"; }

struct VerifyOptions {
  Level level = Level::Full;
  std::uint64_t seed = 20240611;
  double rho_perturbation = 0.0;  // fault injection: rho scaled by (1 + this)
  int threads = 1;
  double tol = 1e-9;              // quadrature / truncation tolerance where one is free
};

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline std::vector<DirichletCharacter> primitive_upto(i64 q_max, i64 q_min = 3) {
  std::vector<DirichletCharacter> out;
  for (i64 q = q_min; q <= q_max; ++q)
    for (auto& c : enumerate_primitive_characters(q)) out.push_back(c);
  return out;
}

}  // namespace detail

// 1
inline CriterionResult verify_char_sum_identity(const VerifyOptions& o) {
  const i64 q_max = o.level == Level::Full ? 20 : 10;
  const i64 m_max = o.level == Level::Full ? 40 : 10;
  double worst = 0.0;
  long cases = 0;
  for (const auto& chi : detail::primitive_upto(q_max)) {
    const i64 q = chi.modulus();
    for (i64 k = 1; k <= 4; ++k) {
      const i64 c = k * q;
      if (c > 120) continue;
      for (i64 m = -m_max; m <= m_max; ++m) {
        if (m == 0) continue;
        const auto p = char_sum_pair(chi, m, c);
        worst = std::max(worst, std::abs(p.lhs - p.rhs));
        ++cases;
      }
    }
  }
  return {1, "character sum identity", worst <= 1e-10,
          std::to_string(cases) + " cases, max |lhs - rhs| = " + detail::sci(worst), 0.0};
}

// 2
inline CriterionResult verify_gauss_modulus(const VerifyOptions& o) {
  const i64 q_max = o.level == Level::Full ? 100 : 30;
  double worst = 0.0;
  long n = 0;
  for (const auto& chi : detail::primitive_upto(q_max)) {
    worst = std::max(worst, std::abs(std::abs(gauss_sum(chi).value) - std::sqrt(static_cast<double>(chi.modulus()))));
    ++n;
  }
  return {2, "Gauss sum modulus", worst <= 1e-12, std::to_string(n) + " characters, max ||tau| - sqrt q| = " +
                                                      detail::sci(worst), 0.0};
}

// 3
inline CriterionResult verify_functional_equation(const VerifyOptions& o) {
  const i64 q_max = o.level == Level::Full ? 50 : 20;
  const cplx points[] = {{0.3, 0.0}, {0.5, 0.0}, {0.7, 0.0}, {0.5, 2.0}};
  double worst = 0.0;
  long n = 0;
  for (const auto& chi : detail::primitive_upto(q_max))
    for (cplx s : points) {
      worst = std::max(worst, functional_equation_defect(s, chi));
      ++n;
    }
  return {3, "functional equation", worst < 1e-8, std::to_string(n) + " evaluations, max defect = " + detail::sci(worst),
          0.0};
}

// 4
inline CriterionResult verify_unitarity(const VerifyOptions& o) {
  const i64 q_max = o.level == Level::Full ? 50 : 20;
  double worst = 0.0;
  long n = 0;
  for (const auto& chi : detail::primitive_upto(q_max))
    for (double t : {0.0, 0.5, 1.0}) {
      worst = std::max(worst, *scattering_phi(cplx{0.5, t}, chi).unitarity_defect);
      ++n;
    }
  return {4, "scattering unitarity", worst < 1e-8,
          std::to_string(n) + " evaluations, max ||phi| - 1| = " + detail::sci(worst), 0.0};
}

// 5
inline CriterionResult verify_log_derivative(const VerifyOptions&) {
  double worst = 0.0;
  long n = 0;
  for (i64 q : {3, 4, 5, 7, 8, 11, 12, 13})
    for (const auto& chi : enumerate_primitive_characters(q)) {
      worst = std::max(worst, scattering_log_derivative(chi).relative_defect);
      ++n;
    }
  return {5, "phi'/phi closed form", worst < 1e-6,
          std::to_string(n) + " characters, max relative defect = " + detail::sci(worst), 0.0};
}

// 6
/// Fourier side with the t-integral archimedean factor and modes |m| <= m_max;
/// used where the closed forms do not apply (kappa = 1 at s = 3).
inline cplx fourier_sum_t_integral(const UpperHalfPlanePoint& z, const CoefficientTable& table, i64 m_max) {
  const cplx s = table.s();
  const int kappa = table.character().parity();
  cplx acc = detail::cpow_real(z.y, s);
  for (i64 m = -m_max; m <= m_max; ++m) {
    if (m == 0) continue;
    const cplx a = archimedean_factor_t_integral(kappa, s, m, z.y).value;
    acc += table(m) * a * std::exp(cplx{0.0, 2.0 * kPi * static_cast<double>(m) * z.x});
  }
  return acc;
}

inline CriterionResult verify_fourier_vs_direct(const VerifyOptions& o) {
  const cplx s{3.0, 0.0};
  const double direct_tol = 1e-11;
  std::vector<i64> moduli = o.level == Level::Full ? std::vector<i64>{3, 4, 5, 8} : std::vector<i64>{3, 5};
  std::vector<double> xs = o.level == Level::Full ? std::vector<double>{0.0, 1.0 / 3, 2.0 / 3} : std::vector<double>{0.25};
  std::vector<double> ys = o.level == Level::Full ? std::vector<double>{0.7, 1.1, 1.5} : std::vector<double>{0.9};
  double worst_value = 0.0, worst_value_scaled = 0.0;
  double worst_mode = 0.0, worst_mode_scaled = 0.0;
  long values = 0, modes = 0;
  for (i64 q : moduli)
    for (const auto& chi : enumerate_primitive_characters(q)) {
      const CoefficientTable table(chi, s, o.rho_perturbation);
      const auto inf = scaling_matrix(q, q);
      for (double y : ys) {
        for (double x : xs) {
          const UpperHalfPlanePoint z(x, y);
          const auto d = eval_direct(z, s, chi, inf, direct_tol);
          cplx f;
          double allowance = d.tail_bound;
          if (chi.parity() == 0) {
            const auto fv = eval_fourier(z, table, 1e-12);
            f = fv.value;
            allowance += fv.tail_bound + fv.quadrature_error;
          } else {
            f = fourier_sum_t_integral(z, table, 8);
            allowance += 1e-12;
          }
          const double diff = std::abs(f - d.value);
          const double oscillating = std::abs(f - detail::cpow_real(y, s));
          worst_value = std::max(worst_value, diff);
          // strict form: 1e-5 relative to the non-constant part, plus the certified error bars
          worst_value_scaled = std::max(worst_value_scaled, diff / (1e-5 * oscillating + 10.0 * allowance));
          ++values;
        }
        if (q == 8) continue;
        // modes |m| <= 2 from one set of direct samples
        const int points = 32;
        std::vector<cplx> samples(points);
        for (int k = 0; k < points; ++k)
          samples[k] = eval_direct({static_cast<double>(k) / points, y}, s, chi, inf, direct_tol).value;
        for (i64 m = -2; m <= 2; ++m) {
          if (m == 0) continue;
          cplx mode{0.0, 0.0};
          for (int k = 0; k < points; ++k)
            mode += samples[k] * std::exp(cplx{0.0, -2.0 * kPi * static_cast<double>(m * k) / points});
          mode /= static_cast<double>(points);
          const cplx pred = table(m) * archimedean_factor_t_integral(chi.parity(), s, m, y).value;
          const double diff = std::abs(mode - pred);
          worst_mode = std::max(worst_mode, diff);
          worst_mode_scaled = std::max(worst_mode_scaled, diff / (1e-5 * std::abs(pred) + 1e-10));
          ++modes;
        }
      }
    }
  const bool ok = worst_value <= 1e-5 && worst_mode <= 1e-5 && worst_value_scaled <= 1.0 && worst_mode_scaled <= 1.0;
  std::ostringstream d;
  d << values << " points, max |F - D| = " << detail::sci(worst_value) << " (scaled " << detail::sci(worst_value_scaled)
    << "); " << modes << " modes, max |mode - rho W| = " << detail::sci(worst_mode) << " (scaled "
    << detail::sci(worst_mode_scaled) << ")";
  return {6, "Fourier vs direct evaluation", ok, d.str(), 0.0};
}

// 7
inline CriterionResult verify_cusp_vanishing(const VerifyOptions&) {
  const cplx s{3.0, 0.0};
  const i64 q = 12;
  const auto chi = enumerate_primitive_characters(q).at(0);
  double worst_vanish = 0.0, phi_defect = 0.0;
  const cplx phi = scattering_phi_value(s, chi);
  for (double y : {1.0, 2.0}) {
    for (i64 v : {3, 4}) {
      const cplx a0 = direct_fourier_mode(y, 0, s, chi, scaling_matrix(q, v), 1e-11);
      worst_vanish = std::max(worst_vanish, std::abs(a0 / detail::cpow_real(y, 1.0 - s)));
    }
    const cplx a0 = direct_fourier_mode(y, 0, s, chi, scaling_matrix(q, 1), 1e-11);
    phi_defect = std::max(phi_defect, std::abs(a0 / detail::cpow_real(y, 1.0 - s) - phi));
  }
  return {7, "constant terms at other cusps", worst_vanish < 1e-4 && phi_defect < 1e-4,
          "max y^{1-s} component at v=3,4: " + detail::sci(worst_vanish) + "; |component - phi(3)| at v=1: " +
              detail::sci(phi_defect),
          0.0};
}

// 8
inline CriterionResult verify_automorphy(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u_dist(-0.3, 0.3), h_dist(0.9, 1.1);
  double worst = 0.0, worst_cocycle = 0.0;
  long n = 0;
  const int per_char = o.level == Level::Full ? 10 : 3;
  for (i64 q : {3, 4, 5})
    for (const auto& chi : enumerate_primitive_characters(q)) {
      const CoefficientTable table(chi, 0.5, o.rho_perturbation);
      std::vector<IntMat2> used;
      for (int i = 0; i < per_char; ++i) {
        const IntMat2 g = sample_gamma0(q, rng, 12);
        const double u = u_dist(rng), h = h_dist(rng);
        const double c = static_cast<double>(g.c);
        const UpperHalfPlanePoint z((u - static_cast<double>(g.d)) / c, h / c);
        worst = std::max(worst, automorphy_defect(g, z, table, std::min(o.tol, 1e-10)).defect);
        if (!used.empty()) worst_cocycle = std::max(worst_cocycle, cocycle_defect(g.real(), used.back().real(), z.z()));
        used.push_back(g);
        ++n;
      }
    }
  return {8, "automorphy", worst < 1e-6 && worst_cocycle < 1e-10,
          std::to_string(n) + " matrices, max defect = " + detail::sci(worst) + ", max cocycle defect = " +
              detail::sci(worst_cocycle),
          0.0};
}

// 9
inline CriterionResult verify_ms_limit(const VerifyOptions&) {
  double lo = 1e300, hi = -1e300;
  long n = 0;
  for (i64 q : {3, 4, 5})
    for (const auto& chi : enumerate_primitive_characters(q))
      for (double t : {2.0, 10.0}) {
        const double cor = ms_corollary_rhs(chi, t);
        const double d3 = std::abs(ms_general_rhs(0.5 + 1e-3, 0.5 + 1e-3, t, chi) - cor);
        const double d4 = std::abs(ms_general_rhs(0.5 + 1e-4, 0.5 + 1e-4, t, chi) - cor);
        lo = std::min(lo, d3 / d4);
        hi = std::max(hi, d3 / d4);
        ++n;
      }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%ld cases, defect ratio in [%.4f, %.4f]", n, lo, hi);
  return {9, "Maass-Selberg epsilon limit", lo >= 8.0 && hi <= 12.0, buf, 0.0};
}

// 10
inline CriterionResult verify_sandwich(const VerifyOptions& o) {
  std::vector<i64> moduli = o.level == Level::Full ? std::vector<i64>{3, 4, 5, 7, 8, 11} : std::vector<i64>{3, 5};
  long n = 0, lower = 0;
  bool ok = true;
  double max_ratio = 0.0, min_rhs = 1e300;
  for (i64 q : moduli)
    for (const auto& chi : enumerate_primitive_characters(q))
      for (double f : {1.0, 2.0, 10.0}) {
        const auto r = sandwich_check(chi, f * static_cast<double>(q), 1e-6, o.tol);
        ok = ok && r.upper_ok && r.ms_rhs >= 0.0;
        max_ratio = std::max(max_ratio, r.ratio_to_upper);
        min_rhs = std::min(min_rhs, r.ms_rhs);
        lower += r.lower_observed ? 1 : 0;
        ++n;
      }
  std::ostringstream d;
  d << n << " cases, max I/upper = " << detail::sci(max_ratio) << ", min R = " << detail::sci(min_rhs)
    << "; I >= R observed in " << lower << "/" << n << " (recorded, not required)";
  return {10, "strip integral sandwich", ok, d.str(), 0.0};
}

// 11
/// S >= (sqrt 2 - 1) sqrt T decided in integers: 2 S sqrt T >= T - S^2.
inline bool sqrt2_bound_exact(i64 s, i64 t) {
  if (s < 0) return false;
  const __int128 gap = static_cast<__int128>(t) - static_cast<__int128>(s) * s;
  if (gap <= 0) return true;
  return static_cast<__int128>(4) * s * s * t >= gap * gap;
}

inline CriterionResult verify_quadratic_sum(const VerifyOptions& o) {
  const i64 q_max = o.level == Level::Full ? 100 : 30;
  std::vector<i64> ts = o.level == Level::Full ? std::vector<i64>{1000, 10000, 100000} : std::vector<i64>{1000, 10000};
  bool ok = true;
  long n = 0;
  double min_ratio = 1e300;
  for (const auto& chi : detail::primitive_upto(q_max)) {
    if (!chi.is_quadratic()) continue;
    for (i64 t : ts) {
      const auto r = restricted_sigma_sum(chi, static_cast<double>(t));
      ok = ok && r.exact && sqrt2_bound_exact(*r.exact, t);
      min_ratio = std::min(min_ratio, r.value / ((std::sqrt(2.0) - 1.0) * std::sqrt(static_cast<double>(t))));
      ++n;
    }
  }
  return {11, "quadratic restricted sum", ok,
          std::to_string(n) + " cases, min sum/((sqrt2-1) sqrt T) = " + detail::sci(min_ratio), 0.0};
}

// 12
inline CriterionResult verify_parameter_algebra(const VerifyOptions& o) {
  const i64 q_top = o.level == Level::Full ? 10000 : 1000;
  long bad = 0;
  for (i64 big_q = 3; big_q <= q_top; ++big_q)
    if (!bal_ram_parameters(big_q).ok()) ++bad;
  std::vector<i64> ts = o.level == Level::Full ? std::vector<i64>{1000, 100000} : std::vector<i64>{1000};
  const PrimeTable table(2 * ts.back());
  double worst = 0.0;
  long n = 0;
  for (i64 q : {5, 7, 9, 13})
    for (const auto& chi : enumerate_primitive_characters(q))
      for (i64 t : ts) {
        const auto r = prime_restricted_identity(chi, t, table);
        worst = std::max(worst, std::abs(r.sum_over_primes - r.progression_form));
        ++n;
      }
  return {12, "parameter algebra and prime identity", bad == 0 && worst <= 1e-9,
          std::to_string(q_top - 2) + " orders (" + std::to_string(bad) + " failing), " + std::to_string(n) +
              " identity cases, max gap = " + detail::sci(worst),
          0.0};
}

// 13
inline CriterionResult verify_brun_titchmarsh(const VerifyOptions& o) {
  std::vector<i64> ts = o.level == Level::Full ? std::vector<i64>{10000, 100000, 1000000} : std::vector<i64>{10000};
  const PrimeTable table(2 * ts.back());
  long n = 0, bad = 0;
  double max_ratio = 0.0;
  for (i64 q = 1; q <= 30; ++q)
    for (i64 t : ts)
      for (i64 a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const auto r = brun_titchmarsh_check(table, q, a, t, t);
        bad += r.ok ? 0 : 1;
        max_ratio = std::max(max_ratio, static_cast<double>(r.observed) / r.bound);
        ++n;
      }
  return {13, "Brun-Titchmarsh", bad == 0,
          std::to_string(n) + " cases, " + std::to_string(bad) + " violations, max observed/bound = " +
              detail::sci(max_ratio),
          0.0};
}

// 14
inline CriterionResult verify_scan(const VerifyOptions& o) {
  ScanOptions so;
  so.threads = o.threads;
  const auto rows = scan_theorem(3, o.level == Level::Full ? 300 : 60, so);
  const auto s = summarize(rows);
  std::ostringstream d;
  d << s.rows << " characters, min realized constant = " << detail::sci(s.min_realized);
  if (s.min_quadratic)
    d << "; min L sqrt(q) log^2 q = " << detail::sci(s.min_quadratic->normalized) << " (q=" << s.min_quadratic->q << ")";
  if (s.min_complex)
    d << "; min |L| log^3 q = " << detail::sci(s.min_complex->normalized) << " (q=" << s.min_complex->q << ")";
  return {14, "L(1, chi) scan", s.all_pass && s.min_realized > 0.0, d.str(), 0.0};
}

struct Criterion {
  int id;
  std::function<CriterionResult(const VerifyOptions&)> run;
};

inline std::vector<Criterion> all_criteria() {
  return {{1, verify_char_sum_identity}, {2, verify_gauss_modulus},    {3, verify_functional_equation},
          {4, verify_unitarity},         {5, verify_log_derivative},   {6, verify_fourier_vs_direct},
          {7, verify_cusp_vanishing},    {8, verify_automorphy},       {9, verify_ms_limit},
          {10, verify_sandwich},         {11, verify_quadratic_sum},   {12, verify_parameter_algebra},
          {13, verify_brun_titchmarsh},  {14, verify_scan}};
}

/// Runs one criterion, turning exceptions into failures and timing it.
inline CriterionResult run_criterion(const Criterion& c, const VerifyOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = c.run(o);
  } catch (const std::exception& e) {
    r = {c.id, "criterion " + std::to_string(c.id), false, std::string("exception: ") + e.what(), 0.0};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

struct SuiteReport {
  Level level;
  std::vector<CriterionResult> results;

  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  }
};

inline SuiteReport verify_suite(const VerifyOptions& o) {
  SuiteReport rep{o.level, {}};
  for (const auto& c : all_criteria()) rep.results.push_back(run_criterion(c, o));
  return rep;
}

inline nlohmann::ordered_json to_json(const SuiteReport& rep) {
  nlohmann::ordered_json j;
  j["spec_version"] = kSpecVersion;
  j["level"] = to_string(rep.level);
  j["passed"] = rep.passed();
  j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.results)
    j["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  return j;
}

}  // namespace eisl
