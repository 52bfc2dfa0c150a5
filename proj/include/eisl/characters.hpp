#pragma once

// Dirichlet characters with exact values.
//
// A character modulo q is stored as a table of exponents: chi(a) = e(k_a / Q)
// where Q is the order of the character and e(x) = exp(2 pi i x). Residues
// sharing a factor with q store kZero. All structural questions (order,
// parity, conductor, multiplicativity) are answered with integer arithmetic;
// complex numbers only appear at the evaluation boundary.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eisl/arith.hpp"
#include "eisl/errors.hpp"

namespace eisl {

using cplx = std::complex<double>;

/// e(num/den) = exp(2 pi i num/den) with the fraction reduced before the
/// trigonometric call.
inline cplx unit_root(i64 num, i64 den) {
  i64 r = mod(num, den);
  if (r == 0) return {1.0, 0.0};
  if (2 * r == den) return {-1.0, 0.0};
  if (4 * r == den) return {0.0, 1.0};
  if (4 * r == 3 * den) return {0.0, -1.0};
  if (2 * r > den) r -= den;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

class DirichletCharacter {
 public:
  static constexpr i64 kZero = -1;

  /// Builds a character from its exponent table over denominator `denominator`
  /// (any multiple of the true order). Entry kZero marks non-units.
  DirichletCharacter(i64 modulus, std::vector<i64> exponents, i64 denominator)
      : modulus_(modulus), exponents_(std::move(exponents)) {
    if (modulus_ < 1 || static_cast<i64>(exponents_.size()) != modulus_ || denominator < 1)
      throw precondition_error("DirichletCharacter: malformed exponent table");
    i64 g = denominator;
    for (i64 a = 0; a < modulus_; ++a) {
      const bool unit = std::gcd(a, modulus_) == 1;
      if (unit != (exponents_[a] != kZero))
        throw precondition_error("DirichletCharacter: zero pattern must match gcd(a, q) > 1");
      if (unit) {
        exponents_[a] = mod(exponents_[a], denominator);
        g = std::gcd(g, exponents_[a]);
      }
    }
    order_ = denominator / g;
    for (auto& k : exponents_)
      if (k != kZero) k /= g;
    values_.resize(modulus_);
    for (i64 a = 0; a < modulus_; ++a)
      values_[a] = exponents_[a] == kZero ? cplx{0.0, 0.0} : unit_root(exponents_[a], order_);
    const i64 minus_one = exponent(modulus_ - 1).value_or(0);
    parity_ = (modulus_ <= 2 || minus_one == 0) ? 0 : 1;
    conductor_ = compute_conductor();
  }

  i64 modulus() const noexcept { return modulus_; }
  i64 order() const noexcept { return order_; }
  int parity() const noexcept { return parity_; }
  i64 conductor() const noexcept { return conductor_; }
  bool is_primitive() const noexcept { return conductor_ == modulus_; }
  bool is_principal() const noexcept { return order_ == 1; }
  bool is_quadratic() const noexcept { return order_ == 2; }
  bool is_real() const noexcept { return order_ <= 2; }

  /// Exponent k with chi(a) = e(k / order()), or nullopt when gcd(a, q) > 1.
  std::optional<i64> exponent(i64 a) const {
    const i64 k = exponents_[mod(a, modulus_)];
    if (k == kZero) return std::nullopt;
    return k;
  }

  cplx operator()(i64 a) const { return values_[mod(a, modulus_)]; }

  std::span<const i64> exponent_table() const noexcept { return exponents_; }
  std::span<const cplx> value_table() const noexcept { return values_; }

  DirichletCharacter conj() const {
    std::vector<i64> e = exponents_;
    for (auto& k : e)
      if (k != kZero) k = mod(-k, order_);
    return DirichletCharacter(modulus_, std::move(e), order_);
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus_ == b.modulus_ && a.order_ == b.order_ && a.exponents_ == b.exponents_;
  }

  /// Lexicographic order on the exponent table read as rationals k/Q.
  friend bool table_less(const DirichletCharacter& a, const DirichletCharacter& b) {
    for (i64 i = 0; i < std::min(a.modulus_, b.modulus_); ++i) {
      const i64 ka = a.exponents_[i], kb = b.exponents_[i];
      if (ka == kZero || kb == kZero) {
        if (ka != kb) return ka < kb;
        continue;
      }
      const i64 lhs = ka * b.order_, rhs = kb * a.order_;
      if (lhs != rhs) return lhs < rhs;
    }
    return a.modulus_ < b.modulus_;
  }

  nlohmann::json to_json() const {
    nlohmann::json table = nlohmann::json::array();
    for (auto k : exponents_) {
      if (k == kZero)
        table.push_back(nullptr);
      else
        table.push_back({k, order_});
    }
    return {{"modulus", modulus_},
            {"conductor", conductor_},
            {"parity", parity_},
            {"order", order_},
            {"exponent_table", table}};
  }

 private:
  // Least divisor d of q such that chi is trivial on units congruent to 1 mod d.
  i64 compute_conductor() const {
    for (i64 d : divisors(modulus_)) {
      bool trivial = true;
      for (i64 a = 1; a < modulus_ + 1 && trivial; a += d) {
        const i64 k = exponents_[a % modulus_];
        if (k != kZero && k != 0) trivial = false;
      }
      if (trivial) return d;
    }
    return modulus_;
  }

  i64 modulus_;
  std::vector<i64> exponents_;
  std::vector<cplx> values_;
  i64 order_ = 1;
  int parity_ = 0;
  i64 conductor_ = 1;
};

namespace detail {

// Characters of (Z/p^e)^x as exponent tables over a common denominator,
// together with primitivity. Generators: a least primitive root for odd p,
// -1 for 4, and the pair {-1, 5} for 2^e with e >= 3.
struct ComponentCharacter {
  std::vector<i64> exponents;  // indexed by residue mod p^e, kZero for non-units
  i64 denominator;
  bool primitive;
};

inline std::vector<ComponentCharacter> component_characters(const PrimePower& pp) {
  const i64 n = pp.value;
  std::vector<i64> gens, orders;
  if (pp.p == 2) {
    if (pp.e == 2) {
      gens = {n - 1};
      orders = {2};
    } else if (pp.e >= 3) {
      gens = {n - 1, 5};
      orders = {2, n / 4};
    }
  } else {
    gens = {least_primitive_root(n)};
    orders = {euler_phi(n)};
  }
  i64 denom = 1;
  for (auto o : orders) denom = std::lcm(denom, o);

  // discrete logarithms with respect to the generator list
  std::vector<std::vector<i64>> dlog(n);
  std::vector<i64> idx(gens.size(), 0);
  const auto total = static_cast<i64>(std::accumulate(orders.begin(), orders.end(), i64{1},
                                                      std::multiplies<>{}));
  for (i64 t = 0; t < total; ++t) {
    i64 value = 1 % n;
    for (std::size_t g = 0; g < gens.size(); ++g) value = mulmod(value, powmod(gens[g], idx[g], n), n);
    dlog[value] = idx;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (++idx[g] < orders[g]) break;
      idx[g] = 0;
    }
  }
  if (gens.empty()) dlog[1 % n] = {};

  std::vector<ComponentCharacter> out;
  std::vector<i64> j(gens.size(), 0);
  for (i64 t = 0; t < total; ++t) {
    ComponentCharacter c{std::vector<i64>(n, DirichletCharacter::kZero), denom, false};
    for (i64 a = 0; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      i64 k = 0;
      for (std::size_t g = 0; g < gens.size(); ++g) k += j[g] * dlog[a][g] * (denom / orders[g]);
      c.exponents[a] = mod(k, denom);
    }
    // primitive iff nontrivial on the kernel of reduction to p^(e-1)
    const i64 lower = n / pp.p;
    for (i64 a = 1; a < n && !c.primitive; a += lower)
      if (std::gcd(a, n) == 1 && c.exponents[a] != 0) c.primitive = true;
    out.push_back(std::move(c));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (++j[g] < orders[g]) break;
      j[g] = 0;
    }
  }
  return out;
}

inline std::vector<DirichletCharacter> assemble(i64 q, bool primitive_only) {
  if (q < 1) throw precondition_error("character enumeration: q must be positive");
  const auto factors = factorize(q);
  std::vector<std::vector<ComponentCharacter>> comps;
  for (const auto& pp : factors) {
    auto all = component_characters(pp);
    if (primitive_only) std::erase_if(all, [](const auto& c) { return !c.primitive; });
    if (all.empty()) return {};
    comps.push_back(std::move(all));
  }
  i64 denom = 1;
  for (const auto& cs : comps) denom = std::lcm(denom, cs.front().denominator);

  std::vector<DirichletCharacter> out;
  std::vector<std::size_t> pick(comps.size(), 0);
  while (true) {
    std::vector<i64> table(q, DirichletCharacter::kZero);
    for (i64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      i64 k = 0;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& comp = comps[c][pick[c]];
        k += comp.exponents[a % factors[c].value] * (denom / comp.denominator);
      }
      table[a] = mod(k, denom);
    }
    out.emplace_back(q, std::move(table), denom);
    std::size_t c = 0;
    for (; c < comps.size(); ++c) {
      if (++pick[c] < comps[c].size()) break;
      pick[c] = 0;
    }
    if (c == comps.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return table_less(a, b); });
  return out;
}

}  // namespace detail

/// All characters modulo q in deterministic table order.
inline std::vector<DirichletCharacter> enumerate_characters(i64 q) { return detail::assemble(q, false); }

/// Primitive characters modulo q, built componentwise by CRT and sorted by
/// exponent table. Empty when q = 2 (mod 4).
inline std::vector<DirichletCharacter> enumerate_primitive_characters(i64 q) {
  return detail::assemble(q, true);
}

/// Gauss sum tau(chi) = sum_a chi(a) e(a/q), together with the defect of the
/// conjugation identity conj(tau(conj chi)) = chi(-1) tau(chi).
struct GaussSum {
  cplx value;
  double conjugation_defect;
};

namespace detail {
inline cplx raw_gauss_sum(const DirichletCharacter& chi) {
  const i64 q = chi.modulus(), order = chi.order();
  cplx sum{0.0, 0.0};
  for (i64 a = 0; a < q; ++a) {
    const auto k = chi.exponent(a);
    if (!k) continue;
    sum += unit_root(*k * q + a * order, order * q);
  }
  return sum;
}
}  // namespace detail

inline GaussSum gauss_sum(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw precondition_error("gauss_sum: character must be primitive");
  const cplx tau = detail::raw_gauss_sum(chi);
  const cplx tau_conj = detail::raw_gauss_sum(chi.conj());
  const double sign = chi.parity() == 0 ? 1.0 : -1.0;
  return {tau, std::abs(std::conj(tau_conj) - sign * tau)};
}

/// Splits a primitive chi mod q = v*w, gcd(v, w) = 1, into chi_v * chi_w.
inline std::pair<DirichletCharacter, DirichletCharacter> decompose(const DirichletCharacter& chi, i64 v) {
  const i64 q = chi.modulus();
  if (v < 1 || q % v != 0) throw precondition_error("decompose: v must divide q");
  const i64 w = q / v;
  if (std::gcd(v, w) != 1) throw precondition_error("decompose: gcd(v, w) must be 1");
  auto restrict_to = [&](i64 m, i64 other) {
    std::vector<i64> table(m, DirichletCharacter::kZero);
    for (i64 a = 0; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      const i64 lift = crt_pair(a, m, 1, other);
      table[a] = *chi.exponent(lift);
    }
    return DirichletCharacter(m, std::move(table), chi.order());
  };
  return {restrict_to(v, w), restrict_to(w, v)};
}

struct TwistedDivisorSum {
  i64 m;
  cplx s;
  cplx value;
};

/// sigma_s(m, chi) = sum_{d | m} d^s chi(m/d).
inline TwistedDivisorSum sigma_twisted(i64 m, cplx s, const DirichletCharacter& chi) {
  if (m < 1) throw precondition_error("sigma_twisted: m must be positive");
  cplx sum{0.0, 0.0};
  for (i64 d : divisors(m)) {
    const cplx c = chi(m / d);
    if (c == cplx{0.0, 0.0}) continue;
    sum += std::exp(s * std::log(static_cast<double>(d))) * c;
  }
  return {m, s, sum};
}

/// Both sides of the Ramanujan-type character sum identity
///   sum_{d mod c, (c,d)=1} chi(d) e(md/c)
///     = chi(sgn m) tau(chi) sum_{d | (|m|, c/q)} d conj(chi)(|m|/d) chi(c/(dq)) mu(c/(dq)).
struct CharSumPair {
  cplx lhs;
  cplx rhs;
};

inline CharSumPair char_sum_pair(const DirichletCharacter& chi, i64 m, i64 c) {
  const i64 q = chi.modulus();
  if (!chi.is_primitive()) throw precondition_error("char_sum_pair: character must be primitive");
  if (m == 0) throw precondition_error("char_sum_pair: m must be nonzero");
  if (c < 1 || c % q != 0) throw precondition_error("char_sum_pair: c must be a positive multiple of q");

  const i64 order = chi.order();
  cplx lhs{0.0, 0.0};
  for (i64 d = 0; d < c; ++d) {
    if (std::gcd(c, d) != 1) continue;
    const i64 k = *chi.exponent(d);
    // chi(d) e(md/c) = e(k/Q + md/c)
    lhs += unit_root(k * c + mod(m * d, c) * order, order * c);
  }

  const i64 abs_m = m < 0 ? -m : m;
  const i64 cq = c / q;
  const DirichletCharacter chi_bar = chi.conj();
  cplx inner{0.0, 0.0};
  for (i64 d : divisors(std::gcd(abs_m, cq))) {
    const i64 r = cq / d;
    const int mu = moebius(r);
    if (mu == 0) continue;
    inner += static_cast<double>(d * mu) * chi_bar(abs_m / d) * chi(r);
  }
  const cplx sign = m > 0 ? cplx{1.0, 0.0} : chi(-1);
  const cplx rhs = sign * gauss_sum(chi).value * inner;
  return {lhs, rhs};
}

}  // namespace eisl
