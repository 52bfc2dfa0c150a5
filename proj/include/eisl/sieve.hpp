#pragma once

// Primes in progressions and the restricted divisor sums
//   sum_{T <= m <= 2T} |sigma_0(m, chi)|^2,   sigma_0(m, chi) = sum_{d | m} chi(d),
// with the parameter algebra used to bound them from below.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "eisl/arith.hpp"
#include "eisl/characters.hpp"
#include "eisl/errors.hpp"

namespace eisl {

/// Sieve of Eratosthenes up to `limit`, kept as a bitset and a sorted prime
/// list. Immutable after construction except for the internal count cache,
/// which is guarded.
class PrimeTable {
 public:
  explicit PrimeTable(i64 limit) : limit_(limit) {
    if (limit < 2) throw precondition_error("PrimeTable: limit must be >= 2");
    composite_.assign(static_cast<std::size_t>(limit + 1), false);
    composite_[0] = composite_[1] = true;
    for (i64 p = 2; p * p <= limit; ++p)
      if (!composite_[p])
        for (i64 k = p * p; k <= limit; k += p) composite_[k] = true;
    for (i64 n = 2; n <= limit; ++n)
      if (!composite_[n]) primes_.push_back(static_cast<std::uint32_t>(n));
  }

  i64 limit() const noexcept { return limit_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

  bool is_prime(i64 n) const {
    check(n);
    return n >= 0 && !composite_[n];
  }

  /// pi(x)
  i64 pi(i64 x) const {
    check(x);
    return std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint64_t>(std::max<i64>(x, 0))) -
           primes_.begin();
  }

  /// pi(x; q, a) for every residue a mod q, cached per (x, q).
  std::vector<i64> counts_by_residue(i64 x, i64 q) const {
    check(x);
    if (q < 1) throw precondition_error("PrimeTable: q must be positive");
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find({x, q});
      if (it != cache_.end()) return it->second;
    }
    std::vector<i64> counts(static_cast<std::size_t>(q), 0);
    for (auto p : primes_) {
      if (static_cast<i64>(p) > x) break;
      ++counts[static_cast<std::size_t>(p % q)];
    }
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(std::make_pair(x, q), counts);
    return counts;
  }

  /// pi(x; q, a)
  i64 pi(i64 x, i64 q, i64 a) const { return counts_by_residue(x, q)[static_cast<std::size_t>(mod(a, q))]; }

 private:
  void check(i64 n) const {
    if (n > limit_) throw precondition_error("PrimeTable: argument exceeds the table limit");
  }

  i64 limit_;
  std::vector<bool> composite_;
  std::vector<std::uint32_t> primes_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<i64, i64>, std::vector<i64>> cache_;
};

inline i64 prime_counts(const PrimeTable& table, i64 limit, i64 q, i64 a) {
  if (std::gcd(a, q) != 1) throw precondition_error("prime_counts: gcd(a, q) must be 1");
  return table.pi(limit, q, a);
}

// ---------------------------------------------------------------------------
// Restricted divisor sums

struct RestrictedSum {
  i64 t_lo;                  // ceil(T)
  i64 t_hi;                  // floor(2T)
  double value;
  std::optional<i64> exact;  // present for real characters
};

namespace detail {

// Visits sigma_0(m, chi) for m in [lo, hi] in blocks, factoring each block
// by trial division with the primes up to sqrt(hi). sigma_0 is multiplicative
// with local factor sum_{j <= e} chi(p)^j.
template <class Visit>
void for_each_sigma0(const DirichletCharacter& chi, i64 lo, i64 hi, Visit&& visit) {
  if (lo > hi) return;
  const i64 root = static_cast<i64>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<i64> small;
  {
    std::vector<bool> comp(static_cast<std::size_t>(root + 1), false);
    for (i64 p = 2; p <= root; ++p) {
      if (comp[p]) continue;
      small.push_back(p);
      for (i64 k = p * p; k <= root; k += p) comp[k] = true;
    }
  }
  const i64 order = chi.order();
  // sum_{j=0}^{e} e(jk/Q)
  auto local = [&](i64 p, int e) -> cplx {
    const auto k = chi.exponent(p);
    if (!k) return {1.0, 0.0};
    cplx acc{0.0, 0.0};
    for (int j = 0; j <= e; ++j) acc += unit_root(*k * j, order);
    return acc;
  };
  constexpr i64 kBlock = 1 << 20;
  std::vector<i64> rest;
  std::vector<cplx> acc;
  for (i64 start = lo; start <= hi; start += kBlock) {
    const i64 stop = std::min(hi, start + kBlock - 1);
    const std::size_t n = static_cast<std::size_t>(stop - start + 1);
    rest.resize(n);
    acc.assign(n, cplx{1.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) rest[i] = start + static_cast<i64>(i);
    for (i64 p : small) {
      for (i64 m = (start + p - 1) / p * p; m <= stop; m += p) {
        const std::size_t i = static_cast<std::size_t>(m - start);
        int e = 0;
        while (rest[i] % p == 0) {
          rest[i] /= p;
          ++e;
        }
        acc[i] *= local(p, e);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (rest[i] > 1) acc[i] *= local(rest[i], 1);
      visit(start + static_cast<i64>(i), acc[i]);
    }
  }
}

}  // namespace detail

/// sum_{T <= m <= 2T} |sigma_0(m, chi)|^2. Real characters are summed in
/// exact integer arithmetic (sigma_0 is then an integer).
inline RestrictedSum restricted_sigma_sum(const DirichletCharacter& chi, double big_t) {
  if (!(big_t >= 0.0)) throw domain_error("restricted_sigma_sum: T must be nonnegative");
  if (2.0 * big_t > 4e9) throw precondition_error("restricted_sigma_sum: 2T exceeds the supported range");
  RestrictedSum out{static_cast<i64>(std::ceil(big_t)), static_cast<i64>(std::floor(2.0 * big_t)), 0.0, std::nullopt};
  const i64 lo = std::max<i64>(out.t_lo, 1);
  if (chi.is_real()) {
    __int128 total = 0;
    detail::for_each_sigma0(chi, lo, out.t_hi, [&](i64, cplx v) {
      const i64 k = std::llround(v.real());
      total += static_cast<__int128>(k) * k;
    });
    out.exact = static_cast<i64>(total);
    out.value = static_cast<double>(total);
  } else {
    double total = 0.0;
    detail::for_each_sigma0(chi, lo, out.t_hi, [&](i64, cplx v) { total += std::norm(v); });
    out.value = total;
  }
  return out;
}

/// The same sum by enumerating the divisors of each m.
inline double restricted_sigma_sum_direct(const DirichletCharacter& chi, double big_t) {
  double total = 0.0;
  for (i64 m = std::max<i64>(static_cast<i64>(std::ceil(big_t)), 1); m <= static_cast<i64>(std::floor(2 * big_t));
       ++m) {
    cplx s{0.0, 0.0};
    for (i64 d : divisors(m)) s += chi(d);
    total += std::norm(s);
  }
  return total;
}

struct PrimeRestrictedIdentity {
  double sum_over_primes;     // sum over primes T < p <= 2T, p coprime to q, of |1 + chi(p)|^2
  double progression_form;    // 2 sum_a (1 + Re chi(a)) (pi(2T; q, a) - pi(T; q, a))
  i64 primes_in_range;        // pi(2T) - pi(T)
};

inline PrimeRestrictedIdentity prime_restricted_identity(const DirichletCharacter& chi, i64 big_t,
                                                         const PrimeTable& table) {
  const i64 q = chi.modulus();
  if (2 * big_t > table.limit()) throw precondition_error("prime_restricted_identity: 2T exceeds the table");
  PrimeRestrictedIdentity out{0.0, 0.0, table.pi(2 * big_t) - table.pi(big_t)};
  for (auto p : table.primes()) {
    if (static_cast<i64>(p) <= big_t) continue;
    if (static_cast<i64>(p) > 2 * big_t) break;
    if (q % static_cast<i64>(p) == 0) continue;
    out.sum_over_primes += std::norm(1.0 + chi(p));
  }
  const auto hi = table.counts_by_residue(2 * big_t, q);
  const auto lo = table.counts_by_residue(big_t, q);
  for (i64 a = 1; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    out.progression_form += 2.0 * (1.0 + chi(a).real()) * static_cast<double>(hi[a % q] - lo[a % q]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brun-Titchmarsh

struct BrunTitchmarsh {
  i64 observed;
  double bound;
  bool ok;
};

/// pi(x + y; q, a) - pi(x; q, a) against 2y/(phi(q) log(y/q)) (1 + 8/log(y/q)).
inline double brun_titchmarsh_bound(i64 q, double y) {
  const double l = std::log(y / static_cast<double>(q));
  return 2.0 * y / (static_cast<double>(euler_phi(q)) * l) * (1.0 + 8.0 / l);
}

inline BrunTitchmarsh brun_titchmarsh_check(const PrimeTable& table, i64 q, i64 a, i64 x, i64 y) {
  if (std::gcd(a, q) != 1) throw precondition_error("brun_titchmarsh_check: gcd(a, q) must be 1");
  if (x < 2) throw precondition_error("brun_titchmarsh_check: x must be >= 2");
  if (y < 2 * q) throw precondition_error("brun_titchmarsh_check: y must be >= 2q");
  BrunTitchmarsh out;
  out.observed = table.pi(x + y, q, a) - table.pi(x, q, a);
  out.bound = brun_titchmarsh_bound(q, static_cast<double>(y));
  out.ok = static_cast<double>(out.observed) <= out.bound;
  return out;
}

// ---------------------------------------------------------------------------
// Parameter algebra for characters of order Q >= 3

using Rational = boost::rational<i64>;

struct BalRamParams {
  i64 big_q;
  Rational delta;
  i64 m;
  Rational x;
  Rational slack;  // 1 - delta - 2(1+delta) X + 2(1+delta)/Q
  bool m_in_range;
  bool x_in_range;
  bool slack_ok;

  bool ok() const { return m_in_range && x_in_range && slack_ok; }
};

inline BalRamParams bal_ram_parameters(i64 big_q) {
  if (big_q < 3) throw precondition_error("bal_ram_parameters: Q must be >= 3");
  const Rational delta(1, 10);
  const Rational one(1);
  const Rational ratio = (one + 4 * delta) / (2 * (one + delta));  // 7/11
  const Rational mid = ratio * Rational(big_q, 2) + Rational(1, 2);
  const i64 m = mid.numerator() / mid.denominator();  // floor, mid > 0
  const Rational x(big_q - 2 * m, big_q);
  const Rational slack = one - delta - 2 * (one + delta) * x + 2 * (one + delta) / Rational(big_q);
  BalRamParams p{big_q, delta, m, x, slack, false, false, false};
  p.m_in_range = 1 <= m && m <= big_q / 2;
  p.x_in_range = Rational(1, 33) <= x && x <= Rational(23, 33);
  p.slack_ok = slack >= delta;
  return p;
}

struct ComplexLowerConstant {
  i64 big_q;
  i64 big_k;
  double big_t;
  bool partial;              // T was capped below q^K
  double sum;                // restricted divisor sum
  double floor;              // 2 (1 - cos pi X) delta T / log T
  double ratio;              // sum / floor
  i64 primes_in_range;       // pi(2T) - pi(T), when a table was supplied
  double prime_floor;        // (1 - delta) T / log T
  std::optional<bool> prime_floor_ok;
};

inline double complex_floor(const BalRamParams& p, double big_t) {
  const double x = boost::rational_cast<double>(p.x);
  const double delta = boost::rational_cast<double>(p.delta);
  return 2.0 * (1.0 - std::cos(std::numbers::pi * x)) * delta * big_t / std::log(big_t);
}

/// T = min(q^K, cap). The prime-count comparison is made when `table` covers 2T.
inline ComplexLowerConstant complex_lower_constant(const DirichletCharacter& chi, int big_k, double cap,
                                                   const PrimeTable* table = nullptr) {
  if (chi.order() < 3) throw precondition_error("complex_lower_constant: needs a character of order >= 3");
  if (big_k < 1) throw precondition_error("complex_lower_constant: K must be >= 1");
  const double full = std::pow(static_cast<double>(chi.modulus()), big_k);
  ComplexLowerConstant out{};
  out.big_q = chi.order();
  out.big_k = big_k;
  out.big_t = std::floor(std::min(full, cap));
  out.partial = full > cap;
  const auto params = bal_ram_parameters(out.big_q);
  out.sum = restricted_sigma_sum(chi, out.big_t).value;
  out.floor = complex_floor(params, out.big_t);
  out.ratio = out.sum / out.floor;
  const double delta = boost::rational_cast<double>(params.delta);
  out.prime_floor = (1.0 - delta) * out.big_t / std::log(out.big_t);
  const i64 t = static_cast<i64>(out.big_t);
  if (table && 2 * t <= table->limit()) {
    out.primes_in_range = table->pi(2 * t) - table->pi(t);
    out.prime_floor_ok = static_cast<double>(out.primes_in_range) >= out.prime_floor;
  }
  return out;
}

struct QuadraticDiagnostic {
  i64 big_t;
  i64 main_term;             // 2 (pi(2T) - pi(T))
  i64 subtracted;            // 2 sum_{chi(a) = -1} (pi(2T; q, a) - pi(T; q, a))
  double bt_estimate;        // Brun-Titchmarsh upper estimate of the subtracted term
  double guaranteed_floor;   // main_term - bt_estimate, possibly negative
};

inline QuadraticDiagnostic quadratic_diagnostic(const DirichletCharacter& chi, i64 big_t, const PrimeTable& table) {
  if (!chi.is_quadratic()) throw precondition_error("quadratic_diagnostic: character must be quadratic");
  const i64 q = chi.modulus();
  if (2 * big_t > table.limit()) throw precondition_error("quadratic_diagnostic: 2T exceeds the table");
  QuadraticDiagnostic out{big_t, 2 * (table.pi(2 * big_t) - table.pi(big_t)), 0, 0.0, 0.0};
  const auto hi = table.counts_by_residue(2 * big_t, q);
  const auto lo = table.counts_by_residue(big_t, q);
  for (i64 a = 1; a < q; ++a) {
    if (std::gcd(a, q) != 1 || chi(a).real() > 0) continue;
    out.subtracted += 2 * (hi[a] - lo[a]);
    out.bt_estimate += 2.0 * brun_titchmarsh_bound(q, static_cast<double>(big_t));
  }
  out.guaranteed_floor = static_cast<double>(out.main_term) - out.bt_estimate;
  return out;
}

struct SieveRow {
  i64 q;
  int chi_id;
  i64 big_q;
  double big_t;
  double sum;
  double floor;
  double ratio;
};

inline void write_sieve_csv(std::ostream& os, const std::vector<SieveRow>& rows) {
  os << "q,chi_id,Q,T,sum,floor,ratio\n";
  for (const auto& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%lld,%d,%lld,%.17g,%.17g,%.17g,%.17g\n", static_cast<long long>(r.q), r.chi_id,
                  static_cast<long long>(r.big_q), r.big_t, r.sum, r.floor, r.ratio);
    os << buf;
  }
}

}  // namespace eisl
