#pragma once

// Elementary integer arithmetic used throughout: factorization, divisors,
// Moebius, Euler phi, primitive roots and CRT.

#include <cstdint>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "eisl/errors.hpp"

namespace eisl {

using i64 = std::int64_t;

struct PrimePower {
  i64 p;
  int e;
  i64 value;  // p^e
};

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<__int128>(a) * b % m);
}

inline i64 powmod(i64 base, i64 exp, i64 m) {
  i64 result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline std::vector<PrimePower> factorize(i64 n) {
  if (n < 1) throw precondition_error("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.e;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

/// Moebius function via factorization.
inline int moebius(i64 n) {
  if (n < 1) throw precondition_error("moebius: n must be positive");
  int sign = 1;
  for (const auto& pp : factorize(n)) {
    if (pp.e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

inline i64 euler_phi(i64 n) {
  i64 result = n;
  for (const auto& pp : factorize(n)) result = result / pp.p * (pp.p - 1);
  return result;
}

/// Sorted list of positive divisors.
inline std::vector<i64> divisors(i64 n) {
  if (n < 1) throw precondition_error("divisors: n must be positive");
  std::vector<i64> small, large;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Multiplicative order of a modulo m; a must be a unit.
inline i64 multiplicative_order(i64 a, i64 m) {
  const i64 phi = euler_phi(m);
  i64 order = phi;
  for (const auto& pp : factorize(phi)) {
    for (int k = 0; k < pp.e; ++k) {
      if (powmod(a, order / pp.p, m) == 1)
        order /= pp.p;
      else
        break;
    }
  }
  return order;
}

/// Least primitive root modulo an odd prime power.
inline i64 least_primitive_root(i64 prime_power) {
  const i64 phi = euler_phi(prime_power);
  for (i64 g = 2; g < prime_power; ++g) {
    if (std::gcd(g, prime_power) != 1) continue;
    if (multiplicative_order(g, prime_power) == phi) return g;
  }
  if (prime_power <= 2) return 1;
  throw precondition_error("least_primitive_root: no primitive root");
}

/// Solution x mod (m1*m2) of x = r1 (mod m1), x = r2 (mod m2), gcd(m1, m2) = 1.
inline i64 crt_pair(i64 r1, i64 m1, i64 r2, i64 m2) {
  // extended Euclid for the inverse of m1 modulo m2
  i64 old_r = mod(m1, m2), r = m2, old_s = 1, s = 0;
  if (m2 == 1) return mod(r1, m1);
  while (r != 0) {
    const i64 quotient = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quotient * r};
    std::tie(old_s, s) = std::pair{s, old_s - quotient * s};
  }
  if (old_r != 1) throw precondition_error("crt_pair: moduli not coprime");
  const i64 inv = mod(old_s, m2);
  const i64 t = mulmod(mod(r2 - r1, m2), inv, m2);
  return mod(r1 + m1 * t, m1 * m2);
}

/// Number of divisors.
inline i64 divisor_count(i64 n) {
  i64 count = 1;
  for (const auto& pp : factorize(n)) count *= pp.e + 1;
  return count;
}

}  // namespace eisl
