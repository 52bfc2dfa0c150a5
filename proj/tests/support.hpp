#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include "eisl/characters.hpp"

namespace eisl::test {

/// The primitive character mod q for which pick(chi) holds. Tests name
/// characters by value, never by enumeration index.
inline DirichletCharacter primitive_where(i64 q, const std::function<bool(const DirichletCharacter&)>& pick) {
  for (const auto& chi : enumerate_primitive_characters(q))
    if (pick(chi)) return chi;
  throw std::logic_error("no primitive character matches");
}

inline bool near(cplx a, cplx b, double tol = 1e-9) { return std::abs(a - b) < tol; }

/// chi(a) == target exactly up to rounding
inline auto value_at(i64 a, cplx target) {
  return [=](const DirichletCharacter& chi) { return near(chi(a), target, 1e-12); };
}

inline DirichletCharacter quadratic(i64 q) {
  return primitive_where(q, [](const DirichletCharacter& c) { return c.is_quadratic(); });
}

// Real primitive characters mod 8: chi(-1) = +1 and -1.
inline DirichletCharacter chi8_even() {
  return primitive_where(8, [](const DirichletCharacter& c) { return c.parity() == 0; });
}
inline DirichletCharacter chi8_odd() {
  return primitive_where(8, [](const DirichletCharacter& c) { return c.parity() == 1; });
}
// The quartic character mod 5 with chi(2) = i.
inline DirichletCharacter chi5_complex() { return primitive_where(5, value_at(2, cplx{0.0, 1.0})); }

}  // namespace eisl::test
