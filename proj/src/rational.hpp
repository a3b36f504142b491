#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace brst {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is exactly the invariant we need. No floating
// point appears anywhere in the computational core.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool isZero(const Rational& r) { return sgn(r) == 0; }

inline std::string ratString(const Rational& r) { return r.get_str(); }

// Frequently needed when serializing: numerator/denominator as decimal strings.
inline std::string numString(const Rational& r) { return r.get_num().get_str(); }
inline std::string denString(const Rational& r) { return r.get_den().get_str(); }

}  // namespace brst
