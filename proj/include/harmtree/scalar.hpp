#pragma once

// Number types shared by every module.
//
// Exact mode uses GMP rationals (always canonical: reduced, positive
// denominator). Float mode uses MPFR with a runtime precision and exists only
// for non-integer exponents p, where |x|^p leaves the rationals.

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "harmtree/errors.hpp"

namespace harmtree {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

enum class Mode { exact, floating };

inline constexpr unsigned default_precision_bits = 128;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Parses "p/q", "p", or a finite decimal such as "-1.25" into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers keep the "/1" so the format is uniform.
std::string to_string(const Rational& value);

/// Round-half-even rendering with `significant` significant digits.
std::string to_decimal(const Rational& value, int significant = 15);
std::string to_decimal(const Real& value, int significant = 15);

/// Exact value of a binary float.
Rational to_rational(const Real& value);

bool is_integer(const Rational& value);

/// Stable across runs and platforms; used to seed per-class random draws.
std::uint64_t stable_hash(const Rational& value);

template <class T>
T ipow(T base, unsigned long exponent) {
  T result(1);
  while (exponent != 0) {
    if (exponent & 1UL) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

template <class T>
T from_rational(const Rational& value) {
  if constexpr (is_exact_v<T>) {
    return value;
  } else {
    T num(boost::multiprecision::numerator(value));
    T den(boost::multiprecision::denominator(value));
    return num / den;
  }
}

/// Integer exponent of p, or throws nonintegral_p_in_exact_mode.
unsigned long integral_exponent(const Rational& p);

/// |x|^p. Exact mode demands integer p >= 0; float mode accepts any p >= 0.
template <class T>
T abs_pow(const T& x, const Rational& p) {
  T magnitude = x < 0 ? T(-x) : T(x);
  if constexpr (is_exact_v<T>) {
    return ipow(magnitude, integral_exponent(p));
  } else {
    if (is_integer(p) && p >= 0) return ipow(magnitude, integral_exponent(p));
    if (magnitude == 0) return T(0);
    return T(boost::multiprecision::pow(magnitude, from_rational<T>(p)));
  }
}

/// base^exponent for a positive integer base and a rational exponent, as used
/// by the (d-1)^{(p-1)l} weights.
template <class T>
T weight_pow(long base, const Rational& exponent) {
  if (is_integer(exponent) && exponent >= 0) {
    return ipow(T(base), integral_exponent(exponent));
  }
  if constexpr (is_exact_v<T>) {
    if (is_integer(exponent)) {
      return T(1) / ipow(T(base), integral_exponent(Rational(-exponent)));
    }
    return ipow(T(base), integral_exponent(exponent));  // throws
  } else {
    return T(boost::multiprecision::pow(T(base), from_rational<T>(exponent)));
  }
}

/// Sets the MPFR default precision for its lifetime. MPFR precision is process
/// global in this Boost version, so float evaluations with different
/// precisions must not overlap.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

}  // namespace harmtree
