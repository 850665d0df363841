#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tncost {

/// Exact rational number used for all symbolic geometry and cost math.
/// Arbitrary precision: grid optimization compounds cut fractions, so
/// denominators outgrow any fixed-width integer.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Raised on invalid arguments, malformed input, or contract violations.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a rational quantity must scale to an integer but does not.
class DivisibilityError : public InputError {
 public:
  explicit DivisibilityError(const std::string& what) : InputError(what) {}
};

/// Raised when an exhaustive search exceeds its configured budget.
/// Carries the best value found so far.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, Rational best_so_far)
      : std::runtime_error(what), best_so_far(std::move(best_so_far)) {}
  Rational best_so_far;
};

inline Rational rat(long long num, long long den = 1) {
  if (den == 0) throw InputError("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

inline BigInt numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline std::int64_t to_int64_exact(const Rational& r,
                                   const std::string& context = "value") {
  if (!is_integer(r))
    throw DivisibilityError(context + " is not an integer: " + r.str());
  const BigInt n = numerator(r);
  if (n < std::numeric_limits<std::int64_t>::min() ||
      n > std::numeric_limits<std::int64_t>::max())
    throw InputError(context + " overflows 64-bit range: " + n.str());
  return static_cast<std::int64_t>(n);
}

/// True for 1, 2, 4, 8, ... (integer powers of two, exponent >= 0).
inline bool is_power_of_two(const Rational& r) {
  if (!is_integer(r) || r <= 0) return false;
  BigInt n = numerator(r);
  return (n & (n - 1)) == 0;
}

inline int log2_exact(const Rational& r) {
  if (!is_power_of_two(r)) throw InputError("not a power of two: " + r.str());
  BigInt n = numerator(r);
  int k = 0;
  while (n > 1) {
    n >>= 1;
    ++k;
  }
  return k;
}

/// Renders "p/q", or just "p" for integers. Never floating point, so
/// table output is diff-stable.
inline std::string to_fraction_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw InputError("cannot parse rational: '" + s + "'");
  }
}

}  // namespace tncost
