#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace isolab {

/// Exact rational number; GMP keeps it in lowest terms with a positive denominator.
using Rational = mpq_class;

/// Thrown for malformed input or violated preconditions (CLI exit code 2).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a mathematical invariant fails to hold (CLI exit code 1).
class InvariantViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw UsageError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "7", "-3/4", "0.125" or "1.5e-3" exactly.
Rational parse_rational(std::string_view text);

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string numerator_string(const Rational& r) { return r.get_num().get_str(); }
inline std::string denominator_string(const Rational& r) { return r.get_den().get_str(); }

}  // namespace isolab
