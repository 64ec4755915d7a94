#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace plectic {

using Q = mpq_class;
using QVec = std::vector<Q>;

/// Thrown for malformed numeric text.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Accepts "n", "-n", "n/d" with d > 0 after normalization.
Q parse_rational(const std::string& text);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Q& q);

inline int sign_of(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

bool is_integer(const Q& q);

/// Fractional part in [0,1).
Q frac(const Q& q);

Q factorial(unsigned n);

} // namespace plectic
