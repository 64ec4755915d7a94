#pragma once

#include "plectic/rational.hpp"

#include <map>
#include <vector>

namespace plectic {

using Exponent = std::vector<int>;

/// Multivariate polynomial in x_1..x_dim with rational coefficients.
class Poly {
public:
  explicit Poly(int dim = 0) : dim_(dim) {}

  static Poly constant(int dim, const Q& c);
  /// The coordinate function x_i, 1-based.
  static Poly coord(int dim, int i);
  static Poly monomial(int dim, Exponent e, const Q& c);

  int dim() const { return dim_; }
  const std::map<Exponent, Q>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const;

  void add_term(const Exponent& e, const Q& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Q& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Q& c) { return a *= c; }
  friend Poly operator*(const Q& c, Poly a) { return a *= c; }
  friend Poly operator-(Poly a) { return a *= Q(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Partial derivative along x_i, 1-based.
  Poly deriv(int i) const;
  Q eval(const QVec& point) const;
  /// Substitutes x_i := subs[i-1], each a polynomial in another variable set.
  Poly compose(const std::vector<Poly>& subs) const;

private:
  int dim_;
  std::map<Exponent, Q> terms_;
};

} // namespace plectic
