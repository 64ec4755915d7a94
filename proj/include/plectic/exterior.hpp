#pragma once

#include "plectic/poly.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace plectic {

struct Chart {
  int dim = 1;
  explicit Chart(int d);
  Chart() = default;
  friend bool operator==(const Chart&, const Chart&) = default;
};

/// Strictly increasing 1-based coordinate indices.
using Index = std::vector<int>;

struct FormTag {};
struct VecTag {};

/// Homogeneous element of the exterior algebra over polynomial functions:
/// dx_I for forms, d/dx_I for multivector fields.
template <class Tag>
class Graded {
public:
  Graded() = default;
  Graded(Chart chart, int degree) : chart_(chart), degree_(degree) {
    if (degree < 0)
      throw std::invalid_argument("negative degree");
  }

  static Graded zero(Chart chart, int degree) { return Graded(chart, degree); }
  /// The function f viewed as a degree-0 element.
  static Graded scalar(const Poly& f);
  /// f * e_I for a (possibly unsorted) index list; repeated indices give zero.
  static Graded basis(Chart chart, Index idx, const Poly& f);
  static Graded basis(Chart chart, Index idx) {
    return basis(chart, std::move(idx), Poly::constant(chart.dim, 1));
  }

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim; }
  int degree() const { return degree_; }
  const std::map<Index, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest polynomial degree among coefficients, -1 if zero.
  int coef_degree() const;

  /// Adds f at a sorted index tuple.
  void add(const Index& idx, const Poly& f);

  Graded& operator+=(const Graded& o);
  Graded& operator-=(const Graded& o);
  Graded& operator*=(const Q& c);
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator-(Graded a) { return a *= Q(-1); }
  friend Graded operator*(Graded a, const Q& c) { return a *= c; }
  friend Graded operator*(const Q& c, Graded a) { return a *= c; }
  /// Multiplication by a function.
  friend Graded operator*(const Poly& f, const Graded& a) { return a.times(f); }

  friend bool operator==(const Graded& a, const Graded& b) {
    return a.chart_ == b.chart_ && a.terms_ == b.terms_ && (a.degree_ == b.degree_ || a.is_zero());
  }

  Graded times(const Poly& f) const;
  /// Evaluates all coefficients at a point.
  std::map<Index, Q> at(const QVec& point) const;

private:
  Chart chart_;
  int degree_ = 0;
  std::map<Index, Poly> terms_;
};

using Form = Graded<FormTag>;
using MultiVec = Graded<VecTag>;

void require_same_chart(const Chart& a, const Chart& b, const char* op);

Form wedge(const Form& a, const Form& b);
MultiVec wedge(const MultiVec& a, const MultiVec& b);
MultiVec wedge_all(const std::vector<MultiVec>& vs, Chart chart);

Form ext_d(const Form& a);

/// Contraction with i_{v1^...^vn} = i_{vn} ... i_{v1} on decomposables.
Form interior(const MultiVec& v, const Form& a);

/// L_v a = d i_v a - (-1)^{|v|} i_v d a.
Form lie_derivative(const MultiVec& v, const Form& a);

MultiVec lie_bracket(const MultiVec& u, const MultiVec& v);

/// Schouten-Nijenhuis bracket, degree |u|+|v|-1.
MultiVec schouten(const MultiVec& u, const MultiVec& v);

/// Thrown by homotopy_primitive when its input is not closed.
class NotClosedError : public std::runtime_error {
public:
  NotClosedError(Form residual);
  const Form& residual() const { return residual_; }

private:
  Form residual_;
};

/// Radial homotopy operator without the closedness check; degree >= 1.
Form homotopy_raw(const Form& a);
/// Primitive H(a) with d H(a) = a for closed a of degree >= 1.
Form homotopy_primitive(const Form& a);

/// Pulls back along x = A t + b where A is dim x s (row major) and b has length dim.
Form pullback_affine(const Form& a, const std::vector<QVec>& A, const QVec& b);

/// Euler field sum x_i d/dx_i.
MultiVec euler_field(Chart chart);
/// The constant vector field sum c_i d/dx_i.
MultiVec constant_field(Chart chart, const QVec& c);
/// dx_1 ^ ... ^ dx_dim.
Form volume_form(Chart chart);

std::string to_string(const Form& a);
std::string to_string(const MultiVec& v);
std::string to_string(const Poly& p);

} // namespace plectic
