#pragma once

#include "plectic/combinatorics.hpp"
#include "plectic/exterior.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plectic {

/// An identity that should hold exactly did not; carries the offending form.
class VerificationError : public std::runtime_error {
public:
  VerificationError(const std::string& what, Form residual)
      : std::runtime_error(what + ": " + to_string(residual)), residual_(std::move(residual)) {}
  const Form& residual() const { return residual_; }

private:
  Form residual_;
};

struct Plectic {
  Chart chart;
  int n = 1;
  Form omega;
  std::vector<QVec> samples;
};

/// Validates degree, closedness and pointwise nondegeneracy at the sample points
/// (the origin when none are given).
Plectic make_plectic(Chart chart, int n, Form omega, std::vector<QVec> samples = {});

/// Rank of v -> i_v omega on vector fields at a point.
int contraction_rank(const Plectic& P, const QVec& point);

struct HamPair {
  Form alpha;
  MultiVec v;
};

/// Checks d alpha = -i_v omega and L_v omega = 0.
HamPair make_hampair(const Plectic& P, Form alpha, MultiVec v);

/// alpha = -H(i_v omega).
HamPair solve_hamiltonian(const Plectic& P, const MultiVec& v);

/// A multivector v with i_v omega = -d alpha; omega must have constant coefficients.
MultiVec hamiltonian_field(const Plectic& P, const Form& alpha);

struct UPart {
  Form form;
  int upow = 0;
  /// n - upow - 1 - form degree; stored so that zero parts keep their bidegree.
  int deg1 = 0;
};

/// Sum of form * u^j parts with an optional Hamiltonian multivector.
class UElement {
public:
  UElement(int n, Chart chart) : n_(n), chart_(chart) {}
  static UElement single(int n, Form form, int upow, std::optional<MultiVec> ham = std::nullopt);
  /// The zero element of bidegree (deg1, upow).
  static UElement zero(int n, Chart chart, int deg1, int upow);

  int n() const { return n_; }
  const Chart& chart() const { return chart_; }
  const std::vector<UPart>& parts() const { return parts_; }
  const std::optional<MultiVec>& ham() const { return ham_; }
  void set_ham(std::optional<MultiVec> h) { ham_ = std::move(h); }

  /// Adds into the part with the same bidegree.
  void add(const Form& form, int upow);
  void add(const UPart& part);
  UElement& operator+=(const UElement& o);
  UElement& operator*=(const Q& c);
  bool is_zero() const;

  /// Bidegree of a single part: (n - upow - 1 - form degree, upow).
  int deg1(const UPart& p) const { return p.deg1; }
  /// Bidegree of the first part; callers use homogeneous elements.
  int deg1() const;
  int upow() const;
  int total_degree() const { return deg1() + upow(); }

  friend bool operator==(const UElement& a, const UElement& b);

private:
  int n_;
  Chart chart_;
  std::vector<UPart> parts_;
  std::optional<MultiVec> ham_;
};

std::string to_string(const UElement& x);

/// alpha u^{k-1} with ham = v, bidegree (0, k-1).
UElement u_shift(const Plectic& P, const HamPair& pair);
Form extract_codim(const UElement& x, int k);

/// Sign convention for l_k. ShiftedIndex uses (-1)^{sum i(|a_i|+1)} instead of
/// (-1)^{sum (i-1)(|a_i|+1)} and exists only as a negative control.
enum class BracketSign { Standard, ShiftedIndex };

UElement l1(const UElement& x);
UElement lk(const Plectic& P, const std::vector<UElement>& args,
            BracketSign rule = BracketSign::Standard);

/// (-1)^{|a||b|} [v_b, v_a], verified against d l_2(a,b) = -i_result omega.
MultiVec ham_of_l2(const Plectic& P, const UElement& a, const UElement& b,
                   BracketSign rule = BracketSign::Standard);

struct SkewReport {
  bool ok = true;
  int first = 0, second = 0; ///< failing transposition, 1-based
  UElement swapped{1, Chart(1)};
  UElement expected{1, Chart(1)};
};

/// Checks l_k(x_tau) = (-1)^tau eps(tau) l_k(x) for every transposition tau.
SkewReport check_skew(const Plectic& P, const std::vector<UElement>& args,
                      BracketSign rule = BracketSign::Standard);

struct JacobiTerm {
  int i = 0, j = 0;
  Permutation sigma;
  int sign = 1;
  bool structural_zero = false;
  UElement contribution{1, Chart(1)};
};

struct JacobiReport {
  int m = 0;
  UElement residual{1, Chart(1)};
  std::vector<JacobiTerm> ledger;
  bool ok() const { return residual.is_zero(); }
};

enum class JacobiMode { Structural, Paranoid };

JacobiReport check_jacobi(const Plectic& P, int m, const std::vector<UElement>& args,
                          JacobiMode mode = JacobiMode::Structural,
                          BracketSign rule = BracketSign::Standard);

struct Lemma31Term {
  int i = 0, j = 0;
  int exponent = 0;
};

struct Lemma31Report {
  bool ok = false;
  Form lhs, rhs;
  std::vector<Lemma31Term> terms;
};

Lemma31Report verify_lemma31(const Plectic& P, const std::vector<MultiVec>& fields);

struct HeisenbergReport {
  bool ok = true;
  /// First non-commuting pair (1-based i < j) and [v_j, v_i].
  std::optional<std::pair<int, int>> witness;
  MultiVec witness_bracket;
  /// Index subsets whose contraction is not closed.
  std::vector<std::vector<int>> failing_subsets;
  int subsets_checked = 0;
};

HeisenbergReport heisenberg_check(const Plectic& P, const std::vector<MultiVec>& fields);

} // namespace plectic
