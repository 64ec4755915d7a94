#include "doctest.h"

#include "plectic/linfty.hpp"
#include "plectic/random.hpp"

using namespace plectic;

namespace {

const Chart R3(3);
Poly x(int i) { return Poly::coord(3, i); }
Form dx(Index idx, const Poly& f = Poly::constant(3, 1)) { return Form::basis(R3, std::move(idx), f); }
MultiVec del(Index idx, const Poly& f = Poly::constant(3, 1)) {
  return MultiVec::basis(R3, std::move(idx), f);
}

Plectic vol3() { return make_plectic(R3, 2, volume_form(R3)); }
Plectic vol4() { return make_plectic(Chart(4), 3, volume_form(Chart(4))); }

UElement ham_element(const Plectic& P, const MultiVec& v) { return u_shift(P, solve_hamiltonian(P, v)); }

// Random Hamiltonian element with multivector degree k.
UElement random_element(RandomSource& rs, const Plectic& P, int k, int max_deg) {
  while (true) {
    Form alpha = rs.form(P.chart, P.n - k, max_deg + 1);
    MultiVec v = hamiltonian_field(P, alpha);
    if (!v.is_zero() && v.coef_degree() <= max_deg)
      return u_shift(P, make_hampair(P, alpha, v));
  }
}

} // namespace

TEST_CASE("plectic validation") {
  CHECK_NOTHROW(vol3());
  CHECK_THROWS(make_plectic(R3, 2, dx({1, 2}, Poly::constant(3, 1)) * Q(1)));
  CHECK_THROWS(make_plectic(R3, 1, dx({1, 2})));
  CHECK_THROWS(make_plectic(R3, 2, dx({1, 2, 3}, x(1))));
  Plectic sym = make_plectic(Chart(2), 1, volume_form(Chart(2)));
  CHECK(contraction_rank(sym, {0, 0}) == 2);
}

TEST_CASE("solve_hamiltonian") {
  Plectic P = vol3();
  HamPair h = solve_hamiltonian(P, del({3}));
  CHECK(h.alpha == -(dx({2}, x(1)) - dx({1}, x(2))) * Q(1, 2));
  CHECK(ext_d(h.alpha) == -dx({1, 2}));
  CHECK(solve_hamiltonian(P, MultiVec::zero(R3, 1)).alpha.is_zero());
  CHECK_THROWS_AS(solve_hamiltonian(P, del({1}, x(1))), VerificationError);

  Chart R2(2);
  Plectic sym = make_plectic(R2, 1, volume_form(R2));
  HamPair s = solve_hamiltonian(sym, MultiVec::basis(R2, {1}));
  CHECK(s.alpha == Form::scalar(-Poly::coord(2, 2)));
}

TEST_CASE("hamiltonian_field inverts the contraction") {
  Plectic P = vol4();
  RandomSource rs(1);
  for (int t = 0; t < 20; ++t) {
    int k = rs.uniform(1, 3);
    Form alpha = rs.form(P.chart, P.n - k, 2);
    MultiVec v = hamiltonian_field(P, alpha);
    CHECK(ext_d(alpha) == -interior(v, P.omega));
  }
}

TEST_CASE("u_shift and extract_codim") {
  Plectic P = vol3();
  UElement a = ham_element(P, del({1}));
  CHECK(a.upow() == 0);
  CHECK(a.deg1() == 0);
  CHECK(a.total_degree() == 0);
  UElement b = u_shift(P, make_hampair(P, Form::scalar(x(3)), -del({1, 2})));
  CHECK(b.upow() == 1);
  CHECK(b.deg1() == 0);
  CHECK(b.total_degree() == 1);

  Plectic P4 = vol4();
  UElement c = ham_element(P4, MultiVec::basis(Chart(4), {1}));
  CHECK(c.upow() == 0);
  CHECK(c.parts().front().form.degree() == 2);

  UElement sum = UElement::single(2, dx({1}), 2);
  sum.add(dx({1, 2}), 0);
  CHECK(extract_codim(sum, 2) == dx({1}));
  CHECK(extract_codim(sum, 0) == dx({1, 2}));
  CHECK(extract_codim(sum, 5).is_zero());
}

TEST_CASE("l1") {
  Plectic P = vol3();
  CHECK(l1(ham_element(P, del({1}))).is_zero());
  // n = 2: a 0-form at upow 0 sits in L_{1,0}
  CHECK(l1(UElement::single(2, Form::scalar(Poly::constant(3, 4)), 0)).is_zero());
  UElement y = UElement::single(3, dx({2}, x(1)), 0);
  CHECK(y.deg1() == 1);
  UElement dy = l1(y);
  CHECK(extract_codim(dy, 0) == dx({1, 2}));
  CHECK(dy.deg1() == 0);
}

TEST_CASE("lk examples") {
  Plectic P = vol3();
  UElement a = ham_element(P, del({1}));
  UElement b = ham_element(P, del({2}));
  UElement l = lk(P, {a, b});
  CHECK(extract_codim(l, 0) == -dx({3}));
  CHECK(l.deg1() == 0);

  UElement high = UElement::single(2, Form::scalar(x(1)), 0);
  CHECK(lk(P, {high, a}).is_zero());
  CHECK(lk(P, {a, a}).is_zero());

  UElement bare = UElement::single(2, dx({1}), 0);
  CHECK_THROWS(lk(P, {bare, a}));

  auto rep = check_skew(P, {a, b});
  CHECK(rep.ok);
  CHECK(extract_codim(lk(P, {b, a}), 0) == dx({3}));
}

TEST_CASE("ham_of_l2") {
  Plectic P = vol3();
  CHECK(ham_of_l2(P, ham_element(P, del({1})), ham_element(P, del({2}))).is_zero());
  UElement a = ham_element(P, del({1}, x(2)));
  UElement b = ham_element(P, del({2}));
  CHECK(ham_of_l2(P, a, b) == del({1}));

  RandomSource rs(21);
  Plectic P4 = vol4();
  for (int t = 0; t < 20; ++t) {
    UElement p = random_element(rs, P4, rs.uniform(1, 2), 2);
    UElement q = random_element(rs, P4, 1, 2);
    CHECK_NOTHROW(ham_of_l2(P4, p, q));
  }
}

TEST_CASE("bidegree and u-linearity of lk") {
  Plectic P = vol4();
  RandomSource rs(8);
  for (int t = 0; t < 20; ++t) {
    int k = rs.uniform(2, 3);
    std::vector<UElement> args;
    int usum = 0;
    for (int i = 0; i < k; ++i) {
      args.push_back(random_element(rs, P, 1 + (i == 0 && k == 2 ? rs.uniform(0, 1) : 0), 1));
      usum += args.back().upow();
    }
    UElement r = lk(P, args);
    CHECK(r.deg1() == k - 2);
    CHECK(r.upow() == usum);
  }
}

TEST_CASE("skew symmetry on random families") {
  RandomSource rs(2);
  Plectic P = vol4();
  for (int t = 0; t < 10; ++t) {
    std::vector<UElement> args;
    for (int i = 0; i < 3; ++i)
      args.push_back(random_element(rs, P, 1, 2));
    CHECK(check_skew(P, args).ok);
  }
  // mixed degrees
  for (int t = 0; t < 10; ++t) {
    std::vector<UElement> args{random_element(rs, P, 2, 1), random_element(rs, P, 1, 1)};
    CHECK(check_skew(P, args).ok);
  }
}

TEST_CASE("Jacobi identities") {
  Plectic P = vol3();
  std::vector<UElement> fam{ham_element(P, del({1}, x(2))), ham_element(P, del({2}, x(3))),
                            ham_element(P, del({3}, x(1)))};
  auto rep = check_jacobi(P, 3, fam);
  CHECK(rep.ok());
  CHECK(rep.ledger.size() == 7);
  CHECK(check_jacobi(P, 3, fam, JacobiMode::Paranoid).ok());

  CHECK(check_jacobi(P, 1, {UElement::single(2, Form::scalar(x(1) * x(2)), 0)}).ok());
  auto two = check_jacobi(P, 2, {fam[0], fam[1]});
  CHECK(two.ok());
  for (const auto& t : two.ledger)
    CHECK(t.contribution.is_zero());

  auto broken = check_jacobi(P, 3, fam, JacobiMode::Structural, BracketSign::ShiftedIndex);
  CHECK_FALSE(broken.ok());

  RandomSource rs(99);
  Plectic P4 = vol4();
  for (int m = 3; m <= 4; ++m)
    for (int t = 0; t < 5; ++t) {
      std::vector<UElement> args;
      for (int i = 0; i < m; ++i)
        args.push_back(random_element(rs, P4, 1, 2));
      CHECK(check_jacobi(P4, m, args).ok());
    }
}

TEST_CASE("differential of a wedge contraction equals the bracket sum") {
  Plectic P = vol3();
  auto r2 = verify_lemma31(P, {del({1}), del({2})});
  CHECK(r2.ok);
  CHECK(r2.lhs.is_zero());

  RandomSource rs(4);
  Plectic P4 = vol4();
  for (int m = 2; m <= 4; ++m)
    for (int t = 0; t < 4; ++t) {
      std::vector<MultiVec> fields;
      for (int i = 0; i < m; ++i)
        fields.push_back(*random_element(rs, P4, 1, 2).ham());
      CHECK(verify_lemma31(P4, fields).ok);
    }
  CHECK_THROWS(verify_lemma31(P, {del({1}, x(1)), del({2})}));
}

TEST_CASE("Heisenberg check") {
  Plectic P = vol3();
  CHECK(heisenberg_check(P, {del({1}), del({2}), del({3})}).ok);
  CHECK(heisenberg_check(P, {del({1}) + del({2}, x(1)), del({2})}).ok);
  auto bad = heisenberg_check(P, {del({1}, x(2)), del({2})});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness);
  CHECK(bad.witness->first == 1);
  CHECK(bad.witness->second == 2);
  CHECK(bad.witness_bracket == del({1}));
}
