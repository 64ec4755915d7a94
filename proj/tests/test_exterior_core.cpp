#include "doctest.h"

#include "plectic/combinatorics.hpp"
#include "plectic/exterior.hpp"
#include "plectic/random.hpp"
#include "plectic/selftest.hpp"

#include <algorithm>

using namespace plectic;

namespace {

const Chart R3(3);

Poly x(int i) { return Poly::coord(3, i); }
Poly one() { return Poly::constant(3, 1); }
Form dx(Index idx, const Poly& f = Poly::constant(3, 1)) { return Form::basis(R3, std::move(idx), f); }
MultiVec del(Index idx, const Poly& f = Poly::constant(3, 1)) {
  return MultiVec::basis(R3, std::move(idx), f);
}

// Lie derivative along a vector field by the derivation rule on f dx_I.
Form lie_oracle(const MultiVec& v, const Form& a) {
  Chart c = a.chart();
  Form r(c, a.degree());
  auto act = [&](const Poly& g) {
    Poly out(c.dim);
    for (const auto& [idx, vi] : v.terms())
      out += vi * g.deriv(idx[0]);
    return out;
  };
  for (const auto& [idx, f] : a.terms()) {
    r += Form::basis(c, idx, act(f));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      Poly vk(c.dim);
      if (auto it = v.terms().find({idx[k]}); it != v.terms().end())
        vk = it->second;
      for (int j = 1; j <= c.dim; ++j) {
        Index jdx = idx;
        jdx[k] = j;
        r += Form::basis(c, jdx, f * vk.deriv(j));
      }
    }
  }
  return r;
}

MultiVec decomposable(RandomSource& rs, Chart c, int deg, int max_deg) {
  std::vector<MultiVec> vs;
  for (int i = 0; i < deg; ++i)
    vs.push_back(rs.vector_field(c, max_deg));
  return wedge_all(vs, c);
}

} // namespace

TEST_CASE("koszul signs") {
  CHECK(koszul_sign(Permutation::identity(3), {1, 2, 3}) == 1);
  CHECK(koszul_sign(Permutation({2, 1}), {1, 1}) == -1);
  // x1^x2^x3 = eps * x2^x3^x1: moving x1 past x2 (odd,odd) then past x3 (odd,even).
  CHECK(koszul_sign(Permutation({2, 3, 1}), {1, 1, 0}) == -1);
  CHECK(koszul_sign(Permutation({3, 1, 2}), {1, 1, 0}) == 1);
  CHECK(koszul_sign(Permutation({2, 3, 1}), {1, 1, 1}) == 1);
  CHECK_THROWS(koszul_sign(Permutation({2, 1}), {1}));
  CHECK(Permutation({2, 3, 1}).sign() == 1);
  CHECK(Permutation({2, 1, 3}).sign() == -1);
}

TEST_CASE("unshuffles") {
  auto sh = unshuffles(2, 1);
  REQUIRE(sh.size() == 3);
  CHECK(sh[0] == Permutation({1, 2, 3}));
  CHECK(sh[1] == Permutation({1, 3, 2}));
  CHECK(sh[2] == Permutation({2, 3, 1}));
  CHECK(unshuffles(0, 3) == std::vector<Permutation>{Permutation::identity(3)});

  // brute-force filter of S_4
  std::vector<int> p{1, 2, 3, 4};
  std::vector<Permutation> brute;
  do {
    if (p[0] < p[1] && p[2] < p[3])
      brute.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(unshuffles(2, 2) == brute);
  CHECK(brute.size() == 6);
}

TEST_CASE("wedge") {
  CHECK(wedge(dx({1}), dx({2})) == dx({1, 2}));
  CHECK(wedge(dx({1}), dx({1})).is_zero());
  Form a = dx({1}, x(2));
  CHECK(wedge(a, dx({2})) == -wedge(dx({2}), a));
  CHECK(dx({2, 1}) == -dx({1, 2}));
}

TEST_CASE("exterior derivative") {
  CHECK(ext_d(dx({2}, x(1))) == dx({1, 2}));
  CHECK(ext_d(Form::scalar(Poly::constant(3, 5))).is_zero());
  Form expected = dx({1, 3}, x(2)) + dx({2, 3}, x(1));
  CHECK(ext_d(dx({3}, x(1) * x(2))) == expected);
}

TEST_CASE("interior product") {
  CHECK(interior(del({3}), dx({1, 2, 3})) == dx({1, 2}));
  CHECK(interior(del({1}), dx({1, 2})) == dx({2}));
  CHECK(interior(del({1, 2}), dx({1, 2})) == Form::scalar(one()));
  CHECK(interior(del({2, 1}), dx({1, 2})) == Form::scalar(-one()));
  CHECK(interior(del({1}), Form::scalar(x(1))).is_zero());
}

TEST_CASE("Lie derivative") {
  CHECK(lie_derivative(del({1}), dx({2}, x(1))) == dx({2}));
  CHECK(lie_derivative(del({1}), Form::zero(R3, 1)).is_zero());
  CHECK(lie_derivative(del({1, 2}), dx({1, 2})).is_zero());

  RandomSource rs(7);
  for (int t = 0; t < 50; ++t) {
    auto v = rs.vector_field(R3, 2);
    auto a = rs.form(R3, rs.uniform(0, 3), 2);
    CHECK(lie_derivative(v, a) == lie_oracle(v, a));
  }
}

TEST_CASE("Lie bracket of vector fields") {
  CHECK(lie_bracket(del({1}), del({2})).is_zero());
  CHECK(lie_bracket(del({2}, x(1)), del({1})) == -del({2}));
  auto v = del({1}, x(2) * x(3)) + del({3}, x(1));
  CHECK(lie_bracket(v, v).is_zero());
  CHECK_THROWS(lie_bracket(del({1, 2}), del({1})));
}

TEST_CASE("Schouten bracket examples") {
  CHECK(schouten(del({1, 2}), del({3})).is_zero());
  // [x2 d1 ^ d3, d2]: only u_1 = x2 d1 against v_1 = d2 contributes,
  // sign (-1)^{1+1}, [x2 d1, d2] = -d1, wedge with d3.
  MultiVec expected = wedge(lie_bracket(del({1}, x(2)), del({2})), del({3}));
  CHECK(schouten(del({1, 3}, x(2)), del({2})) == expected);
  CHECK(expected == -del({1, 3}));
  // degree-0 argument: [v, f] = v(f)
  CHECK(schouten(del({1}, x(2)), MultiVec::scalar(x(1) * x(1))) ==
        MultiVec::scalar(Poly::monomial(3, {1, 1, 0}, 2)));
}

TEST_CASE("calculus identities on random data") {
  RandomSource rs(11);
  for (int t = 0; t < 40; ++t) {
    int p = rs.uniform(0, 2);
    auto a = rs.form(R3, p, 3);
    auto b = rs.form(R3, rs.uniform(0, 2), 3);
    CHECK(ext_d(ext_d(a)).is_zero());
    CHECK(ext_d(wedge(a, b)) == wedge(ext_d(a), b) + wedge(a, ext_d(b)) * Q(sign_of(p)));
    CHECK(wedge(a, b) == wedge(b, a) * Q(sign_of(a.degree() * b.degree())));

    auto v = rs.vector_field(R3, 2);
    CHECK(interior(v, wedge(a, b)) ==
          wedge(interior(v, a), b) + wedge(a, interior(v, b)) * Q(sign_of(p)));

    int m = rs.uniform(1, 3), n = rs.uniform(1, 3);
    auto u = decomposable(rs, R3, m, 2);
    auto w = decomposable(rs, R3, n, 2);
    auto c = rs.form(R3, rs.uniform(0, 3), 2);
    // fundamental identity
    Form lhs = interior(schouten(u, w), c);
    Form rhs = lie_derivative(u, interior(w, c)) * Q(sign_of((m - 1) * n)) - interior(w, lie_derivative(u, c));
    CHECK(lhs == rhs);
    // graded antisymmetry
    CHECK((schouten(u, w) + schouten(w, u) * Q(sign_of((m - 1) * (n - 1)))).is_zero());
  }
}

TEST_CASE("homotopy operator") {
  Form h = homotopy_primitive(dx({1, 2}));
  CHECK(h == (dx({2}, x(1)) - dx({1}, x(2))) * Q(1, 2));
  CHECK(homotopy_primitive(dx({1})) == Form::scalar(x(1)));
  CHECK(homotopy_primitive(Form::zero(R3, 2)).is_zero());
  CHECK_THROWS_AS(homotopy_primitive(dx({2}, x(1))), NotClosedError);
  CHECK_THROWS(homotopy_primitive(Form::scalar(x(1))));

  RandomSource rs(3);
  for (int t = 0; t < 40; ++t) {
    auto b = rs.form(R3, rs.uniform(1, 2), 3);
    Form closed = ext_d(b);
    if (!closed.is_zero())
      CHECK(ext_d(homotopy_primitive(closed)) == closed);
    CHECK(homotopy_raw(ext_d(b)) + ext_d(homotopy_raw(b)) == b);
  }
}

TEST_CASE("affine pullback") {
  std::vector<QVec> A{{1, 0}, {0, 1}, {0, 0}};
  QVec b{0, 0, 0};
  Chart R2(2);
  CHECK(pullback_affine(dx({1, 2}), A, b) == Form::basis(R2, {1, 2}));
  CHECK(pullback_affine(dx({1, 2, 3}), A, b).is_zero());
  std::vector<QVec> B{{2, 3}, {1, -1}, {0, 5}};
  Form expected = Form::basis(R2, {1}) * Q(2) + Form::basis(R2, {2}) * Q(3);
  CHECK(pullback_affine(dx({1}), B, b) == expected);

  RandomSource rs(5);
  for (int t = 0; t < 30; ++t) {
    std::vector<QVec> M(3, QVec(2));
    for (auto& row : M)
      for (auto& e : row)
        e = rs.small(2);
    QVec off = rs.point(3, 2);
    auto a = rs.form(R3, rs.uniform(0, 1), 2);
    auto c = rs.form(R3, rs.uniform(0, 1), 2);
    CHECK(pullback_affine(ext_d(a), M, off) == ext_d(pullback_affine(a, M, off)));
    CHECK(pullback_affine(wedge(a, c), M, off) == wedge(pullback_affine(a, M, off), pullback_affine(c, M, off)));
  }
}

TEST_CASE("Schouten Jacobi and Leibniz rules") {
  RandomSource rs(19);
  for (int t = 0; t < 30; ++t) {
    std::vector<MultiVec> x;
    for (int i = 0; i < 3; ++i)
      x.push_back(rs.multivec(R3, rs.uniform(0, 3), 2));
    int p = x[0].degree(), q = x[1].degree(), s = x[2].degree();
    MultiVec J = schouten(x[0], schouten(x[1], x[2])) * Q(sign_of((p - 1) * (s - 1))) +
                 schouten(x[1], schouten(x[2], x[0])) * Q(sign_of((q - 1) * (p - 1))) +
                 schouten(x[2], schouten(x[0], x[1])) * Q(sign_of((s - 1) * (q - 1)));
    CHECK(J.is_zero());
    MultiVec L = schouten(x[0], wedge(x[1], x[2])) - wedge(schouten(x[0], x[1]), x[2]) -
                 wedge(x[1], schouten(x[0], x[2])) * Q(sign_of((p - 1) * q));
    CHECK(L.is_zero());
  }
}

TEST_CASE("decomposable expansion against iterated Leibniz") {
  // [d1, x1 d1 ^ x2 d2] = d1 ^ x2 d2 by hand
  CHECK(schouten_by_leibniz({del({1})}, {del({1}, x(1)), del({2}, x(2))}, R3) == del({1, 2}, x(2)));
  CHECK(schouten(del({1}), del({1, 2}, x(1) * x(2))) == del({1, 2}, x(2)));
  RandomSource rs(29);
  for (int t = 0; t < 30; ++t) {
    std::vector<MultiVec> u, v;
    for (int i = rs.uniform(1, 3); i > 0; --i)
      u.push_back(rs.vector_field(R3, 2));
    for (int i = rs.uniform(1, 3); i > 0; --i)
      v.push_back(rs.vector_field(R3, 2));
    CHECK(schouten(wedge_all(u, R3), wedge_all(v, R3)) == schouten_by_leibniz(u, v, R3));
  }
}
