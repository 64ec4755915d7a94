#include "doctest.h"

#include "plectic/linalg.hpp"
#include "plectic/observables.hpp"
#include "plectic/random.hpp"

using namespace plectic;

namespace {

const Chart R3(3);
QVec v3(int a, int b, int c) { return {Q(a), Q(b), Q(c)}; }
Poly x(int i) { return Poly::coord(3, i); }
Form dx(Index idx, const Poly& f = Poly::constant(3, 1)) { return Form::basis(R3, std::move(idx), f); }

Plectic vol(int dim) { return make_plectic(Chart(dim), dim - 1, volume_form(Chart(dim))); }

AffSimplex triangle() { return make_simplex(R3, {v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0)}); }
AffSimplex segment() { return make_simplex(R3, {v3(0, 0, 0), v3(1, 0, 0)}); }

// Wedge of constant fields, contracted into omega, is the oracle for the defining relation.
Form contraction(const Plectic& P, const std::vector<QVec>& gens) {
  Form f = P.omega;
  for (const auto& g : gens)
    f = interior(constant_field(P.chart, g), f);
  return f;
}

bool relation_holds(const Plectic& P, const ObsSimplex& o) {
  if (o.degenerate())
    return o.alpha.is_zero();
  if (o.dim() == P.n)
    return ext_d(o.alpha) == P.omega;
  return ext_d(o.alpha) == contraction(P, o.generators) * Q(-o.sign);
}

// a == c * b for some c > 0, or both zero.
bool positive_multiple(const Form& a, const Form& b) {
  if (a.is_zero() || b.is_zero())
    return a.is_zero() && b.is_zero();
  for (const auto& [idx, p] : b.terms()) {
    auto it = a.terms().find(idx);
    if (it == a.terms().end())
      return false;
    for (const auto& [e, q] : p.terms()) {
      auto jt = it->second.terms().find(e);
      if (jt == it->second.terms().end())
        return false;
      Q c = jt->second / q;
      return c > 0 && a == b * c;
    }
  }
  return false;
}

ObsSimplex random_obs(RandomSource& rs, const Plectic& P, int k) {
  while (true) {
    std::vector<QVec> verts;
    for (int i = 0; i <= k; ++i)
      verts.push_back(rs.point(P.chart.dim, 2));
    if (!affinely_independent(verts))
      continue;
    std::vector<QVec> gens;
    for (int i = 0; i < P.n - k; ++i)
      gens.push_back(rs.vector(P.chart.dim, 2));
    std::vector<QVec> all = gens;
    for (int j = 1; j <= k; ++j) {
      QVec e(P.chart.dim);
      for (int r = 0; r < P.chart.dim; ++r)
        e[r] = verts[j][r] - verts[0][r];
      all.push_back(e);
    }
    // Generic position: generators transverse to the simplex.
    if (rank(all) != static_cast<int>(all.size()))
      continue;
    return make_obs(P, AffSimplex{verts}, gens);
  }
}

} // namespace

TEST_CASE("simplex construction") {
  CHECK_NOTHROW(triangle());
  CHECK_THROWS(make_simplex(R3, {v3(0, 0, 0), v3(1, 1, 1), v3(2, 2, 2)}));
  CHECK_THROWS(make_simplex(R3, {v3(0, 0, 0), {Q(1), Q(0)}}));
  CHECK_THROWS(make_simplex(Chart(2), {{Q(0), Q(0)}, {Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(1)}}));
  auto A = affine_differential(triangle());
  CHECK(A == std::vector<QVec>{{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(0), Q(0)}});
}

TEST_CASE("canonical_span") {
  auto s = canonical_span({v3(0, 0, 2)}, 3);
  CHECK(s.rows == std::vector<QVec>{v3(0, 0, 1)});
  CHECK(s.sign == 1);
  s = canonical_span({v3(0, 0, -3)}, 3);
  CHECK(s.rows == std::vector<QVec>{v3(0, 0, 1)});
  CHECK(s.sign == -1);
  s = canonical_span({v3(0, 1, 0), v3(1, 0, 0)}, 3);
  CHECK(s.rows == std::vector<QVec>{v3(0, 1, 0), v3(1, 0, 0)});
  CHECK(s.sign == 1);
  s = canonical_span({v3(1, 0, 0), v3(0, 1, 0)}, 3);
  CHECK(s.sign == -1);
  s = canonical_span({v3(1, 1, 0), v3(2, 2, 0)}, 3);
  CHECK(s.sign == 0);
  CHECK(s.rows.size() == 1);
  CHECK(canonical_span({}, 3).sign == 1);

  // Orientation oracle: the raw bivector is a positive multiple of the canonical one times sign.
  RandomSource rs(5);
  for (int t = 0; t < 30; ++t) {
    QVec a = rs.vector(3), b = rs.vector(3);
    auto cs = canonical_span({a, b}, 3);
    if (cs.sign == 0)
      continue;
    QMatrix raw{{a[0], a[1]}, {b[0], b[1]}}, can{{cs.rows[0][0], cs.rows[0][1]}, {cs.rows[1][0], cs.rows[1][1]}};
    QMatrix raw13{{a[0], a[2]}, {b[0], b[2]}}, can13{{cs.rows[0][0], cs.rows[0][2]}, {cs.rows[1][0], cs.rows[1][2]}};
    Q r = determinant(raw), c = determinant(can);
    if (c == 0) {
      r = determinant(raw13);
      c = determinant(can13);
    }
    if (c == 0)
      continue;
    CHECK(sgn(r / c) == cs.sign);
  }
}

TEST_CASE("make_obs examples") {
  Plectic P = vol(3);
  ObsSimplex s = make_obs(P, segment(), {v3(0, 0, 2)});
  CHECK(s.generators == std::vector<QVec>{v3(0, 0, 1)});
  CHECK(s.sign == 1);
  CHECK(s.alpha == (dx({2}, x(1)) - dx({1}, x(2))) * Q(-1, 2));
  CHECK(relation_holds(P, s));

  ObsSimplex top = make_obs(P, triangle(), {});
  CHECK(top.generators.empty());
  CHECK(top.alpha == homotopy_primitive(P.omega));
  CHECK(ext_d(top.alpha) == P.omega);
  CHECK(top.relation_sign(P) == -1);

  ObsSimplex neg = make_obs(P, segment(), {v3(0, 0, -3)});
  CHECK(neg.generators == std::vector<QVec>{v3(0, 0, 1)});
  CHECK(neg.sign == -1);
  CHECK(neg.alpha == -s.alpha);

  CHECK_THROWS_AS(make_obs(P, segment(), {}), std::invalid_argument);
  CHECK_THROWS_AS(make_obs(P, segment(), {v3(0, 0, 1), v3(0, 1, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(make_obs(vol(4), segment(), {{Q(0), Q(0), Q(0), Q(1)}, {Q(0), Q(0), Q(1), Q(0)}}),
                  std::invalid_argument);

  ObsSimplex zero = make_obs(P, segment(), {v3(0, 0, 0)});
  CHECK(zero.degenerate());
  CHECK(zero.alpha.is_zero());

  // Non-constant omega: generators whose contraction is not closed are rejected.
  Form w = volume_form(R3).times(Poly::constant(3, 1) + x(3) * x(3));
  Plectic curved = make_plectic(R3, 2, w);
  CHECK_NOTHROW(make_obs(curved, segment(), {v3(0, 1, 0)}));
  CHECK_THROWS_AS(make_obs(curved, segment(), {v3(0, 0, 1)}), std::invalid_argument);
}

TEST_CASE("face_normal") {
  CHECK(face_normal(2, 1) == QVec{Q(1), Q(0)});
  CHECK(face_normal(2, 0) == QVec{Q(-1), Q(-1)});
  CHECK(face_normal(1, 1) == QVec{Q(1)});
  CHECK_THROWS(face_normal(2, 3));
  CHECK_THROWS(face_normal(0, 0));
}

TEST_CASE("face_map examples") {
  Plectic P = vol(3);
  ObsSimplex top = make_obs(P, triangle(), {});
  FaceResult f = face_map(P, top, 2);
  CHECK(f.face.simplex == segment());
  CHECK(f.normal == v3(0, 1, 0));
  CHECK(f.face.generators == std::vector<QVec>{v3(0, 1, 0)});
  CHECK(relation_holds(P, f.face));
  CHECK(ext_d(f.eta_raw) == -interior(constant_field(R3, f.normal), ext_d(top.alpha)));
  CHECK(positive_multiple(f.eta_raw, f.face.alpha));

  ObsSimplex s = make_obs(P, segment(), {v3(0, 0, 1)});
  for (int i = 0; i <= 1; ++i) {
    FaceResult g = face_map(P, s, i);
    CHECK(g.face.dim() == 0);
    CHECK(g.face.alpha.degree() == 0);
    Form want = interior(constant_field(R3, g.normal), ext_d(s.alpha)) * Q(-sign_of(i));
    CHECK(ext_d(g.eta_raw) == want);
    CHECK(positive_multiple(g.eta_raw, g.face.alpha));
  }
  // Adding a closed form to alpha does not change the canonical face.
  ObsSimplex shifted = s;
  shifted.alpha = s.alpha + ext_d(Form::scalar(x(1) * x(2)));
  CHECK(face_map(P, shifted, 1).face == face_map(P, s, 1).face);

  CHECK_THROWS(face_map(P, s, 2));
  CHECK_THROWS(face_map(P, face_map(P, s, 0).face, 0));
}

TEST_CASE("face_map on random simplices") {
  RandomSource rs(17);
  for (int dim = 3; dim <= 4; ++dim) {
    Plectic P = vol(dim);
    for (int t = 0; t < 15; ++t) {
      ObsSimplex o = random_obs(rs, P, rs.uniform(1, P.n));
      CHECK(relation_holds(P, o));
      for (int i = 0; i <= o.dim(); ++i) {
        FaceResult f = face_map(P, o, i);
        CHECK(relation_holds(P, f.face));
        CHECK(ext_d(f.eta_raw) == -interior(constant_field(P.chart, f.normal), ext_d(o.alpha)) * Q(sign_of(i)));
        CHECK(positive_multiple(f.eta_raw, f.face.alpha));
      }
    }
  }
}

TEST_CASE("face identity") {
  Plectic P = vol(3);
  ObsSimplex top = make_obs(P, triangle(), {});
  auto r12 = check_face_identity(P, top, 1, 2);
  CHECK(r12.ok);
  CHECK(r12.relation == -1);
  CHECK(r12.lambda == 1);
  auto r01 = check_face_identity(P, top, 0, 1);
  CHECK(r01.ok);
  CHECK(r01.relation == -1);
  CHECK(r01.lambda == 2);
  CHECK(check_face_identity(P, top, 0, 2).ok);
  CHECK_THROWS(check_face_identity(P, top, 1, 1));

  ObsSimplex flat = make_obs(P, triangle(), {});
  flat.sign = 0;
  flat.alpha = Form::zero(R3, 2);
  auto fr = check_face_identity(P, flat, 0, 1);
  CHECK(fr.ok);

  RandomSource rs(23);
  for (int dim = 3; dim <= 4; ++dim) {
    Plectic Pd = vol(dim);
    for (int t = 0; t < 10; ++t) {
      ObsSimplex o = random_obs(rs, Pd, rs.uniform(2, Pd.n));
      for (int j = 1; j <= o.dim(); ++j)
        for (int i = 0; i < j; ++i) {
          auto rep = check_face_identity(Pd, o, i, j);
          CHECK(rep.ok);
          CHECK(rep.relation == -1);
          CHECK(rep.lambda > 0);
        }
    }
  }
}

TEST_CASE("generators commute") {
  RandomSource rs(3);
  for (int t = 0; t < 10; ++t)
    CHECK(lie_bracket(constant_field(R3, rs.vector(3)), constant_field(R3, rs.vector(3))).is_zero());
}

TEST_CASE("canonicalization is idempotent") {
  RandomSource rs(41);
  for (int dim = 3; dim <= 4; ++dim) {
    Plectic P = vol(dim);
    for (int t = 0; t < 10; ++t) {
      ObsSimplex o = random_obs(rs, P, rs.uniform(0, P.n));
      CHECK(make_obs(P, o.simplex, signed_generators(o)) == o);
      CHECK(make_obs(P, o.simplex, signed_generators(o)).alpha == o.alpha);
    }
  }
}

TEST_CASE("horn filling examples") {
  Plectic P = vol(3);
  ObsSimplex top = make_obs(P, triangle(), {});
  Horn h;
  h.m = 2;
  h.r = 0;
  h.faces.emplace(1, face_map(P, top, 1).face);
  h.faces.emplace(2, face_map(P, top, 2).face);
  ObsSimplex f = horn_fill(P, h);
  CHECK(f.simplex == triangle());
  CHECK(f.generators.empty());
  CHECK(f.alpha == homotopy_primitive(P.omega));
  CHECK(face_map(P, f, 1).face == h.faces.at(1));
  CHECK(face_map(P, f, 2).face == h.faces.at(2));

  ObsSimplex s = make_obs(P, segment(), {v3(0, 0, 1)});
  Horn h1 = horn_of(P, s, 0);
  REQUIRE(h1.faces.size() == 1);
  ObsSimplex g = horn_fill(P, h1);
  CHECK(g.dim() == 1);
  CHECK(face_map(P, g, 1).face == h1.faces.at(1));

  Horn bad_r = h;
  bad_r.r = 3;
  CHECK_THROWS_AS(horn_fill(P, bad_r), HornError);
  Horn too_big;
  too_big.m = 3;
  too_big.r = 0;
  CHECK_THROWS_AS(horn_fill(P, too_big), HornError);
}

TEST_CASE("incompatible horn reports the face pair") {
  Plectic P = vol(4);
  QVec u{Q(0), Q(0), Q(0), Q(1)};
  AffSimplex tri{{{Q(0), Q(0), Q(0), Q(0)}, {Q(1), Q(0), Q(0), Q(0)}, {Q(0), Q(1), Q(0), Q(0)}}};
  ObsSimplex x = make_obs(P, tri, {u});
  Horn h = horn_of(P, x, 0);
  FaceResult f1 = face_map(P, x, 1);
  QVec other{Q(0), Q(0), Q(1), Q(0)};
  h.faces[1] = make_obs(P, f1.face.simplex, {other, f1.normal});
  try {
    horn_fill(P, h);
    FAIL("expected HornError");
  } catch (const HornError& e) {
    CHECK(((e.face_a == 1 && e.face_b == 2) || (e.face_a == 2 && e.face_b == 1)));
    CHECK(e.shared_face == std::vector<QVec>{tri.vertices[0]});
  }
}

TEST_CASE("Kan round trip") {
  RandomSource rs(77);
  int fills = 0;
  for (int dim = 3; dim <= 4; ++dim) {
    Plectic P = vol(dim);
    for (int t = 0; t < 12; ++t) {
      ObsSimplex o = random_obs(rs, P, rs.uniform(1, P.n));
      for (int r = 0; r <= o.dim(); ++r) {
        Horn h = horn_of(P, o, r);
        ObsSimplex f = horn_fill(P, h);
        for (const auto& [i, face] : h.faces)
          CHECK(face_map(P, f, i).face == face);
        if (o.dim() >= 2)
          CHECK(f == o);
        CHECK(relation_holds(P, f));
        ++fills;
      }
    }
  }
  CHECK(fills > 40);
}

TEST_CASE("path_shift") {
  Plectic P = vol(3);
  ObsSimplex s = make_obs(P, segment(), {v3(0, 0, 1)});
  auto rep = path_shift(P, s);
  CHECK(rep.ok);
  CHECK(rep.start.simplex.vertices == std::vector<QVec>{v3(0, 0, 0)});
  CHECK(rep.end.simplex.vertices == std::vector<QVec>{v3(1, 0, 0)});
  CHECK(rep.v_end == v3(-1, 0, 0));
  CHECK(rep.v_start == v3(-1, 0, 0));

  AffSimplex up = make_simplex(R3, {v3(0, 0, 0), v3(0, 0, 1)});
  auto flat = path_shift(P, make_obs(P, up, {v3(0, 0, 1)}));
  CHECK(flat.ok);
  CHECK(flat.start.alpha == flat.end.alpha);

  auto top = path_shift(P, make_obs(P, triangle(), {}));
  CHECK(top.ok);
  CHECK(top.start.dim() == 1);
  CHECK(top.end.dim() == 1);

  CHECK_THROWS(path_shift(P, face_map(P, s, 0).face));
}
