#include "plectic/observables.hpp"
#include "plectic/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace plectic {

bool affinely_independent(const std::vector<QVec>& vertices) {
  if (vertices.empty())
    return false;
  QMatrix M;
  for (std::size_t j = 1; j < vertices.size(); ++j) {
    QVec row(vertices[0].size());
    for (std::size_t c = 0; c < row.size(); ++c)
      row[c] = vertices[j][c] - vertices[0][c];
    M.push_back(std::move(row));
  }
  return rank(M) == static_cast<int>(M.size());
}

AffSimplex make_simplex(Chart chart, std::vector<QVec> vertices) {
  if (vertices.empty())
    throw std::invalid_argument("simplex needs at least one vertex");
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != chart.dim)
      throw std::invalid_argument("vertex has wrong dimension");
  if (static_cast<int>(vertices.size()) - 1 > chart.dim)
    throw std::invalid_argument("simplex dimension exceeds chart dimension");
  if (!affinely_independent(vertices))
    throw std::invalid_argument("simplex vertices are affinely dependent");
  return AffSimplex{std::move(vertices)};
}

std::vector<QVec> affine_differential(const AffSimplex& s) {
  int dim = static_cast<int>(s.vertices.at(0).size());
  int k = s.dim();
  std::vector<QVec> A(dim, QVec(k));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < k; ++j)
      A[i][j] = s.vertices[j + 1][i] - s.vertices[0][i];
  return A;
}

OrientedSpan canonical_span(const std::vector<QVec>& vectors, int ambient_dim) {
  OrientedSpan out;
  if (vectors.empty()) {
    out.sign = 1;
    return out;
  }
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != ambient_dim)
      throw std::invalid_argument("generator has wrong dimension");
  QMatrix M = vectors;
  auto piv = rref(M);
  std::vector<std::pair<QVec, int>> rows;
  for (std::size_t r = 0; r < piv.size(); ++r)
    rows.emplace_back(primitive(M[r]), piv[r]);
  std::sort(rows.begin(), rows.end());
  for (const auto& [row, p] : rows)
    out.rows.push_back(row);
  if (piv.size() < vectors.size()) {
    out.sign = 0;
    return out;
  }
  std::size_t n = vectors.size();
  QMatrix C(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      C[i][j] = vectors[i][rows[j].second] / rows[j].first[rows[j].second];
  out.sign = sgn(determinant(C));
  return out;
}

int ObsSimplex::relation_sign(const Plectic& P) const {
  return dim() == P.n ? -1 : sign;
}

bool operator==(const ObsSimplex& a, const ObsSimplex& b) {
  return a.simplex == b.simplex && a.generators == b.generators && a.sign == b.sign;
}

bool operator<(const ObsSimplex& a, const ObsSimplex& b) {
  if (a.simplex != b.simplex)
    return a.simplex < b.simplex;
  if (a.generators != b.generators)
    return a.generators < b.generators;
  return a.sign < b.sign;
}

namespace {

MultiVec generator_wedge(const Plectic& P, const std::vector<QVec>& gens) {
  std::vector<MultiVec> fs;
  for (const auto& g : gens)
    fs.push_back(constant_field(P.chart, g));
  return wedge_all(fs, P.chart);
}

// Builds the canonical element; orientation multiplies the sign of the raw wedge.
ObsSimplex build(const Plectic& P, const AffSimplex& simplex, const std::vector<QVec>& raw, int orientation) {
  ObsSimplex x;
  x.simplex = simplex;
  int k = simplex.dim();
  if (k == P.n) {
    x.sign = 1;
    x.alpha = homotopy_primitive(P.omega);
    return x;
  }
  OrientedSpan span = canonical_span(raw, P.chart.dim);
  x.generators = span.rows;
  x.sign = span.sign * orientation;
  if (x.sign == 0) {
    x.alpha = Form::zero(P.chart, k);
    return x;
  }
  Form c = interior(generator_wedge(P, x.generators), P.omega);
  if (c.is_zero()) {
    x.alpha = Form::zero(P.chart, k);
    return x;
  }
  try {
    x.alpha = homotopy_primitive(c) * Q(-x.sign);
  } catch (const NotClosedError& e) {
    throw std::invalid_argument("generator contraction is not closed; generators are not Hamiltonian for omega");
  }
  return x;
}

// Removes from v its orthogonal projection onto the column span of T (dim x m, independent columns).
QVec reject(QVec v, const std::vector<QVec>& T) {
  std::size_t dim = v.size(), m = T.empty() ? 0 : T[0].size();
  if (m == 0)
    return v;
  QMatrix G(m, QVec(m));
  QVec rhs(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t r = 0; r < dim; ++r)
        G[a][b] += T[r][a] * T[r][b];
    for (std::size_t r = 0; r < dim; ++r)
      rhs[a] += T[r][a] * v[r];
  }
  QVec c = *solve(G, rhs);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t a = 0; a < m; ++a)
      v[r] -= c[a] * T[r][a];
  return v;
}

} // namespace

ObsSimplex make_obs(const Plectic& P, const AffSimplex& simplex, const std::vector<QVec>& raw_generators) {
  int k = simplex.dim();
  if (k < 0 || k > P.n)
    throw std::invalid_argument("simplex dimension must lie in 0..n");
  if (static_cast<int>(raw_generators.size()) != P.n - k)
    throw std::invalid_argument("expected n-k = " + std::to_string(P.n - k) + " generators, got " +
                                std::to_string(raw_generators.size()));
  for (const auto& v : simplex.vertices)
    if (static_cast<int>(v.size()) != P.chart.dim)
      throw std::invalid_argument("simplex lives in a different chart");
  return build(P, simplex, raw_generators, 1);
}

std::vector<QVec> signed_generators(const ObsSimplex& x) {
  std::vector<QVec> g = x.generators;
  if (x.sign < 0 && !g.empty())
    for (auto& c : g.front())
      c = -c;
  return g;
}

QVec face_normal(int k, int i) {
  if (k < 1 || i < 0 || i > k)
    throw std::out_of_range("face_normal: index out of range");
  QVec n(k, Q(0));
  if (i == 0)
    std::fill(n.begin(), n.end(), Q(-1));
  else
    n[i - 1] = 1;
  return n;
}

QVec face_direction(const AffSimplex& s, int i) {
  int k = s.dim();
  auto A = affine_differential(s);
  QVec nrm = face_normal(k, i);
  QVec v(A.size(), Q(0));
  for (std::size_t r = 0; r < A.size(); ++r)
    for (int c = 0; c < k; ++c)
      v[r] += A[r][c] * nrm[c];
  AffSimplex face = s;
  face.vertices.erase(face.vertices.begin() + i);
  return reject(std::move(v), affine_differential(face));
}

FaceResult face_map(const Plectic& P, const ObsSimplex& x, int i) {
  int k = x.dim();
  if (k < 1)
    throw std::invalid_argument("face_map needs a simplex of dimension >= 1");
  if (i < 0 || i > k)
    throw std::out_of_range("face index out of range");
  AffSimplex face = x.simplex;
  face.vertices.erase(face.vertices.begin() + i);
  QVec v = face_direction(x.simplex, i);

  Form c = interior(constant_field(P.chart, v), ext_d(x.alpha));
  Form eta = Form::zero(P.chart, k - 1);
  if (!c.is_zero()) {
    Form dc = ext_d(c);
    if (!dc.is_zero())
      throw VerificationError("i_v d alpha is not closed", dc);
    eta = homotopy_raw(c) * Q(-sign_of(i));
  }

  std::vector<QVec> raw = x.generators;
  raw.push_back(v);
  int orientation = -x.relation_sign(P) * sign_of(i);
  return FaceResult{build(P, face, raw, orientation), std::move(eta), std::move(v)};
}

namespace {

// Coordinates of a ^ b in the basis e_p ^ e_q, p < q.
QVec bivector(const QVec& a, const QVec& b) {
  QVec w;
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = p + 1; q < a.size(); ++q)
      w.push_back(a[p] * b[q] - a[q] * b[p]);
  return w;
}

} // namespace

FaceIdentityReport check_face_identity(const Plectic& P, const ObsSimplex& x, int i, int j) {
  if (!(0 <= i && i < j && j <= x.dim()))
    throw std::out_of_range("check_face_identity needs 0 <= i < j <= k");
  FaceResult aj = face_map(P, x, j);
  FaceResult a = face_map(P, aj.face, i);
  FaceResult bi = face_map(P, x, i);
  FaceResult b = face_map(P, bi.face, j - 1);
  FaceIdentityReport rep;
  rep.same_simplex = a.face.simplex == b.face.simplex;
  rep.same_generators = a.face.generators == b.face.generators;
  rep.same_sign = a.face.sign == b.face.sign;
  rep.ok = rep.same_simplex && rep.same_generators && rep.same_sign;

  QVec wa = bivector(aj.normal, a.normal), wb = bivector(bi.normal, b.normal);
  std::optional<Q> ratio;
  bool proportional = true;
  for (std::size_t t = 0; t < wa.size() && proportional; ++t) {
    if (wa[t] == 0 && wb[t] == 0)
      continue;
    if (wa[t] == 0 || wb[t] == 0) {
      proportional = false;
      break;
    }
    Q q = wb[t] / wa[t];
    if (ratio && *ratio != q)
      proportional = false;
    ratio = q;
  }
  if (proportional && ratio) {
    rep.relation = *ratio < 0 ? -1 : 1;
    rep.lambda = abs(*ratio);
  }
  return rep;
}

namespace {

std::vector<QVec> without(const std::vector<QVec>& v, std::initializer_list<int> drop) {
  std::vector<QVec> out;
  for (int t = 0; t < static_cast<int>(v.size()); ++t)
    if (std::find(drop.begin(), drop.end(), t) == drop.end())
      out.push_back(v[t]);
  return out;
}

std::vector<QVec> intersect(const std::vector<QVec>& a, const std::vector<QVec>& b, int dim) {
  if (a.empty() || b.empty())
    return {};
  // Solve sum s_i a_i - sum t_j b_j = 0.
  QMatrix M(dim, QVec(a.size() + b.size()));
  for (int r = 0; r < dim; ++r) {
    for (std::size_t i = 0; i < a.size(); ++i)
      M[r][i] = a[i][r];
    for (std::size_t j = 0; j < b.size(); ++j)
      M[r][a.size() + j] = -b[j][r];
  }
  std::vector<QVec> out;
  for (const auto& z : nullspace(M, a.size() + b.size())) {
    QVec v(dim, Q(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (int r = 0; r < dim; ++r)
        v[r] += z[i] * a[i][r];
    out.push_back(std::move(v));
  }
  return canonical_span(out, dim).rows;
}

std::vector<QVec> orthogonal_part(const std::vector<QVec>& basis, const QVec& v, int dim) {
  QMatrix M(1, QVec(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (int r = 0; r < dim; ++r)
      M[0][i] += basis[i][r] * v[r];
  std::vector<QVec> out;
  for (const auto& z : nullspace(M, basis.size())) {
    QVec w(dim, Q(0));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (int r = 0; r < dim; ++r)
        w[r] += z[i] * basis[i][r];
    out.push_back(std::move(w));
  }
  return canonical_span(out, dim).rows;
}

} // namespace

Horn horn_of(const Plectic& P, const ObsSimplex& x, int r) {
  Horn h;
  h.m = x.dim();
  h.r = r;
  for (int i = 0; i <= h.m; ++i)
    if (i != r)
      h.faces.emplace(i, face_map(P, x, i).face);
  if (h.m == 1)
    h.vertices = x.simplex.vertices;
  return h;
}

ObsSimplex horn_fill(const Plectic& P, const Horn& h) {
  int m = h.m;
  int dim = P.chart.dim;
  if (m < 1 || m > P.n)
    throw HornError("horn dimension must satisfy 1 <= m <= n");
  if (h.r < 0 || h.r > m)
    throw HornError("missing face index out of range");
  for (int i = 0; i <= m; ++i) {
    bool present = h.faces.count(i) > 0;
    if (present == (i == h.r))
      throw HornError("horn must have exactly the faces {0..m} minus r", i);
    if (present && h.faces.at(i).dim() != m - 1)
      throw HornError("horn face has wrong dimension", i);
  }

  // Vertices of the filler.
  std::vector<QVec> V = h.vertices;
  int a = h.faces.begin()->first;
  if (V.empty()) {
    if (h.faces.size() < 2)
      throw HornError("a horn with one face needs explicit filler vertices");
    auto it = std::next(h.faces.begin());
    int b = it->first;
    V = h.faces.at(a).simplex.vertices;
    const auto& fb = h.faces.at(b).simplex.vertices;
    V.insert(V.begin() + a, fb.at(a < b ? a : a - 1));
  }
  if (static_cast<int>(V.size()) != m + 1)
    throw HornError("filler vertex list has the wrong length");
  for (const auto& [i, f] : h.faces)
    if (f.simplex.vertices != without(V, {i}))
      throw HornError("faces do not bound a common simplex", a, i, without(V, {a, i}));
  if (!affinely_independent(V))
    throw HornError("union of horn vertices is affinely dependent");
  AffSimplex S{V};

  std::map<int, QVec> normal;
  for (const auto& [i, f] : h.faces) {
    if (f.degenerate())
      throw HornError("horn face carries degenerate generator data", i);
    normal.emplace(i, face_direction(S, i));
  }

  // Step 1: the shared generators.
  std::vector<QVec> U;
  if (m < P.n) {
    if (h.faces.size() >= 2) {
      U = h.faces.at(a).generators;
      for (const auto& [i, f] : h.faces)
        U = intersect(U, f.generators, dim);
    } else {
      U = orthogonal_part(h.faces.at(a).generators, normal.at(a), dim);
    }
  }
  for (const auto& [i, f] : h.faces) {
    std::vector<QVec> span = U;
    span.push_back(normal.at(i));
    auto cs = canonical_span(span, dim);
    if (static_cast<int>(U.size()) != P.n - m || cs.sign == 0 || cs.rows != f.generators) {
      int other = i == a ? (h.faces.size() > 1 ? std::next(h.faces.begin())->first : a) : a;
      throw HornError("incompatible generator sets between faces " + std::to_string(other) + " and " +
                          std::to_string(i),
                      other, i, without(V, {other, i}));
    }
  }

  // Steps 2 and 3: build the filler, fix its orientation against one face, verify all faces.
  ObsSimplex filler = make_obs(P, S, U);
  if (!U.empty() && face_map(P, filler, a).face.sign != h.faces.at(a).sign) {
    for (auto& c : U.front())
      c = -c;
    filler = make_obs(P, S, U);
  }
  for (const auto& [i, f] : h.faces)
    if (!(face_map(P, filler, i).face == f))
      throw HornError("filler face " + std::to_string(i) + " does not reproduce the given face", a, i,
                      without(V, {a, i}));
  return filler;
}

PathShiftReport path_shift(const Plectic& P, const ObsSimplex& x) {
  int k1 = x.dim();
  if (k1 < 1 || k1 > P.n)
    throw std::invalid_argument("path_shift needs a simplex of dimension 1..n");
  PathShiftReport rep;
  Form dbeta = ext_d(x.alpha);
  auto end = face_map(P, x, 0);
  auto start = face_map(P, x, k1);
  rep.end = end.face;
  rep.start = start.face;
  rep.eta_end = end.eta_raw;
  rep.eta_start = start.eta_raw;
  rep.v_end = end.normal;
  rep.v_start = start.normal;
  for (auto& c : rep.v_start)
    c *= sign_of(k1);
  bool ok_end = ext_d(rep.eta_end) == -interior(constant_field(P.chart, rep.v_end), dbeta);
  bool ok_start = ext_d(rep.eta_start) == -interior(constant_field(P.chart, rep.v_start), dbeta);
  rep.ok = ok_end && ok_start;
  return rep;
}

} // namespace plectic
