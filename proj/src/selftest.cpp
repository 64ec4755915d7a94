#include "plectic/selftest.hpp"
#include "plectic/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace plectic {

namespace {

class Tally {
public:
  Tally(CheckResult& r, std::string label) : r_(r), label_(std::move(label)) {}
  Tally(const Tally&) = delete;
  ~Tally() { r_.notes.push_back(label_ + ": " + std::to_string(total_ - failed_) + "/" + std::to_string(total_)); }

  void operator()(bool ok, const std::function<std::string()>& witness) {
    ++total_;
    ++r_.instances;
    if (ok)
      return;
    ++failed_;
    ++r_.failures;
    if (r_.witness.empty())
      r_.witness = label_ + ": " + witness();
  }

private:
  CheckResult& r_;
  std::string label_;
  long total_ = 0, failed_ = 0;
};

CheckResult started(int criterion, std::string name) {
  CheckResult r;
  r.criterion = criterion;
  r.name = std::move(name);
  return r;
}

Plectic volume_plectic(int dim) { return make_plectic(Chart(dim), dim - 1, volume_form(Chart(dim))); }

QVec unit(int dim, int i) {
  QVec e(dim, Q(0));
  e[i] = 1;
  return e;
}

AffSimplex standard_simplex(int dim) {
  std::vector<QVec> V(1, QVec(dim, Q(0)));
  for (int i = 0; i < dim; ++i)
    V.push_back(unit(dim, i));
  return AffSimplex{V};
}

std::string vertices_str(const std::vector<QVec>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    s += i ? ", (" : "(";
    for (std::size_t j = 0; j < vs[i].size(); ++j)
      s += (j ? "," : "") + to_string(vs[i][j]);
    s += ")";
  }
  return s + "]";
}

std::vector<MultiVec> vector_fields(RandomSource& rs, Chart c, int count, int max_deg) {
  std::vector<MultiVec> vs;
  for (int i = 0; i < count; ++i)
    vs.push_back(rs.vector_field(c, max_deg));
  return vs;
}

PhaseSum plus(PhaseSum a, const PhaseSum& b) {
  for (const auto& [key, c] : b.terms)
    a.add(Phase{key.first, key.second}, c);
  return a;
}

StateCochain random_state(RandomSource& rs, const ObsComplex& cx, int level) {
  StateCochain s{level, {}};
  for (std::size_t i = 0; i < cx.size(level); ++i)
    s.values[static_cast<int>(i)] = Phase{Q(rs.uniform(0, 11)) / 12, rs.coin(0.25) ? rs.small(2) : Q(0)};
  return s;
}

StateCochain rephase(StateCochain s, const Phase& phi) {
  for (auto& [i, p] : s.values)
    p = p * phi;
  return s;
}

} // namespace

int max_degree_from_env(int fallback) {
  const char* v = std::getenv("PLECTIC_MAX_DEGREE");
  if (!v)
    return fallback;
  char* end = nullptr;
  long d = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || d < 1 || d > 16)
    return fallback;
  return static_cast<int>(d);
}

UElement random_hamiltonian(RandomSource& rs, const Plectic& P, int k, int max_deg) {
  while (true) {
    Form alpha = rs.form(P.chart, P.n - k, max_deg + 1);
    MultiVec v = hamiltonian_field(P, alpha);
    if (!v.is_zero() && v.coef_degree() <= max_deg)
      return u_shift(P, make_hampair(P, alpha, v));
  }
}

ObsSimplex random_obs(RandomSource& rs, const Plectic& P, int k, int radius) {
  int dim = P.chart.dim;
  while (true) {
    std::vector<QVec> verts;
    for (int i = 0; i <= k; ++i)
      verts.push_back(rs.point(dim, radius));
    if (!affinely_independent(verts))
      continue;
    std::vector<QVec> gens;
    for (int i = 0; i < P.n - k; ++i)
      gens.push_back(rs.vector(dim, radius));
    std::vector<QVec> all = gens;
    for (int j = 1; j <= k; ++j) {
      QVec e(dim);
      for (int r = 0; r < dim; ++r)
        e[r] = verts[j][r] - verts[0][r];
      all.push_back(e);
    }
    if (rank(all) != static_cast<int>(all.size()))
      continue;
    return make_obs(P, AffSimplex{verts}, gens);
  }
}

Form lie_derivative_by_derivation(const MultiVec& v, const Form& a) {
  if (v.degree() != 1)
    throw std::invalid_argument("lie_derivative_by_derivation needs a vector field");
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

MultiVec schouten_by_leibniz(const std::vector<MultiVec>& u, const std::vector<MultiVec>& v, Chart chart) {
  if (u.empty() || v.empty())
    throw std::invalid_argument("schouten_by_leibniz needs vector fields on both sides");
  int a = static_cast<int>(u.size());
  std::vector<MultiVec> rest(v.begin() + 1, v.end());
  if (a == 1) {
    if (v.size() == 1)
      return lie_bracket(u[0], v[0]);
    MultiVec R = wedge_all(rest, chart);
    return wedge(lie_bracket(u[0], v[0]), R) + wedge(v[0], schouten_by_leibniz(u, rest, chart));
  }
  if (v.size() == 1)
    return schouten_by_leibniz(v, u, chart) * Q(-1);
  MultiVec R = wedge_all(rest, chart);
  return wedge(schouten_by_leibniz(u, {v[0]}, chart), R) +
         wedge(v[0], schouten_by_leibniz(u, rest, chart)) * Q(sign_of(a - 1));
}

std::vector<UElement> negative_control_family(const Plectic& P) {
  auto ham = [&](const MultiVec& v) { return u_shift(P, solve_hamiltonian(P, v)); };
  Chart c = P.chart;
  Poly x1 = Poly::coord(c.dim, 1), x2 = Poly::coord(c.dim, 2), x3 = Poly::coord(c.dim, 3);
  return {ham(MultiVec::basis(c, {1}, x2)), ham(MultiVec::basis(c, {2}, x3)),
          ham(MultiVec::basis(c, {3}, x1))};
}

CheckResult check_calculus(const SelftestOptions& o) {
  CheckResult r = started(1, "calculus identities");
  RandomSource rs(o.seed);
  const Chart c(3);
  const int deg = o.max_degree;
  const int count = 200;
  {
    Tally t(r, "d^2 = 0");
    for (int i = 0; i < count; ++i) {
      Form a = rs.form(c, rs.uniform(0, 2), deg, 3);
      t(ext_d(ext_d(a)).is_zero(), [&] { return "a = " + to_string(a); });
    }
  }
  {
    Tally t(r, "graded Cartan identity");
    for (int i = 0; i < count; ++i) {
      MultiVec v = rs.vector_field(c, deg);
      Form a = rs.form(c, rs.uniform(0, 3), deg, 3);
      bool ok = lie_derivative(v, a) == lie_derivative_by_derivation(v, a);
      MultiVec w = rs.multivec(c, rs.uniform(1, 3), deg, 3);
      Form b = rs.form(c, rs.uniform(0, 3), deg, 3);
      ok = ok && ext_d(lie_derivative(w, b)) == lie_derivative(w, ext_d(b)) * Q(-sign_of(w.degree()));
      t(ok, [&] { return "v = " + to_string(v) + ", a = " + to_string(a) + ", w = " + to_string(w) +
                         ", b = " + to_string(b); });
    }
  }
  {
    Tally t(r, "fundamental identity");
    for (int i = 0; i < count; ++i) {
      int m = rs.uniform(1, 3), n = rs.uniform(1, 3);
      MultiVec u = rs.multivec(c, m, deg, 3), w = rs.multivec(c, n, deg, 3);
      Form a = rs.form(c, rs.uniform(0, 3), deg, 3);
      Form lhs = interior(schouten(u, w), a);
      Form rhs = lie_derivative(u, interior(w, a)) * Q(sign_of((m - 1) * n)) - interior(w, lie_derivative(u, a));
      t(lhs == rhs, [&] { return "u = " + to_string(u) + ", v = " + to_string(w) + ", a = " + to_string(a); });
    }
  }
  auto triple = [&](int lo) {
    int p = rs.uniform(lo, 3), q = rs.uniform(lo, 3), s = rs.uniform(lo, 3);
    return std::vector<MultiVec>{rs.multivec(c, p, deg, 3), rs.multivec(c, q, deg, 3), rs.multivec(c, s, deg, 3)};
  };
  {
    Tally t(r, "graded antisymmetry");
    for (int i = 0; i < count; ++i) {
      auto x = triple(0);
      int p = x[0].degree(), q = x[1].degree();
      bool ok = (schouten(x[0], x[1]) + schouten(x[1], x[0]) * Q(sign_of((p - 1) * (q - 1)))).is_zero();
      t(ok, [&] { return "u = " + to_string(x[0]) + ", v = " + to_string(x[1]); });
    }
  }
  {
    Tally t(r, "graded Jacobi");
    for (int i = 0; i < count; ++i) {
      auto x = triple(0);
      int p = x[0].degree() - 1, q = x[1].degree() - 1, s = x[2].degree() - 1;
      MultiVec J = schouten(x[0], schouten(x[1], x[2])) * Q(sign_of(p * s)) +
                   schouten(x[1], schouten(x[2], x[0])) * Q(sign_of(q * p)) +
                   schouten(x[2], schouten(x[0], x[1])) * Q(sign_of(s * q));
      t(J.is_zero(), [&] {
        return "u = " + to_string(x[0]) + ", v = " + to_string(x[1]) + ", w = " + to_string(x[2]);
      });
    }
  }
  {
    Tally t(r, "Leibniz rule");
    for (int i = 0; i < count; ++i) {
      auto x = triple(0);
      int p = x[0].degree(), q = x[1].degree();
      MultiVec L = schouten(x[0], wedge(x[1], x[2])) - wedge(schouten(x[0], x[1]), x[2]) -
                   wedge(x[1], schouten(x[0], x[2])) * Q(sign_of((p - 1) * q));
      t(L.is_zero(), [&] {
        return "u = " + to_string(x[0]) + ", v = " + to_string(x[1]) + ", w = " + to_string(x[2]);
      });
    }
  }
  {
    Tally t(r, "decomposable expansion vs iterated Leibniz");
    for (int i = 0; i < count; ++i) {
      auto u = vector_fields(rs, c, rs.uniform(1, 3), deg);
      auto v = vector_fields(rs, c, rs.uniform(1, 3), deg);
      bool ok = schouten(wedge_all(u, c), wedge_all(v, c)) == schouten_by_leibniz(u, v, c);
      t(ok, [&] { return "u = " + to_string(wedge_all(u, c)) + ", v = " + to_string(wedge_all(v, c)); });
    }
  }
  return r;
}

CheckResult check_wedge_contraction(const SelftestOptions& o) {
  CheckResult r = started(2, "wedge contraction identity");
  RandomSource rs(o.seed + 1);
  for (int dim : {3, 4}) {
    Plectic P = volume_plectic(dim);
    int deg = o.max_degree;
    for (int m = 2; m <= 4; ++m) {
      Tally t(r, "Q" + std::to_string(dim) + " m=" + std::to_string(m));
      for (int f = 0; f < 50; ++f) {
        std::vector<MultiVec> fields;
        for (int i = 0; i < m; ++i)
          fields.push_back(*random_hamiltonian(rs, P, 1, deg).ham());
        auto rep = verify_lemma31(P, fields);
        t(rep.ok, [&] {
          std::string s = "fields";
          for (const auto& v : fields)
            s += " " + to_string(v);
          return s + "; lhs - rhs = " + to_string(rep.lhs - rep.rhs);
        });
      }
    }
  }
  return r;
}

CheckResult check_linfty(const SelftestOptions& o) {
  CheckResult r = started(3, "L-infinity skew symmetry and Jacobi");
  RandomSource rs(o.seed + 2);
  for (int dim : {3, 4}) {
    Plectic P = volume_plectic(dim);
    int deg = o.max_degree;
    std::vector<std::vector<UElement>> families;
    for (int f = 0; f < 50; ++f) {
      std::vector<UElement> fam;
      for (int i = 0; i < 4; ++i)
        fam.push_back(random_hamiltonian(rs, P, rs.coin(0.75) ? 1 : rs.uniform(1, P.n), deg));
      families.push_back(std::move(fam));
    }
    std::string chart = "Q" + std::to_string(dim);
    {
      Tally t(r, chart + " skew symmetry k=2..4");
      for (const auto& fam : families)
        for (int k = 2; k <= 4; ++k) {
          std::vector<UElement> args(fam.begin(), fam.begin() + k);
          auto rep = check_skew(P, args);
          t(rep.ok, [&] {
            return "k=" + std::to_string(k) + " transposition (" + std::to_string(rep.first) + " " +
                   std::to_string(rep.second) + "): " + to_string(rep.swapped) + " vs " + to_string(rep.expected);
          });
        }
    }
    for (int m = 1; m <= 4; ++m) {
      Tally t(r, chart + " Jacobi m=" + std::to_string(m));
      for (const auto& fam : families) {
        std::vector<UElement> args(fam.begin(), fam.begin() + m);
        auto rep = check_jacobi(P, m, args);
        t(rep.ok(), [&] { return "residual " + to_string(rep.residual); });
      }
    }
  }
  {
    Plectic P = volume_plectic(3);
    Tally t(r, "sign-broken control fails");
    auto rep = check_jacobi(P, 3, negative_control_family(P), JacobiMode::Structural, BracketSign::ShiftedIndex);
    t(!rep.ok(), [] { return std::string("shifted-index signs gave a zero residual"); });
  }
  return r;
}

CheckResult check_heisenberg(const SelftestOptions&) {
  CheckResult r = started(4, "higher Heisenberg subalgebras");
  const Chart c(3);
  Plectic P = volume_plectic(3);
  auto del = [&](int i, const Poly& f) { return MultiVec::basis(c, {i}, f); };
  Poly one = Poly::constant(3, 1), x1 = Poly::coord(3, 1), x2 = Poly::coord(3, 2);
  {
    Tally t(r, "commuting families close");
    for (const auto& fam : {std::vector<MultiVec>{del(1, one), del(2, one), del(3, one)},
                            std::vector<MultiVec>{del(1, one) + del(2, x1), del(2, one)}}) {
      auto rep = heisenberg_check(P, fam);
      t(rep.ok && rep.subsets_checked > 0, [&] {
        return "failing subsets " + std::to_string(rep.failing_subsets.size());
      });
    }
  }
  {
    Tally t(r, "non-commuting family names its witness");
    auto rep = heisenberg_check(P, {del(1, x2), del(2, one)});
    bool ok = !rep.ok && rep.witness && rep.witness->first == 1 && rep.witness->second == 2 &&
              rep.witness_bracket == del(1, one);
    t(ok, [&] { return "bracket " + to_string(rep.witness_bracket); });
  }
  return r;
}

CheckResult check_faces(const SelftestOptions& o) {
  CheckResult r = started(5, "face identities");
  RandomSource rs(o.seed + 4);
  Q lo = -1, hi = -1;
  for (int dim : {3, 4}) {
    Plectic P = volume_plectic(dim);
    Tally t(r, "Q" + std::to_string(dim) + " pairs over 60 simplices");
    for (int s = 0; s < 60; ++s) {
      ObsSimplex x = random_obs(rs, P, rs.uniform(2, P.n));
      for (int j = 1; j <= x.dim(); ++j)
        for (int i = 0; i < j; ++i) {
          auto rep = check_face_identity(P, x, i, j);
          if (rep.ok) {
            lo = lo < 0 || rep.lambda < lo ? rep.lambda : lo;
            hi = rep.lambda > hi ? rep.lambda : hi;
          }
          t(rep.ok, [&] {
            return "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ") on " +
                   vertices_str(x.simplex.vertices);
          });
        }
    }
  }
  r.notes.push_back("lambda range: " + to_string(lo) + " .. " + to_string(hi));
  return r;
}

CheckResult check_kan(const SelftestOptions& o) {
  CheckResult r = started(6, "Kan round trip");
  RandomSource rs(o.seed + 5);
  for (int dim : {3, 4}) {
    Plectic P = volume_plectic(dim);
    Tally t(r, "Q" + std::to_string(dim) + " horns of 50 simplices");
    for (int s = 0; s < 50; ++s) {
      ObsSimplex x = random_obs(rs, P, rs.uniform(1, P.n));
      for (int k = 0; k <= x.dim(); ++k) {
        std::string why;
        try {
          Horn h = horn_of(P, x, k);
          ObsSimplex f = horn_fill(P, h);
          for (int i = 0; i <= x.dim() && why.empty(); ++i)
            if (!(face_map(P, f, i).face == face_map(P, x, i).face))
              why = "face " + std::to_string(i) + " differs";
          if (why.empty() && x.dim() >= 2 && !(f == x))
            why = "filler differs from the original";
        } catch (const std::exception& e) {
          why = e.what();
        }
        t(why.empty(), [&] { return "r=" + std::to_string(k) + " on " + vertices_str(x.simplex.vertices) + ": " + why; });
      }
    }
  }
  {
    Tally t(r, "incompatible horn is rejected with its face pair");
    Plectic P = volume_plectic(4);
    AffSimplex tri{{QVec(4, Q(0)), unit(4, 0), unit(4, 1)}};
    ObsSimplex x = make_obs(P, tri, {unit(4, 3)});
    Horn h = horn_of(P, x, 0);
    FaceResult f1 = face_map(P, x, 1);
    h.faces[1] = make_obs(P, f1.face.simplex, {unit(4, 2), f1.normal});
    std::string why;
    try {
      horn_fill(P, h);
      why = "filled";
    } catch (const HornError& e) {
      bool pair = (e.face_a == 1 && e.face_b == 2) || (e.face_a == 2 && e.face_b == 1);
      if (!pair || e.shared_face != std::vector<QVec>{tri.vertices[0]})
        why = std::string("wrong pair: ") + e.what();
    }
    t(why.empty(), [&] { return why; });
  }
  return r;
}

CheckResult check_homology(const SelftestOptions& o) {
  CheckResult r = started(7, "homology");
  Plectic P = volume_plectic(3);
  ObsSimplex tri = make_obs(P, AffSimplex{{QVec(3, Q(0)), unit(3, 0), unit(3, 1)}}, {});
  auto dd_zero = [](const ObsComplex& cx) {
    for (int k = 2; k <= cx.top(); ++k)
      if (!multiply(boundary(cx, k - 1), boundary(cx, k)).is_zero())
        return false;
    return true;
  };
  auto betti = [](const HomologyResult& h) {
    std::string s;
    for (int b : h.betti)
      s += (s.empty() ? "" : ",") + std::to_string(b);
    return "(" + s + ")";
  };
  {
    Tally t(r, "filled triangle closure");
    ObsComplex cx = build_complex(P, {tri});
    auto h = homology(cx);
    t(dd_zero(cx) && h.betti == std::vector<int>{1, 0, 0} &&
              std::all_of(h.torsion.begin(), h.torsion.end(), [](const auto& v) { return v.empty(); }), [&] { return betti(h); });
  }
  {
    Tally t(r, "triangle boundary");
    std::vector<ObsSimplex> edges;
    for (int i = 0; i <= 2; ++i)
      edges.push_back(face_map(P, tri, i).face);
    ObsComplex cx = build_complex(P, edges);
    auto h = homology(cx);
    bool ok = dd_zero(cx) && h.betti.size() >= 2 && h.betti[0] == 1 && h.betti[1] == 1;
    for (std::size_t k = 2; k < h.betti.size(); ++k)
      ok = ok && h.betti[k] == 0;
    t(ok, [&] { return betti(h); });
  }
  {
    Tally t(r, "random complexes");
    RandomSource rs(o.seed + 6);
    for (int dim : {3, 4}) {
      Plectic Pd = volume_plectic(dim);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<ObsSimplex> seeds;
        int count = rs.uniform(1, 4);
        while (static_cast<int>(seeds.size()) < count)
          seeds.push_back(random_obs(rs, Pd, rs.uniform(1, Pd.n), 1));
        ObsComplex cx = build_complex(Pd, seeds);
        auto hz = homology(cx), hq = homology(cx, Coefficients::Q);
        long euler = 0, chi = 0;
        for (int k = 0; k <= cx.top(); ++k) {
          euler += sign_of(k) * static_cast<long>(cx.size(k));
          chi += sign_of(k) * hz.betti[k];
        }
        t(dd_zero(cx) && hz.betti == hq.betti && euler == chi, [&] { return betti(hz) + " vs " + betti(hq); });
      }
    }
  }
  return r;
}

CheckResult check_quantization(const SelftestOptions& o) {
  CheckResult r = started(8, "quantization");
  RandomSource rs(o.seed + 7);
  {
    Tally t(r, "integral of t1 t2 dt1^dt2 over the standard triangle");
    const Chart c2(2);
    Q v = integrate(Form::basis(c2, {1, 2}, Poly::coord(2, 1) * Poly::coord(2, 2)), standard_simplex(2));
    t(v == Q(1, 24), [&] { return to_string(v); });
  }
  {
    Tally t(r, "Stokes pairs");
    const Chart c(3);
    for (int i = 0; i < 200; ++i) {
      int p = rs.uniform(0, 2);
      Form a = rs.form(c, p, o.max_degree, 3);
      std::vector<QVec> V;
      for (int j = 0; j <= p + 1; ++j)
        V.push_back(rs.point(3));
      auto rep = stokes_check(a, AffSimplex{V});
      t(rep.ok, [&] {
        return to_string(a) + " on " + vertices_str(V) + ": " + to_string(rep.boundary_sum) + " vs " +
               to_string(rep.interior);
      });
    }
  }
  Plectic P = volume_plectic(3);
  AffSimplex unit3 = standard_simplex(3);
  {
    Tally t(r, "prequantum condition on the unit 3-simplex");
    auto pass = prequantum_check(P, {{{1, unit3}}}, Scale{6, 0}, false);
    auto fail = prequantum_check(P, {{{1, unit3}}}, Scale{1, 0}, false);
    bool ok = pass.ok && !fail.ok && fail.cycles[0].integral_value == Q(1, 6) &&
              frac(fail.cycles[0].multiple.turns) == Q(1, 6);
    t(ok, [&] { return "12pi ok=" + std::to_string(pass.ok) + ", 2pi ok=" + std::to_string(fail.ok); });
    r.notes.push_back("witness at 2pi: integral " + to_string(fail.cycles[0].integral_value));
  }
  {
    Tally t(r, "associativity product against scale * integral");
    Form theta = homotopy_primitive(P.omega);
    std::vector<Scale> scales{{1, 0}, {6, 0}, {12, 0}, {Q(1, 2), 0}, {0, 1}, {3, Q(1, 3)}, {}};
    for (int i = 0; i < 60; ++i) {
      std::vector<QVec> V{i == 0 ? unit3.vertices : std::vector<QVec>{}};
      if (i > 0)
        for (int j = 0; j < 4; ++j)
          V.push_back(rs.point(3, 2));
      const Scale& s = scales[i % scales.size()];
      auto rep = cocycle_associativity(P, theta, AffSimplex{V}, s);
      auto pre = prequantum_check(P, {{{1, AffSimplex{V}}}}, s, false);
      t(rep.agrees && rep.trivial == pre.ok, [&] {
        return vertices_str(V) + " scale " + to_string(s) + ": product " + to_string(rep.product) + ", expected " +
               to_string(rep.expected);
      });
    }
  }
  return r;
}

CheckResult check_inner_product(const SelftestOptions& o) {
  CheckResult r = started(9, "inner product");
  RandomSource rs(o.seed + 8);
  Plectic P = volume_plectic(3);
  auto v3 = [](int a, int b, int c) { return QVec{Q(a), Q(b), Q(c)}; };
  auto triangle = [&](QVec a, QVec b, QVec c) { return make_obs(P, AffSimplex{{a, b, c}}, {}); };
  ObsComplex one = build_complex(P, {triangle(v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0))});
  ObsComplex two = build_complex(
      P, {triangle(v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0)), triangle(v3(1, 0, 0), v3(0, 1, 0), v3(1, 1, 1))});
  {
    Tally t(r, "zero kernel, identity states: sum = number of edges");
    for (const ObsComplex* cx : {&one, &two}) {
      StateCochain id{0, {}};
      for (std::size_t i = 0; i < cx->size(0); ++i)
        id.values[static_cast<int>(i)] = Phase{};
      auto res = inner_product(*cx, id, id, kernel_from_theta(*cx, 0, Scale{}));
      auto g = res.sum.gaussian();
      t(g && g->first == Q(static_cast<long>(cx->size(1))) && g->second == 0,
        [&] { return to_string(res.sum); });
    }
  }
  {
    Tally t(r, "sesquilinearity");
    for (int i = 0; i < 20; ++i) {
      const ObsComplex& cx = i % 2 ? two : one;
      StateCochain f = random_state(rs, cx, 0), g = random_state(rs, cx, 0);
      KernelCochain K = kernel_from_theta(cx, 0, Scale{rs.small(3), rs.coin() ? Q(0) : rs.small(2)});
      Phase phi{Q(rs.uniform(0, 11)) / 12, rs.small(2)};
      PhaseSum base = inner_product(cx, f, g, K).sum;
      bool ok = inner_product(cx, rephase(f, phi), g, K).sum == base * phi.inverse() &&
                inner_product(cx, f, rephase(g, phi), K).sum == base * phi;
      t(ok, [&] { return "global phase " + to_string(phi); });
    }
    for (int i = 0; i < 10; ++i) {
      ObsSimplex a = triangle(v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0));
      ObsSimplex b = triangle(v3(3, 0, 0), v3(4, 1, 0), v3(3, 1, 1));
      ObsComplex ca = build_complex(P, {a}), cb = build_complex(P, {b}), cu = build_complex(P, {a, b});
      Scale s{rs.small(3), 0};
      StateCochain fu = random_state(rs, cu, 0), gu = random_state(rs, cu, 0);
      auto restrict = [&](const StateCochain& su, const ObsComplex& part) {
        StateCochain out{0, {}};
        for (std::size_t j = 0; j < part.size(0); ++j)
          out.values[static_cast<int>(j)] = su.values.at(cu.find(part.strata[0][j]));
        return out;
      };
      PhaseSum whole = inner_product(cu, fu, gu, kernel_from_theta(cu, 0, s)).sum;
      PhaseSum parts = plus(inner_product(ca, restrict(fu, ca), restrict(gu, ca), kernel_from_theta(ca, 0, s)).sum,
                            inner_product(cb, restrict(fu, cb), restrict(gu, cb), kernel_from_theta(cb, 0, s)).sum);
      t(whole == parts, [&] { return to_string(whole) + " vs " + to_string(parts); });
    }
  }
  {
    Tally t(r, "single edge with kernel pi");
    ObsSimplex edge = make_obs(P, AffSimplex{{v3(0, 0, 0), v3(1, 0, 0)}}, {v3(0, 0, 1)});
    ObsComplex ex = build_complex(P, {edge});
    KernelCochain half{1, {Phase{Q(1, 2), 0}}, true, {}};
    int v0 = ex.find(face_map(P, edge, 1).face), v1 = ex.find(face_map(P, edge, 0).face);
    for (int i = 0; i < 10; ++i) {
      StateCochain f{0, {{v0, Phase{Q(rs.uniform(0, 7)) / 8, 0}}, {v1, Phase{Q(rs.uniform(0, 7)) / 8, 0}}}};
      StateCochain g{0, {{v0, Phase{Q(rs.uniform(0, 7)) / 8, 0}}, {v1, Phase{Q(rs.uniform(0, 7)) / 8, 0}}}};
      PhaseSum want;
      want.add(f.values[v1].conj() * g.values[v0], -1);
      auto res = inner_product(ex, f, g, half);
      t(res.sum == want, [&] { return to_string(res.sum) + " vs " + to_string(want); });
    }
  }
  {
    Tally t(r, "kernel cocycle flag matches the prequantum condition");
    std::vector<Scale> scales{{1, 0}, {6, 0}, {3, 0}, {12, 0}, {Q(1, 2), 0}, {0, 1}, {}};
    for (int i = 0; i < 28; ++i) {
      std::vector<QVec> V = standard_simplex(3).vertices;
      if (i >= static_cast<int>(scales.size())) {
        do {
          V.clear();
          for (int j = 0; j < 4; ++j)
            V.push_back(rs.point(3, 2));
        } while (!affinely_independent(V));
      }
      AffSimplex tau{V};
      std::vector<ObsSimplex> faces;
      for (int j = 0; j <= 3; ++j) {
        std::vector<QVec> f = V;
        f.erase(f.begin() + j);
        faces.push_back(make_obs(P, AffSimplex{f}, {}));
      }
      ObsComplex cx = build_complex(P, faces);
      const Scale& s = scales[i % scales.size()];
      bool flag = kernel_from_theta(cx, P.n - 1, s, {tau}).cocycle;
      bool pre = prequantum_check(P, {{{1, tau}}}, s, false).ok;
      t(flag == pre, [&] { return vertices_str(V) + " scale " + to_string(s); });
    }
  }
  return r;
}

std::vector<CheckResult> run_selftest(const SelftestOptions& o) {
  return {check_calculus(o),  check_wedge_contraction(o), check_linfty(o),
          check_heisenberg(o), check_faces(o),             check_kan(o),
          check_homology(o),   check_quantization(o),      check_inner_product(o)};
}

} // namespace plectic
