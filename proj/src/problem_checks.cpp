#include "plectic/problem_checks.hpp"

#include <algorithm>

namespace plectic {

namespace {

CheckResult started(int criterion, std::string name) {
  CheckResult r;
  r.criterion = criterion;
  r.name = std::move(name);
  return r;
}

void record(CheckResult& r, bool ok, const std::string& witness) {
  ++r.instances;
  if (ok)
    return;
  ++r.failures;
  if (r.witness.empty())
    r.witness = witness;
}

std::string fam(int f, int m) { return "family " + std::to_string(f) + " m=" + std::to_string(m); }

} // namespace

std::vector<UElement> family_elements(const Problem& pr, int f) {
  std::vector<UElement> out;
  for (int h : pr.families.at(f))
    out.push_back(u_shift(pr.plectic, pr.hamiltonians.at(h).pair));
  return out;
}

std::vector<MultiVec> family_fields(const Problem& pr, int f) {
  std::vector<MultiVec> out;
  for (int h : pr.families.at(f))
    out.push_back(pr.hamiltonians.at(h).pair.v);
  return out;
}

ObsComplex problem_complex(const Problem& pr, int c) {
  std::vector<ObsSimplex> seeds;
  for (int s : pr.complexes.at(c))
    seeds.push_back(pr.simplices.at(s));
  return build_complex(pr.plectic, seeds);
}

std::vector<AffSimplex> outer_simplices(const ObsComplex& cx, int level,
                                        const std::vector<AffSimplex>& candidates) {
  std::vector<AffSimplex> out;
  if (level < 0 || level > cx.top())
    return out;
  const auto& stratum = cx.strata[level];
  for (const auto& tau : candidates) {
    if (tau.dim() != level + 1)
      continue;
    bool all = true;
    for (int i = 0; i <= tau.dim() && all; ++i) {
      std::vector<QVec> face = tau.vertices;
      face.erase(face.begin() + i);
      all = std::any_of(stratum.begin(), stratum.end(),
                        [&](const ObsSimplex& x) { return x.simplex.vertices == face; });
    }
    if (all)
      out.push_back(tau);
  }
  return out;
}

std::vector<Scale> probe_scales() { return {{1, 0}, {3, 0}, {6, 0}, {12, 0}, {Q(1, 2), 0}, {0, 1}, {}}; }

std::vector<CheckResult> check_problem(const Problem& pr) {
  const Plectic& P = pr.plectic;
  std::vector<CheckResult> out;

  CheckResult contraction = started(2, "file: wedge contraction identity");
  CheckResult linf = started(3, "file: skew symmetry and Jacobi");
  for (int f = 0; f < static_cast<int>(pr.families.size()); ++f) {
    auto fields = family_fields(pr, f);
    bool vectors = std::all_of(fields.begin(), fields.end(), [](const MultiVec& v) { return v.degree() == 1; });
    for (int m = 2; vectors && m <= std::min<int>(4, fields.size()); ++m) {
      std::vector<MultiVec> first(fields.begin(), fields.begin() + m);
      record(contraction, verify_lemma31(P, first).ok, fam(f, m));
    }
    if (pr.sign != BracketSign::Standard)
      continue;
    auto elems = family_elements(pr, f);
    for (int m = 1; m <= std::min<int>(4, elems.size()); ++m) {
      std::vector<UElement> first(elems.begin(), elems.begin() + m);
      if (m >= 2) {
        auto skew = check_skew(P, first);
        record(linf, skew.ok,
               fam(f, m) + " transposition (" + std::to_string(skew.first) + " " + std::to_string(skew.second) + ")");
      }
      auto jac = check_jacobi(P, m, first);
      record(linf, jac.ok(), fam(f, m) + " residual " + to_string(jac.residual));
    }
  }
  out.push_back(contraction);
  out.push_back(linf);

  CheckResult faces = started(5, "file: face identities");
  CheckResult kan = started(6, "file: Kan round trip");
  for (std::size_t s = 0; s < pr.simplices.size(); ++s) {
    const ObsSimplex& x = pr.simplices[s];
    for (int j = 1; j <= x.dim() && x.dim() >= 2; ++j)
      for (int i = 0; i < j; ++i)
        record(faces, check_face_identity(P, x, i, j).ok,
               "simplex " + std::to_string(s) + " (i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (int k = 0; k <= x.dim() && x.dim() >= 1 && !x.degenerate(); ++k) {
      bool ok = true;
      try {
        ObsSimplex filled = horn_fill(P, horn_of(P, x, k));
        for (int i = 0; i <= x.dim(); ++i)
          ok = ok && face_map(P, filled, i).face == face_map(P, x, i).face;
        ok = ok && (x.dim() < 2 || filled == x);
      } catch (const std::exception&) {
        ok = false;
      }
      record(kan, ok, "simplex " + std::to_string(s) + " r=" + std::to_string(k));
    }
  }
  out.push_back(faces);
  out.push_back(kan);

  CheckResult hom = started(7, "file: homology");
  CheckResult kernel = started(9, "file: kernel cocycle flag against the prequantum condition");
  for (int c = 0; c < static_cast<int>(pr.complexes.size()); ++c) {
    ObsComplex cx = problem_complex(pr, c);
    bool dd = true;
    for (int k = 2; k <= cx.top(); ++k)
      dd = dd && multiply(boundary(cx, k - 1), boundary(cx, k)).is_zero();
    record(hom, dd && homology(cx).betti == homology(cx, Coefficients::Q).betti, "complex " + std::to_string(c));
    if (cx.top() != P.n)
      continue;
    auto outer = outer_simplices(cx, P.n, pr.tetrahedra);
    if (outer.empty())
      continue;
    std::vector<Chain> cycles;
    for (const auto& tau : outer)
      cycles.push_back({{1, tau}});
    for (const Scale& s : probe_scales()) {
      bool flag = kernel_from_theta(cx, P.n - 1, s, outer).cocycle;
      bool pre = prequantum_check(P, cycles, s, false).ok;
      record(kernel, flag == pre, "complex " + std::to_string(c) + " scale " + to_string(s));
    }
  }
  out.push_back(hom);
  out.push_back(kernel);

  CheckResult quant = started(8, "file: Stokes and associativity");
  for (std::size_t i = 0; i < pr.integrals.size(); ++i) {
    const auto& [form, simplex] = pr.integrals[i];
    if (form.degree() + 1 == simplex.dim())
      record(quant, stokes_check(form, simplex).ok, "integral " + std::to_string(i));
  }
  Form theta = homotopy_primitive(P.omega);
  for (std::size_t t = 0; t < pr.tetrahedra.size(); ++t) {
    if (pr.tetrahedra[t].dim() != P.n + 1)
      continue;
    for (const Scale& s : probe_scales()) {
      auto rep = cocycle_associativity(P, theta, pr.tetrahedra[t], s);
      bool pre = prequantum_check(P, {{{1, pr.tetrahedra[t]}}}, s, false).ok;
      record(quant, rep.agrees && rep.trivial == pre, "tetrahedron " + std::to_string(t) + " scale " + to_string(s));
    }
  }
  out.push_back(quant);
  return out;
}

CheckResult check_negative_control(const Problem& pr, int m) {
  CheckResult r = started(3, "file: sign-broken Jacobi control fails");
  for (int f = 0; f < static_cast<int>(pr.families.size()); ++f) {
    auto elems = family_elements(pr, f);
    if (static_cast<int>(elems.size()) < m)
      continue;
    elems.erase(elems.begin() + m, elems.end());
    auto rep = check_jacobi(pr.plectic, m, elems, JacobiMode::Structural, pr.sign);
    ++r.instances;
    if (rep.ok())
      continue;
    r.notes.push_back(fam(f, m) + " residual " + to_string(rep.residual));
    return r;
  }
  ++r.failures;
  r.witness = "every family satisfies the m=" + std::to_string(m) + " Jacobi identity";
  return r;
}

} // namespace plectic
