#include "plectic/homology.hpp"
#include "plectic/linalg.hpp"
#include "plectic/quantize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace plectic {

std::size_t ObsComplex::size(int k) const {
  if (k < 0 || k > top())
    return 0;
  return strata[k].size();
}

int ObsComplex::find(const ObsSimplex& x) const {
  int k = x.dim();
  if (k < 0 || k > top())
    return -1;
  const auto& s = strata[k];
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it == s.end() || !(*it == x))
    return -1;
  return static_cast<int>(it - s.begin());
}

std::size_t ObsComplex::total() const {
  std::size_t t = 0;
  for (const auto& s : strata)
    t += s.size();
  return t;
}

ObsComplex build_complex(const Plectic& P, const std::vector<ObsSimplex>& seeds) {
  ObsComplex cx{P, std::vector<std::vector<ObsSimplex>>(P.n + 1), {}};
  std::vector<std::set<ObsSimplex>> found(P.n + 1);
  std::vector<ObsSimplex> work;
  for (const auto& s : seeds) {
    if (s.dim() < 0 || s.dim() > P.n)
      throw std::invalid_argument("seed dimension " + std::to_string(s.dim()) + " exceeds n = " +
                                  std::to_string(P.n));
    for (const auto& v : s.simplex.vertices)
      if (static_cast<int>(v.size()) != P.chart.dim)
        throw std::invalid_argument("seed lives in a different chart");
    if (found[s.dim()].insert(s).second)
      work.push_back(s);
  }
  while (!work.empty()) {
    ObsSimplex x = std::move(work.back());
    work.pop_back();
    for (int i = 0; i <= x.dim() && x.dim() > 0; ++i) {
      ObsSimplex f = face_map(P, x, i).face;
      if (found[f.dim()].insert(f).second)
        work.push_back(std::move(f));
    }
  }
  cx.incidence.resize(P.n + 1);
  for (int k = 0; k <= P.n; ++k) {
    cx.strata[k].assign(found[k].begin(), found[k].end());
    cx.incidence[k].resize(cx.strata[k].size());
  }
  for (int k = 1; k <= P.n; ++k)
    for (std::size_t s = 0; s < cx.strata[k].size(); ++s)
      for (int i = 0; i <= k; ++i)
        cx.incidence[k][s].emplace_back(i, cx.find(face_map(P, cx.strata[k][s], i).face));
  return cx;
}

bool BoundaryMatrix::is_zero() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (e != 0)
        return false;
  return true;
}

BoundaryMatrix boundary(const ObsComplex& cx, int k) {
  BoundaryMatrix m;
  m.rows = cx.size(k - 1);
  m.cols = cx.size(k);
  m.entries.assign(m.rows, std::vector<mpz_class>(m.cols, 0));
  if (k < 1)
    return m;
  for (std::size_t s = 0; s < m.cols; ++s)
    for (const auto& [i, idx] : cx.incidence[k][s])
      m.entries[idx][s] += sign_of(i);
  return m;
}

BoundaryMatrix multiply(const BoundaryMatrix& a, const BoundaryMatrix& b) {
  if (a.cols != b.rows)
    throw std::invalid_argument("matrix shapes do not compose");
  BoundaryMatrix m;
  m.rows = a.rows;
  m.cols = b.cols;
  m.entries.assign(m.rows, std::vector<mpz_class>(m.cols, 0));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t t = 0; t < a.cols; ++t)
      if (a.entries[i][t] != 0)
        for (std::size_t j = 0; j < b.cols; ++j)
          m.entries[i][j] += a.entries[i][t] * b.entries[t][j];
  return m;
}

BoundaryMatrix transpose(const BoundaryMatrix& a) {
  BoundaryMatrix m;
  m.rows = a.cols;
  m.cols = a.rows;
  m.entries.assign(m.rows, std::vector<mpz_class>(m.cols, 0));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      m.entries[j][i] = a.entries[i][j];
  return m;
}

std::vector<mpz_class> smith_invariants(IntMatrix m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the remaining block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows)
        goto done;
      std::swap(m[t], m[pr]);
      for (auto& row : m)
        std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j)
            m[i][j] -= q * m[t][j];
        if (m[i][t] != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i)
            m[i][j] -= q * m[i][t];
        if (m[t][j] != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t c = t; c < cols; ++c)
              m[t][c] += m[i][c];
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    diag.push_back(abs(m[t][t]));
  }
done:
  return diag;
}

namespace {

int rank_of(const BoundaryMatrix& m, Coefficients c, std::vector<mpz_class>* torsion) {
  if (m.rows == 0 || m.cols == 0)
    return 0;
  if (c == Coefficients::Q) {
    QMatrix q(m.rows, QVec(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j)
        q[i][j] = Q(m.entries[i][j]);
    return rank(q);
  }
  auto inv = smith_invariants(m.entries);
  if (torsion)
    for (const auto& d : inv)
      if (d > 1)
        torsion->push_back(d);
  return static_cast<int>(inv.size());
}

} // namespace

HomologyResult homology(const ObsComplex& cx, Coefficients c) {
  int n = cx.top();
  HomologyResult r;
  r.betti.assign(n + 1, 0);
  r.torsion.assign(n + 1, {});
  std::vector<int> rk(n + 2, 0);
  for (int k = 1; k <= n; ++k)
    rk[k] = rank_of(boundary(cx, k), c, &r.torsion[k - 1]);
  for (int k = 0; k <= n; ++k)
    r.betti[k] = static_cast<int>(cx.size(k)) - rk[k] - rk[k + 1];
  return r;
}

HomologyResult cohomology(const ObsComplex& cx, Coefficients c) {
  int n = cx.top();
  HomologyResult r;
  r.betti.assign(n + 1, 0);
  r.torsion.assign(n + 1, {});
  // delta_k = transpose of the boundary out of stratum k+1.
  std::vector<int> rk(n + 1, 0);
  for (int k = 0; k < n; ++k)
    rk[k] = rank_of(transpose(boundary(cx, k + 1)), c, &r.torsion[k + 1]);
  for (int k = 0; k <= n; ++k)
    r.betti[k] = static_cast<int>(cx.size(k)) - rk[k] - (k > 0 ? rk[k - 1] : 0);
  return r;
}

Cochain coboundary_apply(const ObsComplex& cx, int k, const Cochain& f) {
  if (k < 0 || k > cx.top())
    throw std::out_of_range("cochain level out of range");
  if (f.size() != cx.size(k))
    throw std::invalid_argument("cochain is not defined on the whole stratum: expected " +
                                std::to_string(cx.size(k)) + " values, got " + std::to_string(f.size()));
  Cochain out(cx.size(k + 1), Q(0));
  for (std::size_t s = 0; s < out.size(); ++s)
    for (const auto& [i, idx] : cx.incidence[k + 1][s])
      out[s] += sign_of(i) * f[idx];
  return out;
}

Cochain adiabatic_cochain(const ObsComplex& cx) {
  const Plectic& P = cx.plectic;
  if (cx.size(P.n) == 0)
    throw std::invalid_argument("adiabatic cochain needs a nonempty top stratum");
  Form theta = homotopy_primitive(P.omega);
  Cochain out;
  for (const auto& s : cx.strata[P.n])
    out.push_back(integrate(theta, s.simplex));
  return out;
}

} // namespace plectic
