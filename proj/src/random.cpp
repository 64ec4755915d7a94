#include "plectic/random.hpp"
#include "plectic/combinatorics.hpp"

namespace plectic {

int RandomSource::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

Q RandomSource::small(int r, bool nonzero) {
  while (true) {
    int v = uniform(-r, r);
    if (v != 0 || !nonzero)
      return Q(v);
  }
}

bool RandomSource::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Poly RandomSource::poly(int dim, int max_deg, int max_terms) {
  Poly p(dim);
  int n = uniform(1, max_terms);
  for (int t = 0; t < n; ++t) {
    int deg = uniform(0, max_deg);
    Exponent e(dim, 0);
    for (int k = 0; k < deg; ++k)
      e[uniform(0, dim - 1)] += 1;
    Q c = small(3, true);
    if (coin(0.2))
      c /= Q(uniform(2, 3));
    p.add_term(e, c);
  }
  return p;
}

Form RandomSource::form(Chart chart, int degree, int max_deg, int max_terms) {
  Form f(chart, degree);
  auto all = subsets(chart.dim, degree);
  if (all.empty())
    return f;
  int n = uniform(1, max_terms);
  for (int t = 0; t < n; ++t) {
    const auto& s = all[uniform(0, static_cast<int>(all.size()) - 1)];
    Index idx;
    for (int i : s)
      idx.push_back(i + 1);
    f.add(idx, poly(chart.dim, max_deg));
  }
  return f;
}

MultiVec RandomSource::multivec(Chart chart, int degree, int max_deg, int max_terms) {
  MultiVec v(chart, degree);
  auto all = subsets(chart.dim, degree);
  if (all.empty())
    return v;
  int n = uniform(1, max_terms);
  for (int t = 0; t < n; ++t) {
    const auto& s = all[uniform(0, static_cast<int>(all.size()) - 1)];
    Index idx;
    for (int i : s)
      idx.push_back(i + 1);
    v.add(idx, poly(chart.dim, max_deg));
  }
  return v;
}

QVec RandomSource::point(int dim, int r) {
  QVec p(dim);
  for (auto& x : p)
    x = small(r);
  return p;
}

QVec RandomSource::vector(int dim, int r) {
  while (true) {
    QVec v = point(dim, r);
    for (const auto& x : v)
      if (x != 0)
        return v;
  }
}

} // namespace plectic
