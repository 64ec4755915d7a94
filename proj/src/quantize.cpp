#include "plectic/quantize.hpp"
#include "plectic/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace plectic {

Scale parse_scale(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ')
      t += c;
  for (const std::string suffix : {"x2pi", "*2pi", "2pi"}) {
    if (t.size() >= suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
      std::string head = t.substr(0, t.size() - suffix.size());
      if (head.empty())
        return Scale{1, 0};
      if (suffix == "2pi")
        break;
      return Scale{parse_rational(head), 0};
    }
  }
  return Scale{0, parse_rational(t)};
}

std::string to_string(const Scale& s) {
  if (s.plain == 0)
    return to_string(s.two_pi) + "x2pi";
  if (s.two_pi == 0)
    return to_string(s.plain);
  return to_string(s.two_pi) + "x2pi+" + to_string(s.plain);
}

std::complex<double> Phase::value() const {
  double angle = 2 * std::numbers::pi * frac(turns).get_d() + residual.get_d();
  return std::polar(1.0, angle);
}

std::string to_string(const Phase& p) {
  std::string s = "exp(2pi i*" + to_string(p.turns) + ")";
  if (p.residual != 0)
    s += "*exp(i*" + to_string(p.residual) + ")";
  return s;
}

Q integrate(const Form& form, const AffSimplex& simplex) {
  int k = simplex.dim();
  if (k < 0)
    throw std::invalid_argument("integrate: empty simplex");
  if (form.degree() != k)
    throw std::invalid_argument("integrate: form degree " + std::to_string(form.degree()) +
                                " does not match simplex dimension " + std::to_string(k));
  if (form.is_zero())
    return 0;
  const QVec& v0 = simplex.vertices[0];
  if (k == 0) {
    Q total = 0;
    for (const auto& [idx, p] : form.terms())
      total += p.eval(v0);
    return total;
  }
  Form pb = pullback_affine(form, affine_differential(simplex), v0);
  Q total = 0;
  for (const auto& [idx, p] : pb.terms())
    for (const auto& [e, c] : p.terms()) {
      Q num = 1;
      unsigned sum = 0;
      for (int a : e) {
        num *= factorial(a);
        sum += a;
      }
      total += c * num / factorial(k + sum);
    }
  return total;
}

StokesReport stokes_check(const Form& form, const AffSimplex& simplex) {
  int k = simplex.dim();
  if (form.degree() + 1 != k)
    throw std::invalid_argument("stokes_check: need a p-form on a (p+1)-simplex");
  StokesReport r;
  for (int i = 0; i <= k; ++i) {
    AffSimplex f = simplex;
    f.vertices.erase(f.vertices.begin() + i);
    r.faces.push_back(integrate(form, f));
    r.boundary_sum += sign_of(i) * r.faces.back();
  }
  r.interior = integrate(ext_d(form), simplex);
  r.ok = r.boundary_sum == r.interior;
  return r;
}

Phase transition_phase(const Form& alpha, const AffSimplex& edge, const Scale& s) {
  if (edge.dim() != 1)
    throw std::invalid_argument("transition_phase needs an edge");
  return Phase::of(s, integrate(alpha, edge));
}

Phase gerbe_cocycle(const Form& theta, const AffSimplex& simplex, const Scale& s) {
  return Phase::of(s, integrate(theta, simplex));
}

std::map<std::vector<QVec>, long> chain_boundary(const Chain& c) {
  std::map<std::vector<QVec>, long> out;
  for (const auto& [coef, s] : c) {
    for (int i = 0; i <= s.dim(); ++i) {
      std::vector<QVec> f = s.vertices;
      f.erase(f.begin() + i);
      std::vector<int> order(f.size());
      for (std::size_t t = 0; t < f.size(); ++t)
        order[t] = static_cast<int>(t);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
      std::vector<int> images(order.size());
      for (std::size_t t = 0; t < order.size(); ++t)
        images[t] = order[t] + 1;
      std::vector<QVec> sorted;
      for (int o : order)
        sorted.push_back(f[o]);
      out[sorted] += coef * sign_of(i) * Permutation(images).sign();
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

PrequantumReport prequantum_check(const Plectic& P, const std::vector<Chain>& cycles, const Scale& s,
                                  bool require_closed) {
  PrequantumReport r;
  r.ok = true;
  for (const auto& c : cycles) {
    CycleReport cr;
    for (const auto& [coef, simplex] : c) {
      if (simplex.dim() != P.n + 1)
        throw std::invalid_argument("prequantum cycles are chains of (n+1)-simplices");
      cr.integral_value += coef * integrate(P.omega, simplex);
    }
    cr.closed = chain_boundary(c).empty();
    if (!cr.closed && require_closed)
      throw std::invalid_argument("prequantum cycle is not closed");
    cr.multiple = Phase::of(s, cr.integral_value);
    cr.integral = cr.multiple.is_identity();
    r.ok = r.ok && cr.integral;
    r.cycles.push_back(cr);
  }
  return r;
}

AssociativityReport cocycle_associativity(const Plectic& P, const Form& theta, const AffSimplex& simplex,
                                          const Scale& s) {
  if (simplex.dim() != P.n + 1)
    throw std::invalid_argument("associativity needs an (n+1)-simplex");
  if (theta.degree() != P.n)
    throw std::invalid_argument("theta must have degree n");
  AssociativityReport r;
  for (int i = 0; i <= simplex.dim(); ++i) {
    AffSimplex f = simplex;
    f.vertices.erase(f.vertices.begin() + i);
    Phase c = gerbe_cocycle(theta, f, s);
    r.face_cocycles.push_back(c);
    r.product = r.product * (i % 2 == 0 ? c : c.inverse());
  }
  r.expected = Phase::of(s, integrate(P.omega, simplex));
  r.agrees = r.product.turns == r.expected.turns && r.product.residual == r.expected.residual;
  r.trivial = r.product.is_identity();
  r.defect_turns = frac(r.product.turns);
  r.defect_residual = r.product.residual;
  return r;
}

KernelCochain kernel_from_theta(const ObsComplex& cx, int k, const Scale& s, const std::vector<AffSimplex>& outer) {
  if (k < 0 || k + 1 > cx.top())
    throw std::out_of_range("kernel level k+1 must be a stratum of the complex");
  KernelCochain K;
  K.level = k + 1;
  for (const auto& x : cx.strata[k + 1])
    K.values.push_back(Phase::of(s, integrate(x.alpha, x.simplex)));
  K.cocycle = true;
  for (std::size_t t = 0; t < cx.size(k + 2); ++t) {
    Phase d;
    for (const auto& [i, idx] : cx.incidence[k + 2][t])
      d = d * (i % 2 == 0 ? K.values[idx] : K.values[idx].inverse());
    K.defects.push_back(d);
    K.cocycle = K.cocycle && d.is_identity();
  }
  const auto& stratum = cx.strata[k + 1];
  for (const auto& tau : outer) {
    if (tau.dim() != k + 2)
      throw std::invalid_argument("outer simplices must have dimension k+2");
    Phase d;
    for (int i = 0; i <= tau.dim(); ++i) {
      std::vector<QVec> face = tau.vertices;
      face.erase(face.begin() + i);
      auto it = std::find_if(stratum.begin(), stratum.end(),
                             [&](const ObsSimplex& x) { return x.simplex.vertices == face; });
      if (it == stratum.end())
        throw std::invalid_argument("face " + std::to_string(i) + " of an outer simplex is not in the complex");
      const Phase& v = K.values[it - stratum.begin()];
      d = d * (i % 2 == 0 ? v : v.inverse());
    }
    K.defects.push_back(d);
    K.cocycle = K.cocycle && d.is_identity();
  }
  return K;
}

void PhaseSum::add(const Phase& p, const Q& c) {
  Q t = frac(p.turns);
  Q coef = c;
  if (t >= Q(1, 2)) {
    t -= Q(1, 2);
    coef = -coef;
  }
  auto key = std::make_pair(t, p.residual);
  Q& slot = terms[key];
  slot += coef;
  if (slot == 0)
    terms.erase(key);
}

PhaseSum PhaseSum::operator*(const Phase& p) const {
  PhaseSum out;
  for (const auto& [key, c] : terms)
    out.add(Phase{key.first, key.second} * p, c);
  return out;
}

std::complex<double> PhaseSum::value() const {
  std::complex<double> z = 0;
  for (const auto& [key, c] : terms)
    z += c.get_d() * Phase{key.first, key.second}.value();
  return z;
}

std::optional<std::pair<Q, Q>> PhaseSum::gaussian() const {
  Q re = 0, im = 0;
  for (const auto& [key, c] : terms) {
    if (key.second != 0 || !is_integer(key.first * 4))
      return std::nullopt;
    Q q = key.first * 4;
    if (q == 0)
      re += c;
    else
      im += c;
  }
  return std::make_pair(re, im);
}

std::string to_string(const PhaseSum& s) {
  if (s.terms.empty())
    return "0";
  std::ostringstream o;
  bool first = true;
  for (const auto& [key, c] : s.terms) {
    if (!first)
      o << " + ";
    first = false;
    o << to_string(c) << "*" << to_string(Phase{key.first, key.second});
  }
  return o.str();
}

InnerProductResult inner_product(const ObsComplex& cx, const StateCochain& psi_f, const StateCochain& psi_i,
                                 const KernelCochain& kernel) {
  int k = psi_i.level;
  if (psi_f.level != k || kernel.level != k + 1)
    throw std::invalid_argument("state levels must be k and the kernel level k+1");
  if (kernel.values.size() != cx.size(k + 1))
    throw std::invalid_argument("kernel is not defined on the whole stratum k+1");
  auto lookup = [](const StateCochain& psi, int idx, const char* name) {
    auto it = psi.values.find(idx);
    if (it == psi.values.end())
      throw std::invalid_argument(std::string(name) + " has no value on simplex " + std::to_string(idx));
    return it->second;
  };
  InnerProductResult r;
  r.kernel_cocycle = kernel.cocycle;
  for (std::size_t t = 0; t < cx.size(k + 1); ++t) {
    const auto& inc = cx.incidence[k + 1][t];
    Phase fin = lookup(psi_f, inc.front().second, "psi_f");
    Phase ini = lookup(psi_i, inc.back().second, "psi_i");
    r.sum.add(fin.conj() * kernel.values[t] * ini);
    ++r.terms;
  }
  return r;
}

} // namespace plectic
