#include "plectic/exterior.hpp"
#include "plectic/combinatorics.hpp"

#include <algorithm>
#include <numeric>

namespace plectic {

Chart::Chart(int d) : dim(d) {
  if (d < 1)
    throw std::invalid_argument("chart dimension must be at least 1");
}

void require_same_chart(const Chart& a, const Chart& b, const char* op) {
  if (!(a == b))
    throw std::invalid_argument(std::string(op) + ": chart mismatch");
}

template <class Tag>
Graded<Tag> Graded<Tag>::scalar(const Poly& f) {
  Graded g(Chart(f.dim()), 0);
  g.add({}, f);
  return g;
}

template <class Tag>
Graded<Tag> Graded<Tag>::basis(Chart chart, Index idx, const Poly& f) {
  Graded g(chart, static_cast<int>(idx.size()));
  for (int i : idx)
    if (i < 1 || i > chart.dim)
      throw std::out_of_range("basis index out of range");
  int s = sort_sign(idx);
  if (s != 0)
    g.add(idx, f * Q(s));
  return g;
}

template <class Tag>
int Graded<Tag>::coef_degree() const {
  int d = -1;
  for (const auto& [idx, f] : terms_)
    d = std::max(d, f.degree());
  return d;
}

template <class Tag>
void Graded<Tag>::add(const Index& idx, const Poly& f) {
  if (static_cast<int>(idx.size()) != degree_)
    throw std::invalid_argument("index tuple length differs from degree");
  if (f.dim() != chart_.dim)
    throw std::invalid_argument("coefficient dimension differs from chart");
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] < 1 || idx[i] > chart_.dim || (i && idx[i - 1] >= idx[i]))
      throw std::invalid_argument("index tuple must be strictly increasing within the chart");
  if (f.is_zero())
    return;
  auto [it, inserted] = terms_.emplace(idx, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

template <class Tag>
Graded<Tag>& Graded<Tag>::operator+=(const Graded& o) {
  require_same_chart(chart_, o.chart_, "add");
  if (o.is_zero())
    return *this;
  if (is_zero())
    degree_ = o.degree_;
  else if (o.degree_ != degree_)
    throw std::invalid_argument("adding elements of different degree");
  for (const auto& [idx, f] : o.terms_)
    add(idx, f);
  return *this;
}

template <class Tag>
Graded<Tag>& Graded<Tag>::operator-=(const Graded& o) {
  return *this += (-Graded(o));
}

template <class Tag>
Graded<Tag>& Graded<Tag>::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, f] : terms_)
    f *= c;
  return *this;
}

template <class Tag>
Graded<Tag> Graded<Tag>::times(const Poly& f) const {
  Graded r(chart_, degree_);
  for (const auto& [idx, g] : terms_)
    r.add(idx, g * f);
  return r;
}

template <class Tag>
std::map<Index, Q> Graded<Tag>::at(const QVec& point) const {
  std::map<Index, Q> out;
  for (const auto& [idx, f] : terms_) {
    Q v = f.eval(point);
    if (v != 0)
      out.emplace(idx, v);
  }
  return out;
}

template class Graded<FormTag>;
template class Graded<VecTag>;

namespace {

template <class G>
G wedge_impl(const G& a, const G& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  G r(a.chart(), a.degree() + b.degree());
  for (const auto& [ia, fa] : a.terms())
    for (const auto& [ib, fb] : b.terms()) {
      Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      int s = sort_sign(idx);
      if (s != 0)
        r.add(idx, fa * fb * Q(s));
    }
  return r;
}

// i_{d/dx_j} applied to dx_idx: returns sign and shrinks idx; 0 if j is absent.
int contract_one(Index& idx, int j) {
  auto it = std::find(idx.begin(), idx.end(), j);
  if (it == idx.end())
    return 0;
  int pos = static_cast<int>(it - idx.begin());
  idx.erase(it);
  return sign_of(pos);
}

std::vector<MultiVec> factors(Chart chart, const Index& idx, const Poly& f) {
  std::vector<MultiVec> out;
  for (std::size_t k = 0; k < idx.size(); ++k)
    out.push_back(MultiVec::basis(chart, {idx[k]}, k == 0 ? f : Poly::constant(chart.dim, 1)));
  return out;
}

MultiVec wedge_except(const std::vector<MultiVec>& fs, int skip, Chart chart) {
  MultiVec r = MultiVec::scalar(Poly::constant(chart.dim, 1));
  for (int k = 0; k < static_cast<int>(fs.size()); ++k)
    if (k != skip)
      r = wedge(r, fs[k]);
  return r;
}

// Action of a vector field on a function.
Poly apply_field(const MultiVec& v, const Poly& g) {
  Poly r(g.dim());
  for (const auto& [idx, c] : v.terms())
    r += c * g.deriv(idx[0]);
  return r;
}

// [u, g] for a multivector u and a function g.
MultiVec schouten_function(const MultiVec& u, const Poly& g) {
  Chart chart = u.chart();
  if (u.degree() == 0)
    return MultiVec::zero(chart, 0);
  MultiVec r = MultiVec::zero(chart, u.degree() - 1);
  int m = u.degree();
  for (const auto& [idx, f] : u.terms()) {
    auto fs = factors(chart, idx, f);
    for (int i = 0; i < m; ++i) {
      Poly ug = apply_field(fs[i], g);
      if (ug.is_zero())
        continue;
      r += wedge_except(fs, i, chart).times(ug) * Q(sign_of(m - 1 - i));
    }
  }
  return r;
}

} // namespace

Form wedge(const Form& a, const Form& b) { return wedge_impl(a, b); }
MultiVec wedge(const MultiVec& a, const MultiVec& b) { return wedge_impl(a, b); }

MultiVec wedge_all(const std::vector<MultiVec>& vs, Chart chart) {
  MultiVec r = MultiVec::scalar(Poly::constant(chart.dim, 1));
  for (const auto& v : vs)
    r = wedge(r, v);
  return r;
}

Form ext_d(const Form& a) {
  Form r(a.chart(), a.degree() + 1);
  for (const auto& [idx, f] : a.terms())
    for (int j = 1; j <= a.dim(); ++j) {
      Poly df = f.deriv(j);
      if (df.is_zero())
        continue;
      Index full{j};
      full.insert(full.end(), idx.begin(), idx.end());
      int s = sort_sign(full);
      if (s != 0)
        r.add(full, df * Q(s));
    }
  return r;
}

Form interior(const MultiVec& v, const Form& a) {
  require_same_chart(v.chart(), a.chart(), "interior");
  int deg = a.degree() - v.degree();
  Form r(a.chart(), std::max(deg, 0));
  if (deg < 0)
    return r;
  for (const auto& [iv, g] : v.terms())
    for (const auto& [ia, f] : a.terms()) {
      Index idx = ia;
      int s = 1;
      for (int j : iv) {
        s *= contract_one(idx, j);
        if (s == 0)
          break;
      }
      if (s != 0)
        r.add(idx, f * g * Q(s));
    }
  return r;
}

Form lie_derivative(const MultiVec& v, const Form& a) {
  Form first = ext_d(interior(v, a));
  Form second = interior(v, ext_d(a)) * Q(sign_of(v.degree()));
  Form r = first - second;
  return r;
}

MultiVec lie_bracket(const MultiVec& u, const MultiVec& v) {
  require_same_chart(u.chart(), v.chart(), "lie_bracket");
  if (u.degree() != 1 || v.degree() != 1)
    throw std::invalid_argument("lie_bracket: both arguments must be vector fields");
  MultiVec r(u.chart(), 1);
  for (int k = 1; k <= u.dim(); ++k) {
    Poly uk(u.dim()), vk(u.dim());
    if (auto it = u.terms().find({k}); it != u.terms().end())
      uk = it->second;
    if (auto it = v.terms().find({k}); it != v.terms().end())
      vk = it->second;
    Poly c = apply_field(u, vk) - apply_field(v, uk);
    r.add({k}, c);
  }
  return r;
}

MultiVec schouten(const MultiVec& u, const MultiVec& v) {
  require_same_chart(u.chart(), v.chart(), "schouten");
  Chart chart = u.chart();
  int m = u.degree(), n = v.degree();
  if (m == 0 && n == 0)
    return MultiVec::zero(chart, 0);
  if (n == 0) {
    Poly g(chart.dim);
    if (auto it = v.terms().find({}); it != v.terms().end())
      g = it->second;
    return schouten_function(u, g);
  }
  if (m == 0)
    return schouten(v, u) * Q(sign_of(n));
  MultiVec r = MultiVec::zero(chart, m + n - 1);
  for (const auto& [iu, fu] : u.terms()) {
    auto us = factors(chart, iu, fu);
    for (const auto& [iv, fv] : v.terms()) {
      auto vs = factors(chart, iv, fv);
      for (int i = 0; i < m; ++i) {
        MultiVec ru = wedge_except(us, i, chart);
        for (int j = 0; j < n; ++j) {
          MultiVec br = lie_bracket(us[i], vs[j]);
          if (br.is_zero())
            continue;
          MultiVec t = wedge(wedge(br, ru), wedge_except(vs, j, chart));
          r += t * Q(sign_of(i + j));
        }
      }
    }
  }
  return r;
}

NotClosedError::NotClosedError(Form residual)
    : std::runtime_error("form is not closed: d a = " + to_string(residual)),
      residual_(std::move(residual)) {}

Form homotopy_raw(const Form& a) {
  int p = a.degree();
  if (p == 0)
    throw std::invalid_argument("homotopy operator needs degree >= 1");
  Form r(a.chart(), p - 1);
  int dim = a.dim();
  for (const auto& [idx, f] : a.terms())
    for (const auto& [e, c] : f.terms()) {
      int s = std::accumulate(e.begin(), e.end(), 0);
      Q scale = c / Q(s + p);
      for (int k = 0; k < p; ++k) {
        Exponent ek = e;
        ek[idx[k] - 1] += 1;
        Index rest = idx;
        rest.erase(rest.begin() + k);
        r.add(rest, Poly::monomial(dim, ek, scale * sign_of(k)));
      }
    }
  return r;
}

Form homotopy_primitive(const Form& a) {
  if (a.degree() == 0)
    throw std::invalid_argument("homotopy_primitive: degree-0 input has no primitive");
  Form da = ext_d(a);
  if (!da.is_zero())
    throw NotClosedError(da);
  return homotopy_raw(a);
}

Form pullback_affine(const Form& a, const std::vector<QVec>& A, const QVec& b) {
  int dim = a.dim();
  if (static_cast<int>(A.size()) != dim || static_cast<int>(b.size()) != dim)
    throw std::invalid_argument("pullback_affine: map does not match chart dimension");
  int s = A.empty() ? 0 : static_cast<int>(A[0].size());
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != s)
      throw std::invalid_argument("pullback_affine: ragged matrix");
  if (s < 1)
    throw std::invalid_argument("pullback_affine: source dimension must be positive");
  Chart src(s);
  std::vector<Poly> subs;
  std::vector<Form> dx;
  for (int i = 0; i < dim; ++i) {
    Poly xi = Poly::constant(s, b[i]);
    Form dxi(src, 1);
    for (int j = 0; j < s; ++j) {
      xi += Poly::coord(s, j + 1) * A[i][j];
      dxi.add({j + 1}, Poly::constant(s, A[i][j]));
    }
    subs.push_back(std::move(xi));
    dx.push_back(std::move(dxi));
  }
  Form r(src, a.degree());
  if (a.degree() > s)
    return r;
  for (const auto& [idx, f] : a.terms()) {
    Form t = Form::scalar(f.compose(subs));
    for (int i : idx)
      t = wedge(t, dx[i - 1]);
    r += t;
  }
  return r;
}

MultiVec euler_field(Chart chart) {
  MultiVec e(chart, 1);
  for (int i = 1; i <= chart.dim; ++i)
    e.add({i}, Poly::coord(chart.dim, i));
  return e;
}

MultiVec constant_field(Chart chart, const QVec& c) {
  if (static_cast<int>(c.size()) != chart.dim)
    throw std::invalid_argument("constant_field: vector length differs from chart");
  MultiVec e(chart, 1);
  for (int i = 1; i <= chart.dim; ++i)
    e.add({i}, Poly::constant(chart.dim, c[i - 1]));
  return e;
}

Form volume_form(Chart chart) {
  Index idx(chart.dim);
  std::iota(idx.begin(), idx.end(), 1);
  return Form::basis(chart, idx);
}

std::string to_string(const Poly& p) {
  if (p.is_zero())
    return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      mono += (mono.empty() ? "" : "*") + std::string("x") + std::to_string(i + 1);
      if (e[i] > 1)
        mono += "^" + std::to_string(e[i]);
    }
    Q mag = abs(c);
    std::string coef = (mag == 1 && !mono.empty()) ? "" : to_string(mag);
    std::string body = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    if (first)
      s += (c < 0 ? "-" : "") + body;
    else
      s += (c < 0 ? " - " : " + ") + body;
    first = false;
  }
  return s;
}

namespace {

template <class G>
std::string graded_string(const G& a, const char* prefix) {
  if (a.is_zero())
    return "0";
  std::string s;
  for (const auto& [idx, f] : a.terms()) {
    if (!s.empty())
      s += " + ";
    s += "(" + to_string(f) + ")";
    for (std::size_t k = 0; k < idx.size(); ++k)
      s += (k ? "^" : " ") + std::string(prefix) + std::to_string(idx[k]);
  }
  return s;
}

} // namespace

std::string to_string(const Form& a) { return graded_string(a, "dx"); }
std::string to_string(const MultiVec& v) { return graded_string(v, "d"); }

} // namespace plectic
