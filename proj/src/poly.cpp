#include "plectic/poly.hpp"

#include <numeric>
#include <stdexcept>

namespace plectic {

Poly Poly::constant(int dim, const Q& c) {
  return monomial(dim, Exponent(dim, 0), c);
}

Poly Poly::coord(int dim, int i) {
  if (i < 1 || i > dim)
    throw std::out_of_range("coordinate index out of range");
  Exponent e(dim, 0);
  e[i - 1] = 1;
  return monomial(dim, e, Q(1));
}

Poly Poly::monomial(int dim, Exponent e, const Q& c) {
  Poly p(dim);
  p.add_term(e, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void Poly::add_term(const Exponent& e, const Q& c) {
  if (static_cast<int>(e.size()) != dim_)
    throw std::invalid_argument("exponent length does not match chart dimension");
  if (c == 0)
    return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.dim_ != dim_)
    throw std::invalid_argument("polynomial dimension mismatch");
  for (const auto& [e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.dim_ != dim_)
    throw std::invalid_argument("polynomial dimension mismatch");
  for (const auto& [e, c] : o.terms_)
    add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_)
    v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.dim_ != b.dim_)
    throw std::invalid_argument("polynomial dimension mismatch");
  Poly r(a.dim_);
  Exponent e(a.dim_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.dim_; ++i)
        e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::deriv(int i) const {
  if (i < 1 || i > dim_)
    throw std::out_of_range("derivative index out of range");
  Poly r(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[i - 1] == 0)
      continue;
    Exponent f = e;
    f[i - 1] -= 1;
    r.add_term(f, c * e[i - 1]);
  }
  return r;
}

Q Poly::eval(const QVec& point) const {
  if (static_cast<int>(point.size()) != dim_)
    throw std::invalid_argument("evaluation point has wrong dimension");
  Q total = 0;
  for (const auto& [e, c] : terms_) {
    Q m = c;
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < e[i]; ++k)
        m *= point[i];
    total += m;
  }
  return total;
}

Poly Poly::compose(const std::vector<Poly>& subs) const {
  if (static_cast<int>(subs.size()) != dim_)
    throw std::invalid_argument("substitution has wrong length");
  if (subs.empty())
    return *this;
  int target = subs.front().dim();
  // powers[i][k] = subs[i]^k, grown lazily
  std::vector<std::vector<Poly>> powers(dim_, std::vector<Poly>{Poly::constant(target, 1)});
  auto power = [&](int i, int k) -> const Poly& {
    while (static_cast<int>(powers[i].size()) <= k)
      powers[i].push_back(powers[i].back() * subs[i]);
    return powers[i][k];
  };
  Poly r(target);
  for (const auto& [e, c] : terms_) {
    Poly m = Poly::constant(target, c);
    for (int i = 0; i < dim_; ++i)
      if (e[i] > 0)
        m = m * power(i, e[i]);
    r += m;
  }
  return r;
}

} // namespace plectic
