#include "plectic/linfty.hpp"
#include "plectic/linalg.hpp"

#include <algorithm>

namespace plectic {

Plectic make_plectic(Chart chart, int n, Form omega, std::vector<QVec> samples) {
  require_same_chart(chart, omega.chart(), "make_plectic");
  if (n < 1)
    throw std::invalid_argument("plectic degree n must be at least 1");
  if (omega.degree() != n + 1)
    throw std::invalid_argument("omega must have degree n+1");
  Form dw = ext_d(omega);
  if (!dw.is_zero())
    throw VerificationError("omega is not closed", dw);
  if (samples.empty())
    samples.push_back(QVec(chart.dim, Q(0)));
  Plectic P{chart, n, std::move(omega), std::move(samples)};
  for (const auto& pt : P.samples) {
    if (static_cast<int>(pt.size()) != chart.dim)
      throw std::invalid_argument("sample point has wrong dimension");
    if (contraction_rank(P, pt) != chart.dim)
      throw std::invalid_argument("omega is degenerate at a sample point");
  }
  return P;
}

int contraction_rank(const Plectic& P, const QVec& point) {
  // Columns indexed by n-form basis elements, one row per coordinate field.
  std::map<Index, int> col;
  std::vector<std::map<Index, Q>> rows;
  for (int i = 1; i <= P.chart.dim; ++i) {
    auto vals = interior(MultiVec::basis(P.chart, {i}), P.omega).at(point);
    for (const auto& [idx, v] : vals)
      col.emplace(idx, static_cast<int>(col.size()));
    rows.push_back(std::move(vals));
  }
  QMatrix M(rows.size(), QVec(col.size(), Q(0)));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [idx, v] : rows[r])
      M[r][col[idx]] = v;
  return col.empty() ? 0 : rank(M);
}

HamPair make_hampair(const Plectic& P, Form alpha, MultiVec v) {
  require_same_chart(P.chart, alpha.chart(), "make_hampair");
  require_same_chart(P.chart, v.chart(), "make_hampair");
  if (!v.is_zero() && v.degree() > P.n)
    throw std::invalid_argument("Hamiltonian multivector degree exceeds n");
  if (!alpha.is_zero() && !v.is_zero() && alpha.degree() + v.degree() != P.n)
    throw std::invalid_argument("form and multivector degrees do not add up to n");
  Form rel = ext_d(alpha) + interior(v, P.omega);
  if (!rel.is_zero())
    throw VerificationError("d alpha + i_v omega != 0", rel);
  Form lie = lie_derivative(v, P.omega);
  if (!lie.is_zero())
    throw VerificationError("L_v omega != 0", lie);
  return HamPair{std::move(alpha), std::move(v)};
}

HamPair solve_hamiltonian(const Plectic& P, const MultiVec& v) {
  require_same_chart(P.chart, v.chart(), "solve_hamiltonian");
  if (v.degree() > P.n)
    throw std::invalid_argument("solve_hamiltonian: multivector degree exceeds n");
  Form lie = lie_derivative(v, P.omega);
  if (!lie.is_zero())
    throw VerificationError("L_v omega != 0", lie);
  int deg = P.n - v.degree();
  Form contraction = interior(v, P.omega);
  Form alpha = contraction.is_zero() ? Form::zero(P.chart, deg) : -homotopy_primitive(contraction);
  return make_hampair(P, std::move(alpha), v);
}

MultiVec hamiltonian_field(const Plectic& P, const Form& alpha) {
  if (P.omega.coef_degree() > 0)
    throw std::invalid_argument("hamiltonian_field needs omega with constant coefficients");
  int k = P.n - alpha.degree();
  if (k < 1)
    throw std::invalid_argument("hamiltonian_field: form degree must be below n");
  Form target = -ext_d(alpha);
  MultiVec v(P.chart, k);
  if (target.is_zero())
    return v;
  std::vector<Index> unknowns;
  for (const auto& s : subsets(P.chart.dim, k)) {
    Index idx;
    for (int i : s)
      idx.push_back(i + 1);
    unknowns.push_back(idx);
  }
  QVec origin(P.chart.dim, Q(0));
  std::vector<std::map<Index, Q>> images;
  std::map<Index, int> row;
  for (const auto& J : unknowns) {
    images.push_back(interior(MultiVec::basis(P.chart, J), P.omega).at(origin));
    for (const auto& [I, c] : images.back())
      row.emplace(I, static_cast<int>(row.size()));
  }
  for (const auto& [I, f] : target.terms())
    row.emplace(I, static_cast<int>(row.size()));
  QMatrix A(row.size(), QVec(unknowns.size(), Q(0)));
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    for (const auto& [I, c] : images[j])
      A[row[I]][j] = c;
  std::map<Exponent, QVec> rhs;
  for (const auto& [I, f] : target.terms())
    for (const auto& [e, c] : f.terms()) {
      auto& b = rhs.try_emplace(e, QVec(row.size(), Q(0))).first->second;
      b[row[I]] = c;
    }
  for (const auto& [e, b] : rhs) {
    auto x = solve(A, b);
    if (!x)
      throw VerificationError("no multivector field solves i_v omega = -d alpha", target);
    for (std::size_t j = 0; j < unknowns.size(); ++j)
      if ((*x)[j] != 0)
        v.add(unknowns[j], Poly::monomial(P.chart.dim, e, (*x)[j]));
  }
  make_hampair(P, alpha, v);
  return v;
}

UElement UElement::single(int n, Form form, int upow, std::optional<MultiVec> ham) {
  UElement x(n, form.chart());
  int d1 = n - upow - 1 - form.degree();
  x.parts_.push_back(UPart{std::move(form), upow, d1});
  x.ham_ = std::move(ham);
  return x;
}

UElement UElement::zero(int n, Chart chart, int deg1, int upow) {
  UElement x(n, chart);
  x.parts_.push_back(UPart{Form::zero(chart, std::max(0, n - upow - 1 - deg1)), upow, deg1});
  return x;
}

void UElement::add(const Form& form, int upow) {
  add(UPart{form, upow, n_ - upow - 1 - form.degree()});
}

void UElement::add(const UPart& part) {
  for (auto& p : parts_)
    if (p.upow == part.upow && p.deg1 == part.deg1) {
      p.form += part.form;
      return;
    }
  parts_.push_back(part);
}

UElement& UElement::operator+=(const UElement& o) {
  for (const auto& p : o.parts_)
    add(p);
  return *this;
}

UElement& UElement::operator*=(const Q& c) {
  for (auto& p : parts_)
    p.form *= c;
  if (ham_)
    *ham_ *= c;
  return *this;
}

bool UElement::is_zero() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const UPart& p) { return p.form.is_zero(); });
}

int UElement::deg1() const {
  if (parts_.empty())
    throw std::logic_error("bidegree of an empty element");
  return deg1(parts_.front());
}

int UElement::upow() const {
  if (parts_.empty())
    throw std::logic_error("bidegree of an empty element");
  return parts_.front().upow;
}

bool operator==(const UElement& a, const UElement& b) {
  UElement d = a;
  UElement nb = b;
  nb *= Q(-1);
  d += nb;
  return d.is_zero();
}

std::string to_string(const UElement& x) {
  std::string s;
  for (const auto& p : x.parts()) {
    if (p.form.is_zero())
      continue;
    if (!s.empty())
      s += " + ";
    s += "[" + to_string(p.form) + "] u^" + std::to_string(p.upow);
  }
  return s.empty() ? "0" : s;
}

UElement u_shift(const Plectic& P, const HamPair& pair) {
  int k = pair.v.degree();
  if (k < 1)
    throw std::invalid_argument("u_shift needs a Hamiltonian multivector of degree >= 1");
  return UElement::single(P.n, pair.alpha, k - 1, pair.v);
}

Form extract_codim(const UElement& x, int k) {
  Form r = Form::zero(x.chart(), std::max(0, x.n() - k - 1));
  for (const auto& p : x.parts())
    if (p.upow == k && !p.form.is_zero())
      r += p.form;
  return r;
}

UElement l1(const UElement& x) {
  UElement r(x.n(), x.chart());
  bool lands_in_zero = false;
  int upow = 0;
  for (const auto& p : x.parts()) {
    if (x.deg1(p) >= 1) {
      r.add(ext_d(p.form), p.upow);
      if (x.deg1(p) == 1) {
        lands_in_zero = true;
        upow = p.upow;
      }
    } else {
      r.add(UPart{Form::zero(x.chart(), p.form.degree() + 1), p.upow, x.deg1(p) - 1});
    }
  }
  // d of anything is closed, so its Hamiltonian field is zero.
  if (lands_in_zero)
    r.set_ham(MultiVec::zero(x.chart(), upow + 1));
  return r;
}

namespace {

int bracket_sign(const std::vector<UElement>& args, BracketSign rule) {
  int e = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    int pos = rule == BracketSign::Standard ? static_cast<int>(i) : static_cast<int>(i) + 1;
    e += pos * (args[i].total_degree() + 1);
  }
  return sign_of(e);
}

UElement zero_bracket(const Plectic& P, int deg1, int upow) {
  return UElement::zero(P.n, P.chart, deg1, upow);
}

} // namespace

UElement lk(const Plectic& P, const std::vector<UElement>& args, BracketSign rule) {
  int k = static_cast<int>(args.size());
  if (k < 2)
    throw std::invalid_argument("lk needs at least two arguments");
  int deg1_sum = 0, upow_sum = 0;
  bool vanish = false;
  for (const auto& a : args) {
    if (a.parts().size() != 1)
      throw std::invalid_argument("lk arguments must be homogeneous single-part elements");
    deg1_sum += a.deg1();
    upow_sum += a.upow();
    if (a.deg1() > 0 || a.is_zero())
      vanish = true;
  }
  if (vanish)
    return zero_bracket(P, deg1_sum + k - 2, upow_sum);
  std::vector<MultiVec> hams;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].ham())
      throw std::invalid_argument("lk argument " + std::to_string(i + 1) +
                                  " lies in L_0 but carries no Hamiltonian multivector");
    hams.push_back(*args[i].ham());
  }
  MultiVec wedge_v = wedge_all(hams, P.chart);
  Form f = interior(wedge_v, P.omega) * Q(bracket_sign(args, rule));
  if (f.is_zero())
    return zero_bracket(P, k - 2, upow_sum);
  return UElement::single(P.n, std::move(f), upow_sum);
}

MultiVec ham_of_l2(const Plectic& P, const UElement& a, const UElement& b, BracketSign rule) {
  if (!a.ham() || !b.ham())
    throw std::invalid_argument("ham_of_l2 needs Hamiltonian multivectors on both arguments");
  MultiVec h = schouten(*b.ham(), *a.ham()) * Q(sign_of(a.total_degree() * b.total_degree()));
  UElement l = lk(P, {a, b}, rule);
  Form check = ext_d(l.parts().front().form) + interior(h, P.omega);
  if (!check.is_zero())
    throw VerificationError("d l_2(a,b) + i_{ham} omega != 0", check);
  return h;
}

SkewReport check_skew(const Plectic& P, const std::vector<UElement>& args, BracketSign rule) {
  int k = static_cast<int>(args.size());
  SkewReport rep;
  UElement base = lk(P, args, rule);
  std::vector<int> degs;
  for (const auto& a : args)
    degs.push_back(a.total_degree());
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b) {
      auto tau = Permutation::transposition(k, a, b);
      std::vector<UElement> perm;
      for (int i = 1; i <= k; ++i)
        perm.push_back(args[tau(i) - 1]);
      UElement lhs = lk(P, perm, rule);
      UElement rhs = base;
      rhs *= Q(tau.sign() * koszul_sign(tau, degs));
      if (!(lhs == rhs)) {
        rep.ok = false;
        rep.first = a;
        rep.second = b;
        rep.swapped = lhs;
        rep.expected = rhs;
        return rep;
      }
    }
  return rep;
}

namespace {

bool all_zero_deg1(const std::vector<UElement>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](const UElement& x) { return x.deg1() == 0; });
}

UElement bracket(const Plectic& P, const std::vector<UElement>& xs, BracketSign rule) {
  if (xs.size() == 1)
    return l1(xs.front());
  UElement r = lk(P, xs, rule);
  if (xs.size() == 2 && all_zero_deg1(xs))
    r.set_ham(ham_of_l2(P, xs[0], xs[1], rule));
  return r;
}

} // namespace

JacobiReport check_jacobi(const Plectic& P, int m, const std::vector<UElement>& args,
                          JacobiMode mode, BracketSign rule) {
  if (m < 1 || static_cast<int>(args.size()) != m)
    throw std::invalid_argument("check_jacobi: need exactly m >= 1 arguments");
  JacobiReport rep;
  rep.m = m;
  rep.residual = UElement(P.n, P.chart);
  std::vector<int> degs;
  int deg1_sum = 0, upow_sum = 0;
  for (const auto& a : args) {
    degs.push_back(a.total_degree());
    deg1_sum += a.deg1();
    upow_sum += a.upow();
  }
  // Every term has bidegree (sum deg1 + m - 3, sum upow).
  rep.residual = zero_bracket(P, deg1_sum + m - 3, upow_sum);
  for (int i = 1; i <= m; ++i) {
    int j = m + 1 - i;
    for (const auto& sigma : unshuffles(i, m - i)) {
      JacobiTerm t;
      t.i = i;
      t.j = j;
      t.sigma = sigma;
      t.sign = sigma.sign() * koszul_sign(sigma, degs) * sign_of(i * (j - 1));
      std::vector<UElement> inner_args, rest;
      int inner_deg1 = i - 2;
      for (int a = 1; a <= m; ++a) {
        const auto& x = args[sigma(a) - 1];
        if (a <= i) {
          inner_args.push_back(x);
          inner_deg1 += x.deg1();
        } else {
          rest.push_back(x);
        }
      }
      if (i == 1)
        inner_deg1 = inner_args.front().deg1() - 1;
      bool inner_vanishes = i == 1 && inner_args.front().deg1() == 0;
      bool outer_vanishes = j >= 2 && inner_deg1 > 0;
      if (mode == JacobiMode::Structural && (inner_vanishes || outer_vanishes)) {
        t.structural_zero = true;
        t.contribution = zero_bracket(P, deg1_sum + m - 3, upow_sum);
        rep.ledger.push_back(std::move(t));
        continue;
      }
      UElement inner = bracket(P, inner_args, rule);
      std::vector<UElement> outer_args{inner};
      outer_args.insert(outer_args.end(), rest.begin(), rest.end());
      UElement c = bracket(P, outer_args, rule);
      c *= Q(t.sign);
      c.set_ham(std::nullopt);
      rep.residual += c;
      t.contribution = std::move(c);
      rep.ledger.push_back(std::move(t));
    }
  }
  return rep;
}

Lemma31Report verify_lemma31(const Plectic& P, const std::vector<MultiVec>& fields) {
  int m = static_cast<int>(fields.size());
  if (m < 2)
    throw std::invalid_argument("verify_lemma31 needs at least two fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    Form lie = lie_derivative(fields[i], P.omega);
    if (!lie.is_zero())
      throw VerificationError("field " + std::to_string(i + 1) + " is not Hamiltonian", lie);
  }
  Lemma31Report rep;
  rep.lhs = ext_d(interior(wedge_all(fields, P.chart), P.omega));
  rep.rhs = Form::zero(P.chart, rep.lhs.degree());
  auto deg = [&](int a) { return fields[a - 1].degree(); };
  for (int j = 2; j <= m; ++j)
    for (int i = 1; i < j; ++i) {
      int e = 0;
      for (int a = 1; a <= m - j; ++a)
        e += deg(j + a);
      for (int a = 1; a < j; ++a)
        e += (deg(j) - 1) * deg(a);
      for (int a = 1; a < i; ++a)
        e += deg(i) * deg(a);
      std::vector<MultiVec> w{schouten(fields[j - 1], fields[i - 1])};
      for (int a = 1; a <= m; ++a)
        if (a != i && a != j)
          w.push_back(fields[a - 1]);
      rep.rhs += interior(wedge_all(w, P.chart), P.omega) * Q(sign_of(e));
      rep.terms.push_back(Lemma31Term{i, j, e});
    }
  rep.ok = rep.lhs == rep.rhs;
  return rep;
}

HeisenbergReport heisenberg_check(const Plectic& P, const std::vector<MultiVec>& fields) {
  HeisenbergReport rep;
  int m = static_cast<int>(fields.size());
  for (int j = 1; j <= m && !rep.witness; ++j)
    for (int i = 1; i < j; ++i) {
      MultiVec br = schouten(fields[j - 1], fields[i - 1]);
      if (!br.is_zero()) {
        rep.ok = false;
        rep.witness = std::make_pair(i, j);
        rep.witness_bracket = br;
        break;
      }
    }
  for (int k = 2; k <= std::min(P.n, m); ++k)
    for (const auto& s : subsets(m, k)) {
      std::vector<MultiVec> w;
      std::vector<int> idx;
      for (int a : s) {
        w.push_back(fields[a]);
        idx.push_back(a + 1);
      }
      ++rep.subsets_checked;
      if (!ext_d(interior(wedge_all(w, P.chart), P.omega)).is_zero()) {
        rep.ok = false;
        rep.failing_subsets.push_back(idx);
      }
    }
  return rep;
}

} // namespace plectic
