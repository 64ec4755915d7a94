#include "plectic/serialize.hpp"

#include <fstream>
#include <set>

namespace plectic {

namespace {

const json& field(const json& j, const char* key, const std::string& ptr) {
  if (!j.is_object())
    throw InputError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw InputError(ptr + "/" + key, "missing field");
  return *it;
}

const json& array(const json& j, const std::string& ptr) {
  if (!j.is_array())
    throw InputError(ptr, "expected an array");
  return j;
}

int integer(const json& j, const std::string& ptr) {
  if (!j.is_number_integer())
    throw InputError(ptr, "expected an integer");
  return j.get<int>();
}

std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

template <class G>
json graded_to_json(const G& a) {
  json terms = json::array();
  for (const auto& [idx, p] : a.terms())
    terms.push_back({{"idx", idx}, {"poly", to_json(p)}});
  return {{"degree", a.degree()}, {"terms", terms}};
}

template <class G>
G graded_from(const json& j, Chart chart, const std::string& ptr) {
  int degree = integer(field(j, "degree", ptr), ptr + "/degree");
  if (degree < 0 || degree > chart.dim)
    throw InputError(ptr + "/degree", "degree out of range for dimension " + std::to_string(chart.dim));
  G out = G::zero(chart, degree);
  const json& terms = array(field(j, "terms", ptr), ptr + "/terms");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    std::string tp = at(ptr + "/terms", t);
    const json& idx = array(field(terms[t], "idx", tp), tp + "/idx");
    Index I;
    for (std::size_t r = 0; r < idx.size(); ++r) {
      int i = integer(idx[r], at(tp + "/idx", r));
      if (i < 1 || i > chart.dim)
        throw InputError(at(tp + "/idx", r), "index out of range 1.." + std::to_string(chart.dim));
      I.push_back(i);
    }
    if (static_cast<int>(I.size()) != degree)
      throw InputError(tp + "/idx", "index length differs from degree");
    if (std::set<int>(I.begin(), I.end()).size() != I.size())
      throw InputError(tp + "/idx", "repeated index");
    out += G::basis(chart, I, poly_from(field(terms[t], "poly", tp), chart.dim, tp + "/poly"));
  }
  return out;
}

} // namespace

json to_json(const Q& q) { return to_string(q); }

json to_json(const QVec& v) {
  json a = json::array();
  for (const auto& q : v)
    a.push_back(to_json(q));
  return a;
}

json to_json(const Poly& p) {
  json a = json::array();
  for (const auto& [e, c] : p.terms())
    a.push_back({{"exp", e}, {"coef", to_json(c)}});
  return a;
}

json to_json(const Form& a) { return graded_to_json(a); }
json to_json(const MultiVec& v) { return graded_to_json(v); }

json to_json(const UElement& x) {
  json parts = json::array();
  for (const auto& p : x.parts()) {
    json f = to_json(p.form);
    f["upow"] = p.upow;
    parts.push_back(f);
  }
  json out = {{"deg1", x.deg1()}, {"upow", x.upow()}, {"parts", parts}};
  if (x.ham())
    out["ham"] = to_json(*x.ham());
  return out;
}

json to_json(const ObsSimplex& x) {
  json verts = json::array(), gens = json::array();
  for (const auto& v : x.simplex.vertices)
    verts.push_back(to_json(v));
  for (const auto& g : signed_generators(x))
    gens.push_back(to_json(g));
  return {{"vertices", verts}, {"generators", gens}, {"sign", x.sign}, {"alpha", to_json(x.alpha)}};
}

json to_json(const Phase& p) {
  json out = {{"r", to_json(p.turns)}};
  if (p.residual != 0)
    out["residual"] = to_json(p.residual);
  return out;
}

json to_json(const PhaseSum& s) {
  json terms = json::array();
  for (const auto& [key, c] : s.terms)
    terms.push_back({{"coef", to_json(c)}, {"phase", to_json(Phase{key.first, key.second})}});
  json out = {{"terms", terms}};
  auto z = s.value();
  out["approx"] = {z.real(), z.imag()};
  if (auto g = s.gaussian())
    out["exact"] = {to_json(g->first), to_json(g->second)};
  return out;
}

json to_json(const HomologyResult& h) {
  json torsion = json::array();
  for (const auto& t : h.torsion) {
    json row = json::array();
    for (const auto& d : t)
      row.push_back(d.get_str());
    torsion.push_back(row);
  }
  return {{"betti", h.betti}, {"torsion", torsion}};
}

Q rational_from(const json& j, const std::string& ptr) {
  if (j.is_number_integer())
    return Q(j.get<long>());
  if (!j.is_string())
    throw InputError(ptr, "expected a rational as \"num/den\" or an integer");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(ptr, e.what());
  }
}

QVec vector_from(const json& j, int dim, const std::string& ptr) {
  array(j, ptr);
  if (static_cast<int>(j.size()) != dim)
    throw InputError(ptr, "expected " + std::to_string(dim) + " coordinates");
  QVec v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_from(j[i], at(ptr, i)));
  return v;
}

std::vector<QVec> vertices_from(const json& j, int dim, const std::string& ptr) {
  array(j, ptr);
  if (j.empty())
    throw InputError(ptr, "expected at least one vertex");
  std::vector<QVec> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(vector_from(j[i], dim, at(ptr, i)));
  return out;
}

Poly poly_from(const json& j, int dim, const std::string& ptr) {
  array(j, ptr);
  Poly p(dim);
  for (std::size_t t = 0; t < j.size(); ++t) {
    std::string tp = at(ptr, t);
    const json& e = array(field(j[t], "exp", tp), tp + "/exp");
    if (static_cast<int>(e.size()) != dim)
      throw InputError(tp + "/exp", "exponent length differs from dimension");
    Exponent ex;
    for (std::size_t r = 0; r < e.size(); ++r) {
      int a = integer(e[r], at(tp + "/exp", r));
      if (a < 0)
        throw InputError(at(tp + "/exp", r), "negative exponent");
      ex.push_back(a);
    }
    p.add_term(ex, rational_from(field(j[t], "coef", tp), tp + "/coef"));
  }
  return p;
}

Form form_from(const json& j, Chart chart, const std::string& ptr) { return graded_from<Form>(j, chart, ptr); }

MultiVec multivec_from(const json& j, Chart chart, const std::string& ptr) {
  return graded_from<MultiVec>(j, chart, ptr);
}

ObsSimplex obs_from(const json& j, const Plectic& P, const std::string& ptr) {
  auto verts = vertices_from(field(j, "vertices", ptr), P.chart.dim, ptr + "/vertices");
  std::vector<QVec> gens;
  if (j.contains("generators")) {
    const json& g = array(j["generators"], ptr + "/generators");
    for (std::size_t i = 0; i < g.size(); ++i)
      gens.push_back(vector_from(g[i], P.chart.dim, at(ptr + "/generators", i)));
  }
  try {
    return make_obs(P, make_simplex(P.chart, verts), gens);
  } catch (const std::invalid_argument& e) {
    throw InputError(ptr, e.what());
  }
}

StateCochain state_from(const json& j, const std::string& ptr) {
  StateCochain s;
  s.level = integer(field(j, "level", ptr), ptr + "/level");
  const json& ph = array(field(j, "phases", ptr), ptr + "/phases");
  for (std::size_t i = 0; i < ph.size(); ++i) {
    std::string pp = at(ptr + "/phases", i);
    int idx = integer(field(ph[i], "idx", pp), pp + "/idx");
    Phase p{rational_from(field(ph[i], "r", pp), pp + "/r"), 0};
    if (ph[i].contains("residual"))
      p.residual = rational_from(ph[i]["residual"], pp + "/residual");
    if (!s.values.emplace(idx, p).second)
      throw InputError(pp + "/idx", "duplicate simplex index");
  }
  return s;
}

Problem problem_from(const json& j) {
  if (!j.is_object())
    throw InputError("", "expected a JSON object");
  if (field(j, "schema", "") != 1)
    throw InputError("/schema", "unsupported schema version (expected 1)");
  Problem pr;

  const json& pj = field(j, "plectic", "");
  int dim = integer(field(pj, "dim", "/plectic"), "/plectic/dim");
  if (dim < 1)
    throw InputError("/plectic/dim", "dimension must be positive");
  Chart chart(dim);
  int n = pj.contains("n") ? integer(pj["n"], "/plectic/n") : dim - 1;
  const json& oj = field(pj, "omega", "/plectic");
  Form omega = oj.is_string() && oj == "volume" ? volume_form(chart) : form_from(oj, chart, "/plectic/omega");
  std::vector<QVec> samples;
  if (pj.contains("samples")) {
    const json& s = array(pj["samples"], "/plectic/samples");
    for (std::size_t i = 0; i < s.size(); ++i)
      samples.push_back(vector_from(s[i], dim, at("/plectic/samples", i)));
  }
  try {
    pr.plectic = make_plectic(chart, n, omega, samples);
  } catch (const std::exception& e) {
    throw InputError("/plectic", e.what());
  }
  const Plectic& P = pr.plectic;

  if (j.contains("sign_variant")) {
    const json& s = j["sign_variant"];
    if (s == "standard")
      pr.sign = BracketSign::Standard;
    else if (s == "shifted-index")
      pr.sign = BracketSign::ShiftedIndex;
    else
      throw InputError("/sign_variant", "expected \"standard\" or \"shifted-index\"");
  }

  std::map<std::string, int> names;
  if (j.contains("hamiltonians")) {
    const json& hs = array(j["hamiltonians"], "/hamiltonians");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      std::string hp = at("/hamiltonians", i);
      const json& nm = field(hs[i], "name", hp);
      if (!nm.is_string())
        throw InputError(hp + "/name", "expected a string");
      NamedHam h{nm.get<std::string>(), {}};
      if (!names.emplace(h.name, static_cast<int>(i)).second)
        throw InputError(hp + "/name", "duplicate name");
      bool has_alpha = hs[i].contains("alpha"), has_ham = hs[i].contains("ham");
      if (!has_alpha && !has_ham)
        throw InputError(hp, "needs \"ham\", \"alpha\" or both");
      try {
        if (has_alpha && has_ham)
          h.pair = make_hampair(P, form_from(hs[i]["alpha"], chart, hp + "/alpha"),
                                multivec_from(hs[i]["ham"], chart, hp + "/ham"));
        else if (has_ham)
          h.pair = solve_hamiltonian(P, multivec_from(hs[i]["ham"], chart, hp + "/ham"));
        else {
          Form alpha = form_from(hs[i]["alpha"], chart, hp + "/alpha");
          h.pair = make_hampair(P, alpha, hamiltonian_field(P, alpha));
        }
      } catch (const InputError&) {
        throw;
      } catch (const std::exception& e) {
        throw InputError(hp, e.what());
      }
      pr.hamiltonians.push_back(std::move(h));
    }
  }

  if (j.contains("families")) {
    const json& fs = array(j["families"], "/families");
    for (std::size_t f = 0; f < fs.size(); ++f) {
      const json& fam = array(fs[f], at("/families", f));
      std::vector<int> idx;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        std::string fp = at(at("/families", f), i);
        if (!fam[i].is_string() || !names.count(fam[i].get<std::string>()))
          throw InputError(fp, "unknown Hamiltonian name");
        idx.push_back(names.at(fam[i].get<std::string>()));
      }
      pr.families.push_back(idx);
    }
  }

  if (j.contains("simplices")) {
    const json& ss = array(j["simplices"], "/simplices");
    for (std::size_t i = 0; i < ss.size(); ++i)
      pr.simplices.push_back(obs_from(ss[i], P, at("/simplices", i)));
  }

  if (j.contains("horns")) {
    const json& hs = array(j["horns"], "/horns");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      std::string hp = at("/horns", i);
      Horn h;
      h.m = integer(field(hs[i], "m", hp), hp + "/m");
      h.r = integer(field(hs[i], "r", hp), hp + "/r");
      const json& faces = field(hs[i], "faces", hp);
      if (!faces.is_object())
        throw InputError(hp + "/faces", "expected an object keyed by face index");
      for (const auto& [key, val] : faces.items()) {
        int fi;
        try {
          fi = std::stoi(key);
        } catch (const std::exception&) {
          throw InputError(hp + "/faces/" + key, "face keys must be integers");
        }
        h.faces.emplace(fi, obs_from(val, P, hp + "/faces/" + key));
      }
      if (hs[i].contains("vertices"))
        h.vertices = vertices_from(hs[i]["vertices"], dim, hp + "/vertices");
      pr.horns.push_back(std::move(h));
    }
  }

  if (j.contains("complexes")) {
    const json& cs = array(j["complexes"], "/complexes");
    for (std::size_t c = 0; c < cs.size(); ++c) {
      std::string cp = at("/complexes", c);
      const json& seeds = array(field(cs[c], "seeds", cp), cp + "/seeds");
      std::vector<int> idx;
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        int s = integer(seeds[i], at(cp + "/seeds", i));
        if (s < 0 || s >= static_cast<int>(pr.simplices.size()))
          throw InputError(at(cp + "/seeds", i), "simplex index out of range");
        idx.push_back(s);
      }
      pr.complexes.push_back(idx);
    }
  }

  if (j.contains("states")) {
    const json& ss = array(j["states"], "/states");
    for (std::size_t i = 0; i < ss.size(); ++i)
      pr.states.push_back(state_from(ss[i], at("/states", i)));
  }

  if (j.contains("integrals")) {
    const json& is = array(j["integrals"], "/integrals");
    for (std::size_t i = 0; i < is.size(); ++i) {
      std::string ip = at("/integrals", i);
      Form f = form_from(field(is[i], "form", ip), chart, ip + "/form");
      AffSimplex s{vertices_from(field(is[i], "vertices", ip), dim, ip + "/vertices")};
      pr.integrals.emplace_back(std::move(f), std::move(s));
    }
  }

  if (j.contains("cycles")) {
    const json& cs = array(j["cycles"], "/cycles");
    for (std::size_t c = 0; c < cs.size(); ++c) {
      std::string cp = at("/cycles", c);
      const json& terms = array(cs[c], cp);
      Chain chain;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        std::string tp = at(cp, t);
        long coef = terms[t].contains("coef") ? integer(terms[t]["coef"], tp + "/coef") : 1;
        chain.emplace_back(coef, AffSimplex{vertices_from(field(terms[t], "vertices", tp), dim, tp + "/vertices")});
      }
      pr.cycles.push_back(std::move(chain));
    }
  }

  if (j.contains("tetrahedra")) {
    const json& ts = array(j["tetrahedra"], "/tetrahedra");
    for (std::size_t i = 0; i < ts.size(); ++i)
      pr.tetrahedra.push_back(AffSimplex{vertices_from(ts[i], dim, at("/tetrahedra", i))});
  }
  return pr;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("", "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("invalid JSON: ") + e.what());
  }
  return problem_from(j);
}

} // namespace plectic
