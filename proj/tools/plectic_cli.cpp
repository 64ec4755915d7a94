#include "plectic/problem_checks.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace plectic;

namespace {

struct Flags {
  std::string input;
  std::uint64_t seed = 42;
  bool verbose = false;
  std::string json_out;
  bool paranoid = false;
  int m = 3;
  std::string scale = "1x2pi";
  bool per_simplex = false;
  std::string kernel_scale = "0";
  int complex = 0;
  int psi_f = 0;
  int psi_i = -1;
};

struct Report {
  std::string command;
  bool pass = true;
  std::vector<std::string> lines;
  json values = json::array();
  json witnesses = json::array();
  json ledger = json::array();

  void line(const std::string& s) { lines.push_back(s); }
  void fail(const std::string& s, json witness) {
    pass = false;
    lines.push_back("FAIL " + s);
    witnesses.push_back(std::move(witness));
  }
};

class Usage : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string vertices_text(const std::vector<QVec>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    s += i ? " (" : "(";
    for (std::size_t j = 0; j < vs[i].size(); ++j)
      s += (j ? "," : "") + to_string(vs[i][j]);
    s += ")";
  }
  return s + "]";
}

void need(bool ok, const std::string& what) {
  if (!ok)
    throw Usage(what);
}

std::vector<UElement> elements_up_to(const Problem& pr, int f, int m) {
  auto e = family_elements(pr, f);
  if (static_cast<int>(e.size()) > m)
    e.erase(e.begin() + m, e.end());
  return e;
}

void cmd_jacobi(const Problem& pr, const Flags& fl, Report& r) {
  need(fl.m >= 1, "--m must be positive");
  need(!pr.families.empty(), "the input defines no families");
  JacobiMode mode = fl.paranoid ? JacobiMode::Paranoid : JacobiMode::Structural;
  for (int f = 0; f < static_cast<int>(pr.families.size()); ++f) {
    if (static_cast<int>(pr.families[f].size()) < fl.m) {
      r.line("family " + std::to_string(f) + ": skipped (fewer than m elements)");
      continue;
    }
    auto rep = check_jacobi(pr.plectic, fl.m, elements_up_to(pr, f, fl.m), mode, pr.sign);
    json terms = json::array();
    for (const auto& t : rep.ledger) {
      json term = {{"family", f},
                   {"i", t.i},
                   {"j", t.j},
                   {"unshuffle", t.sigma.str()},
                   {"sign", t.sign},
                   {"structural_zero", t.structural_zero},
                   {"contribution", to_string(t.contribution)}};
      terms.push_back(term);
      r.ledger.push_back(term);
    }
    r.values.push_back({{"family", f}, {"m", fl.m}, {"residual", to_string(rep.residual)}, {"terms", rep.ledger.size()}});
    if (rep.ok()) {
      r.line("family " + std::to_string(f) + ": residual 0 over " + std::to_string(rep.ledger.size()) + " terms");
    } else {
      r.fail("family " + std::to_string(f) + ": residual " + to_string(rep.residual),
             {{"family", f}, {"residual", to_string(rep.residual)}});
    }
    if (fl.verbose || !rep.ok())
      for (const auto& t : rep.ledger)
        r.line("  i=" + std::to_string(t.i) + " j=" + std::to_string(t.j) + " sigma=" + t.sigma.str() +
               " sign=" + std::to_string(t.sign) + (t.structural_zero ? " (zero by degree)" : "") + "  " +
               to_string(t.contribution));
  }
}

void cmd_skew(const Problem& pr, const Flags&, Report& r) {
  need(!pr.families.empty(), "the input defines no families");
  for (int f = 0; f < static_cast<int>(pr.families.size()); ++f) {
    auto args = elements_up_to(pr, f, 4);
    if (args.size() < 2)
      continue;
    auto rep = check_skew(pr.plectic, args, pr.sign);
    std::string tag = "family " + std::to_string(f) + " k=" + std::to_string(args.size());
    if (rep.ok)
      r.line(tag + ": all transpositions agree");
    else
      r.fail(tag + ": transposition (" + std::to_string(rep.first) + " " + std::to_string(rep.second) + ") gives " +
                 to_string(rep.swapped) + ", expected " + to_string(rep.expected),
             {{"family", f}, {"transposition", {rep.first, rep.second}}});
  }
}

void cmd_lemma31(const Problem& pr, const Flags& fl, Report& r) {
  need(fl.m >= 1, "--m must be positive");
  for (int f = 0; f < static_cast<int>(pr.families.size()); ++f) {
    auto fields = family_fields(pr, f);
    if (static_cast<int>(fields.size()) < fl.m)
      continue;
    fields.resize(fl.m);
    auto rep = verify_lemma31(pr.plectic, fields);
    r.values.push_back({{"family", f}, {"lhs", to_string(rep.lhs)}, {"rhs", to_string(rep.rhs)}});
    std::string tag = "family " + std::to_string(f) + " m=" + std::to_string(fl.m);
    if (rep.ok)
      r.line(tag + ": both sides " + to_string(rep.lhs));
    else
      r.fail(tag + ": " + to_string(rep.lhs) + " vs " + to_string(rep.rhs),
             {{"family", f}, {"difference", to_string(rep.lhs - rep.rhs)}});
    if (fl.verbose)
      for (const auto& t : rep.terms)
        r.line("  (" + std::to_string(t.i) + "," + std::to_string(t.j) + ") sign exponent " +
               std::to_string(t.exponent));
  }
  need(!r.lines.empty(), "no family has m elements");
}

void cmd_heisenberg(const Problem& pr, const Flags&, Report& r) {
  need(!pr.families.empty(), "the input defines no families");
  for (int f = 0; f < static_cast<int>(pr.families.size()); ++f) {
    auto rep = heisenberg_check(pr.plectic, family_fields(pr, f));
    std::string tag = "family " + std::to_string(f);
    if (rep.ok) {
      r.line(tag + ": closed on " + std::to_string(rep.subsets_checked) + " subsets");
      continue;
    }
    json w = {{"family", f}};
    std::string s = tag + ":";
    if (rep.witness) {
      w["pair"] = {rep.witness->first, rep.witness->second};
      w["bracket"] = to_string(rep.witness_bracket);
      s += " [v" + std::to_string(rep.witness->second) + ", v" + std::to_string(rep.witness->first) +
           "] = " + to_string(rep.witness_bracket);
    }
    s += " " + std::to_string(rep.failing_subsets.size()) + " subsets not closed";
    r.fail(s, w);
  }
}

void cmd_solve_ham(const Problem& pr, const Flags&, Report& r) {
  need(!pr.hamiltonians.empty(), "the input defines no hamiltonians");
  for (const auto& h : pr.hamiltonians) {
    r.line(h.name + ": v = " + to_string(h.pair.v) + ", alpha = " + to_string(h.pair.alpha));
    r.values.push_back({{"name", h.name}, {"ham", to_json(h.pair.v)}, {"alpha", to_json(h.pair.alpha)}});
  }
}

void cmd_face(const Problem& pr, const Flags& fl, Report& r) {
  need(!pr.simplices.empty(), "the input defines no simplices");
  for (std::size_t s = 0; s < pr.simplices.size(); ++s) {
    const ObsSimplex& x = pr.simplices[s];
    for (int i = 0; i <= x.dim() && x.dim() >= 1; ++i) {
      FaceResult f = face_map(pr.plectic, x, i);
      r.line("simplex " + std::to_string(s) + " d" + std::to_string(i) + ": " +
             vertices_text(f.face.simplex.vertices) + " sign " + std::to_string(f.face.sign) + " alpha " +
             to_string(f.face.alpha));
      if (fl.verbose)
        r.line("  eta " + to_string(f.eta_raw));
      r.values.push_back({{"simplex", s}, {"i", i}, {"face", to_json(f.face)}, {"normal", to_json(f.normal)},
                          {"eta_raw", to_json(f.eta_raw)}});
    }
  }
}

void cmd_faces_check(const Problem& pr, const Flags&, Report& r) {
  int checked = 0;
  for (std::size_t s = 0; s < pr.simplices.size(); ++s) {
    const ObsSimplex& x = pr.simplices[s];
    for (int j = 1; j <= x.dim() && x.dim() >= 2; ++j)
      for (int i = 0; i < j; ++i) {
        auto rep = check_face_identity(pr.plectic, x, i, j);
        ++checked;
        std::string tag = "simplex " + std::to_string(s) + " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        r.values.push_back({{"simplex", s}, {"i", i}, {"j", j}, {"ok", rep.ok}, {"lambda", to_string(rep.lambda)}});
        if (rep.ok)
          r.line(tag + ": ok, lambda " + to_string(rep.lambda));
        else
          r.fail(tag + ": simplex " + std::string(rep.same_simplex ? "same" : "differs") + ", generators " +
                     (rep.same_generators ? "same" : "differ") + ", sign " + (rep.same_sign ? "same" : "differs"),
                 {{"simplex", s}, {"i", i}, {"j", j}});
      }
  }
  need(checked > 0, "no simplex of dimension >= 2 in the input");
}

void cmd_horn_fill(const Problem& pr, const Flags&, Report& r) {
  std::vector<std::pair<std::string, Horn>> horns;
  for (std::size_t h = 0; h < pr.horns.size(); ++h)
    horns.emplace_back("horn " + std::to_string(h), pr.horns[h]);
  if (horns.empty())
    for (std::size_t s = 0; s < pr.simplices.size(); ++s)
      for (int k = 0; k <= pr.simplices[s].dim() && pr.simplices[s].dim() >= 1; ++k)
        horns.emplace_back("simplex " + std::to_string(s) + " without face " + std::to_string(k),
                           horn_of(pr.plectic, pr.simplices[s], k));
  need(!horns.empty(), "the input defines no horns or simplices");
  for (const auto& [tag, h] : horns) {
    try {
      ObsSimplex f = horn_fill(pr.plectic, h);
      bool ok = true;
      for (const auto& [i, face] : h.faces)
        ok = ok && face_map(pr.plectic, f, i).face == face;
      r.values.push_back({{"horn", tag}, {"filler", to_json(f)}});
      if (ok)
        r.line(tag + ": filled " + vertices_text(f.simplex.vertices) + " alpha " + to_string(f.alpha));
      else
        r.fail(tag + ": filler does not reproduce the given faces", {{"horn", tag}});
    } catch (const HornError& e) {
      r.fail(tag + ": " + e.what(), {{"horn", tag}, {"faces", {e.face_a, e.face_b}},
                                     {"shared_face", vertices_text(e.shared_face)}});
    }
  }
}

void cmd_homology(const Problem& pr, const Flags&, Report& r) {
  need(!pr.complexes.empty(), "the input defines no complexes");
  for (int c = 0; c < static_cast<int>(pr.complexes.size()); ++c) {
    ObsComplex cx = problem_complex(pr, c);
    bool dd = true;
    for (int k = 2; k <= cx.top(); ++k)
      dd = dd && multiply(boundary(cx, k - 1), boundary(cx, k)).is_zero();
    auto hz = homology(cx), hq = homology(cx, Coefficients::Q), co = cohomology(cx);
    std::string sizes, betti;
    for (int k = 0; k <= cx.top(); ++k) {
      sizes += (k ? "," : "") + std::to_string(cx.size(k));
      betti += (k ? "," : "") + std::to_string(hz.betti[k]);
    }
    r.values.push_back({{"complex", c}, {"homology", to_json(hz)}, {"rational", to_json(hq)},
                        {"cohomology", to_json(co)}});
    if (dd)
      r.line("complex " + std::to_string(c) + ": simplices (" + sizes + "), betti (" + betti + ")");
    else
      r.fail("complex " + std::to_string(c) + ": boundary of boundary is nonzero", {{"complex", c}});
  }
}

void cmd_adiabatic(const Problem& pr, const Flags&, Report& r) {
  need(!pr.complexes.empty(), "the input defines no complexes");
  for (int c = 0; c < static_cast<int>(pr.complexes.size()); ++c) {
    ObsComplex cx = problem_complex(pr, c);
    if (cx.top() < pr.plectic.n || cx.size(pr.plectic.n) == 0) {
      r.line("complex " + std::to_string(c) + ": no top simplices");
      continue;
    }
    Cochain th = adiabatic_cochain(cx);
    json vals = json::array();
    std::string s;
    for (const auto& q : th) {
      vals.push_back(to_json(q));
      s += (s.empty() ? "" : " ") + to_string(q);
    }
    r.values.push_back({{"complex", c}, {"cochain", vals}});
    r.line("complex " + std::to_string(c) + ": " + s);
  }
}

void cmd_integrate(const Problem& pr, const Flags&, Report& r) {
  need(!pr.integrals.empty(), "the input defines no integrals");
  for (std::size_t i = 0; i < pr.integrals.size(); ++i) {
    if (pr.integrals[i].first.degree() != pr.integrals[i].second.dim()) {
      r.line("integral " + std::to_string(i) + ": degree differs from dimension, skipped");
      continue;
    }
    Q v = integrate(pr.integrals[i].first, pr.integrals[i].second);
    r.values.push_back({{"integral", i}, {"value", to_json(v)}});
    r.line("integral " + std::to_string(i) + ": " + to_string(v));
  }
}

void cmd_stokes(const Problem& pr, const Flags&, Report& r) {
  for (std::size_t i = 0; i < pr.integrals.size(); ++i) {
    const auto& [form, simplex] = pr.integrals[i];
    if (form.degree() + 1 != simplex.dim())
      continue;
    auto rep = stokes_check(form, simplex);
    r.values.push_back({{"integral", i}, {"boundary", to_json(rep.boundary_sum)}, {"interior", to_json(rep.interior)}});
    std::string s = "integral " + std::to_string(i) + ": boundary " + to_string(rep.boundary_sum) + ", interior " +
                    to_string(rep.interior);
    if (rep.ok)
      r.line(s);
    else
      r.fail(s, {{"integral", i}});
  }
  need(!r.values.empty(), "no integral pairs a p-form with a (p+1)-simplex");
}

void cmd_prequantum(const Problem& pr, const Flags& fl, Report& r) {
  Scale s = parse_scale(fl.scale);
  std::vector<Chain> cycles = pr.cycles;
  if (fl.per_simplex)
    for (const auto& t : pr.tetrahedra)
      cycles.push_back({{1, t}});
  need(!cycles.empty(), fl.per_simplex ? "the input defines no cycles or tetrahedra" : "the input defines no cycles");
  auto rep = prequantum_check(pr.plectic, cycles, s, !fl.per_simplex);
  for (std::size_t c = 0; c < rep.cycles.size(); ++c) {
    const auto& cr = rep.cycles[c];
    r.values.push_back({{"cycle", c}, {"integral", to_json(cr.integral_value)}, {"closed", cr.closed},
                        {"phase", to_json(cr.multiple)}});
    std::string line = "cycle " + std::to_string(c) + ": integral " + to_string(cr.integral_value) + ", scale " +
                       to_string(s) + " gives " + to_string(cr.multiple);
    if (cr.integral)
      r.line(line);
    else
      r.fail(line, {{"cycle", c}, {"integral", to_json(cr.integral_value)}, {"turns", to_json(frac(cr.multiple.turns))},
                    {"residual", to_json(cr.multiple.residual)}});
  }
}

void cmd_gerbe_assoc(const Problem& pr, const Flags& fl, Report& r) {
  need(!pr.tetrahedra.empty(), "the input defines no tetrahedra");
  Scale s = parse_scale(fl.scale);
  Form theta = homotopy_primitive(pr.plectic.omega);
  for (std::size_t t = 0; t < pr.tetrahedra.size(); ++t) {
    auto rep = cocycle_associativity(pr.plectic, theta, pr.tetrahedra[t], s);
    bool integral = prequantum_check(pr.plectic, {{{1, pr.tetrahedra[t]}}}, s, false).ok;
    r.values.push_back({{"tetrahedron", t}, {"product", to_json(rep.product)}, {"expected", to_json(rep.expected)},
                        {"trivial", rep.trivial}});
    std::string line = "tetrahedron " + std::to_string(t) + ": product " + to_string(rep.product) + ", expected " +
                       to_string(rep.expected) + (rep.trivial ? ", trivial" : ", defect " + to_string(rep.defect_turns));
    if (rep.agrees && rep.trivial == integral)
      r.line(line);
    else
      r.fail(line, {{"tetrahedron", t}, {"product", to_json(rep.product)}, {"expected", to_json(rep.expected)}});
  }
}

void cmd_inner_product(const Problem& pr, const Flags& fl, Report& r) {
  need(fl.complex >= 0 && fl.complex < static_cast<int>(pr.complexes.size()), "--complex is out of range");
  int fi = fl.psi_f, ii = fl.psi_i >= 0 ? fl.psi_i : (pr.states.size() > 1 ? 1 : 0);
  need(fi >= 0 && fi < static_cast<int>(pr.states.size()) && ii < static_cast<int>(pr.states.size()),
       "state index out of range");
  const StateCochain& f = pr.states[fi];
  const StateCochain& i = pr.states[ii];
  ObsComplex cx = problem_complex(pr, fl.complex);
  int k = i.level;
  need(k >= 0 && k + 1 <= cx.top(), "state level k needs stratum k+1 in the complex");
  Scale s = parse_scale(fl.kernel_scale);
  auto outer = outer_simplices(cx, k + 1, pr.tetrahedra);
  KernelCochain K = kernel_from_theta(cx, k, s, outer);
  auto res = inner_product(cx, f, i, K);
  if (!K.cocycle)
    r.line("warning: kernel is not a cocycle");
  r.line("terms " + std::to_string(res.terms) + ", sum " + to_string(res.sum));
  if (auto g = res.sum.gaussian())
    r.line("exact value " + to_string(g->first) + " + " + to_string(g->second) + "i");
  else {
    auto z = res.sum.value();
    r.line("approx value " + std::to_string(z.real()) + " + " + std::to_string(z.imag()) + "i");
  }
  json defects = json::array();
  for (const auto& d : K.defects)
    defects.push_back(to_json(d));
  r.values.push_back({{"sum", to_json(res.sum)}, {"kernel_cocycle", K.cocycle}, {"terms", res.terms},
                      {"defects", defects}});
}

void add_results(Report& r, const std::vector<CheckResult>& results, bool verbose) {
  for (const auto& c : results) {
    std::string line = "[" + std::to_string(c.criterion) + "] " + c.name + ": " + std::to_string(c.instances) +
                       " checks, " + std::to_string(c.failures) + " failed";
    r.values.push_back({{"criterion", c.criterion}, {"name", c.name}, {"instances", c.instances},
                        {"failures", c.failures}, {"notes", c.notes}});
    if (c.ok() || (c.instances == 0 && c.name.rfind("file:", 0) == 0))
      r.line(line);
    else
      r.fail(line + (c.witness.empty() ? "" : "; " + c.witness), {{"criterion", c.criterion}, {"witness", c.witness}});
    if (verbose)
      for (const auto& n : c.notes)
        r.line("    " + n);
  }
}

void cmd_selftest(const Problem* pr, const Flags& fl, Report& r) {
  SelftestOptions o;
  o.seed = fl.seed;
  o.max_degree = max_degree_from_env();
  r.line("seed " + std::to_string(o.seed) + ", max degree " + std::to_string(o.max_degree));
  add_results(r, run_selftest(o), fl.verbose);
  if (pr) {
    if (pr->sign == BracketSign::Standard)
      add_results(r, check_problem(*pr), fl.verbose);
    else
      add_results(r, {check_negative_control(*pr, fl.m)}, fl.verbose);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for Hamiltonian observables, their brackets and simplicial quantization data"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags fl;
  app.add_option("--input", fl.input, "Problem file (JSON, schema 1)");
  app.add_option("--seed", fl.seed, "Seed for randomized suites");
  app.add_flag("--verbose", fl.verbose, "Print term ledgers and notes");
  app.add_option("--json-out", fl.json_out, "Write the report as JSON");
  app.add_flag("--paranoid", fl.paranoid, "Evaluate every Jacobi term, including those zero by degree");

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const Problem&, const Flags&, Report&);
  };
  const std::vector<Command> commands{
      {"jacobi", "Homotopy Jacobi residual of each family", cmd_jacobi},
      {"skew", "Graded skew symmetry of each family", cmd_skew},
      {"lemma31", "Differential of the wedge contraction against the bracket sum", cmd_lemma31},
      {"heisenberg", "Closure of commuting families", cmd_heisenberg},
      {"solve-ham", "Hamiltonian forms of the listed fields", cmd_solve_ham},
      {"face", "Face maps of each simplex", cmd_face},
      {"faces-check", "Face identities on each simplex", cmd_faces_check},
      {"horn-fill", "Fill horns (or every horn of each simplex)", cmd_horn_fill},
      {"homology", "Homology of each complex", cmd_homology},
      {"adiabatic", "Adiabatic cochain of each complex", cmd_adiabatic},
      {"integrate", "Exact integrals", cmd_integrate},
      {"stokes", "Stokes check on each integral pair", cmd_stokes},
      {"prequantum", "Integrality of scale times the cycle integrals", cmd_prequantum},
      {"gerbe-assoc", "Associativity of the gerbe cocycle on each tetrahedron", cmd_gerbe_assoc},
      {"inner-product", "Finite inner product of two states", cmd_inner_product},
  };
  std::map<CLI::App*, const Command*> dispatch;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    dispatch[sub] = &c;
    std::string name = c.name;
    if (name == "jacobi" || name == "lemma31")
      sub->add_option("--m", fl.m, "Arity");
    if (name == "prequantum" || name == "gerbe-assoc") {
      sub->add_option("--scale", fl.scale, "Scale: r, rx2pi or 2pi");
      if (name == "prequantum")
        sub->add_flag("--per-simplex", fl.per_simplex, "Also test each tetrahedron on its own");
    }
    if (name == "inner-product") {
      sub->add_option("--kernel-scale", fl.kernel_scale, "Scale of the kernel: r, rx2pi or 2pi");
      sub->add_option("--complex", fl.complex, "Complex index");
      sub->add_option("--psi-f", fl.psi_f, "Final state index");
      sub->add_option("--psi-i", fl.psi_i, "Initial state index (default 1, or 0 with one state)");
    }
  }
  CLI::App* selftest = app.add_subcommand("selftest", "Randomized property suite, plus checks on --input");
  selftest->add_option("--m", fl.m, "Arity for a sign-broken input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report report;
  try {
    std::optional<Problem> problem;
    if (!fl.input.empty())
      problem = load_problem(fl.input);
    if (selftest->parsed()) {
      report.command = "selftest";
      cmd_selftest(problem ? &*problem : nullptr, fl, report);
    } else {
      for (const auto& [sub, c] : dispatch)
        if (sub->parsed()) {
          report.command = c->name;
          if (!problem)
            throw Usage("--input is required");
          c->run(*problem, fl, report);
        }
    }
  } catch (const InputError& e) {
    std::cerr << (e.pointer().empty() ? "input error" : "input error at ") << e.what() << "\n";
    return 2;
  } catch (const Usage& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& l : report.lines)
    std::cout << l << "\n";
  std::cout << report.command << ": " << (report.pass ? "PASS" : "FAIL") << "\n";
  if (!fl.json_out.empty()) {
    json out = {{"command", report.command}, {"pass", report.pass}, {"witnesses", report.witnesses},
                {"values", report.values}};
    if (fl.verbose || !report.pass)
      out["ledger"] = report.ledger;
    std::ofstream f(fl.json_out);
    if (!f) {
      std::cerr << "cannot write " << fl.json_out << "\n";
      return 2;
    }
    f << out.dump(2) << "\n";
  }
  return report.pass ? 0 : 1;
}
