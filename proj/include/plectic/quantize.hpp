#pragma once

#include "plectic/homology.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plectic {

/// The real number 2*pi*two_pi + plain.
struct Scale {
  Q two_pi = 0;
  Q plain = 0;
  bool is_zero() const { return two_pi == 0 && plain == 0; }
};

/// Accepts "r" (radians), "rx2pi", "r*2pi" and "2pi".
Scale parse_scale(const std::string& text);
std::string to_string(const Scale& s);

/// e^{i(2 pi turns + residual)}. turns is kept unreduced so integrals stay readable.
struct Phase {
  Q turns = 0;
  Q residual = 0;

  static Phase of(const Scale& s, const Q& integral) { return Phase{s.two_pi * integral, s.plain * integral}; }
  Phase operator*(const Phase& o) const { return Phase{turns + o.turns, residual + o.residual}; }
  Phase inverse() const { return Phase{-turns, -residual}; }
  Phase conj() const { return inverse(); }
  bool is_identity() const { return residual == 0 && is_integer(turns); }
  std::complex<double> value() const;
  friend bool operator==(const Phase& a, const Phase& b) {
    return a.residual == b.residual && frac(a.turns) == frac(b.turns);
  }
};

std::string to_string(const Phase& p);

/// Exact integral of sigma^* form over the standard simplex; vertices may be affinely dependent.
Q integrate(const Form& form, const AffSimplex& simplex);

struct StokesReport {
  bool ok = false;
  Q boundary_sum = 0;
  Q interior = 0;
  std::vector<Q> faces;
};

StokesReport stokes_check(const Form& form, const AffSimplex& simplex);

Phase transition_phase(const Form& alpha, const AffSimplex& edge, const Scale& s);
Phase gerbe_cocycle(const Form& theta, const AffSimplex& simplex, const Scale& s);

/// Formal integer combination of oriented simplices.
using Chain = std::vector<std::pair<long, AffSimplex>>;

/// Formal boundary, with simplices normalized to sorted vertex order and zero terms dropped.
std::map<std::vector<QVec>, long> chain_boundary(const Chain& c);

struct CycleReport {
  bool closed = false;
  bool integral = false;
  Q integral_value = 0;
  /// scale * integral as a phase; integral iff it is the identity.
  Phase multiple;
};

struct PrequantumReport {
  bool ok = false;
  std::vector<CycleReport> cycles;
};

/// With require_closed false, each chain is checked as is (the per-simplex form of the condition).
PrequantumReport prequantum_check(const Plectic& P, const std::vector<Chain>& cycles, const Scale& s,
                                  bool require_closed = true);

struct AssociativityReport {
  bool agrees = false;
  bool trivial = false;
  Phase product, expected;
  /// Fractional part of product.turns, and the residual angle.
  Q defect_turns = 0;
  Q defect_residual = 0;
  std::vector<Phase> face_cocycles;
};

/// Alternating product of the face cocycles of an (n+1)-simplex against e^{i s int omega}.
AssociativityReport cocycle_associativity(const Plectic& P, const Form& theta, const AffSimplex& simplex,
                                          const Scale& s);

struct StateCochain {
  int level = 0;
  std::map<int, Phase> values;
};

struct KernelCochain {
  int level = 1;
  std::vector<Phase> values;
  bool cocycle = false;
  /// delta K on stratum level+1, then on each outer simplex.
  std::vector<Phase> defects;
};

/// outer: (level+1)-simplices whose faces are simplices of stratum level, matched by vertex list.
KernelCochain kernel_from_theta(const ObsComplex& cx, int k, const Scale& s,
                                const std::vector<AffSimplex>& outer = {});

/// Exact sum of unit phases, keyed by (turns mod 1/2, residual); e^{i pi} folds into the coefficient.
struct PhaseSum {
  std::map<std::pair<Q, Q>, Q> terms;

  void add(const Phase& p, const Q& c = 1);
  PhaseSum operator*(const Phase& p) const;
  friend bool operator==(const PhaseSum&, const PhaseSum&) = default;
  std::complex<double> value() const;
  /// Exact real and imaginary parts when every phase is a quarter turn.
  std::optional<std::pair<Q, Q>> gaussian() const;
};

std::string to_string(const PhaseSum& s);

struct InnerProductResult {
  PhaseSum sum;
  bool kernel_cocycle = false;
  std::size_t terms = 0;
};

/// Sum over tau in stratum k+1 of conj(psi_f(d_0 tau)) e^{iK(tau)} psi_i(d_{k+1} tau).
InnerProductResult inner_product(const ObsComplex& cx, const StateCochain& psi_f, const StateCochain& psi_i,
                                 const KernelCochain& kernel);

} // namespace plectic
