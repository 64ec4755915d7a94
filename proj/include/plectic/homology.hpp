#pragma once

#include "plectic/observables.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace plectic {

/// Finite face-closed family of observable simplices, strata indexed by dimension 0..n.
struct ObsComplex {
  Plectic plectic;
  std::vector<std::vector<ObsSimplex>> strata;
  /// incidence[k][s] lists (i, index of d_i in stratum k-1) for simplex s of stratum k.
  std::vector<std::vector<std::vector<std::pair<int, int>>>> incidence;

  int top() const { return static_cast<int>(strata.size()) - 1; }
  std::size_t size(int k) const;
  /// Index of x in its stratum, or -1.
  int find(const ObsSimplex& x) const;
  std::size_t total() const;
};

ObsComplex build_complex(const Plectic& P, const std::vector<ObsSimplex>& seeds);

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Matrix of the boundary from stratum k (columns) to stratum k-1 (rows).
struct BoundaryMatrix {
  std::size_t rows = 0, cols = 0;
  IntMatrix entries;
  bool is_zero() const;
};

BoundaryMatrix boundary(const ObsComplex& cx, int k);
BoundaryMatrix multiply(const BoundaryMatrix& a, const BoundaryMatrix& b);
BoundaryMatrix transpose(const BoundaryMatrix& m);

/// Nonzero invariant factors (positive, each dividing the next).
std::vector<mpz_class> smith_invariants(IntMatrix m);

enum class Coefficients { Z, Q };

struct HomologyResult {
  std::vector<int> betti;
  /// Invariant factors > 1 per degree; always empty over Q.
  std::vector<std::vector<mpz_class>> torsion;
};

HomologyResult homology(const ObsComplex& cx, Coefficients c = Coefficients::Z);
HomologyResult cohomology(const ObsComplex& cx, Coefficients c = Coefficients::Z);

/// Rational cochain aligned with stratum order.
using Cochain = std::vector<Q>;

Cochain coboundary_apply(const ObsComplex& cx, int k, const Cochain& f);
/// Integral of sigma^* H(omega) over each top simplex.
Cochain adiabatic_cochain(const ObsComplex& cx);

} // namespace plectic
