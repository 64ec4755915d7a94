#pragma once

#include "plectic/quantize.hpp"
#include "plectic/random.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace plectic {

struct CheckResult {
  int criterion = 0;
  std::string name;
  long instances = 0;
  long failures = 0;
  /// One line per sub-check: "label: passed/total".
  std::vector<std::string> notes;
  /// First counterexample.
  std::string witness;
  bool ok() const { return instances > 0 && failures == 0; }
};

struct SelftestOptions {
  std::uint64_t seed = 42;
  /// Coefficient degree cap for random data.
  int max_degree = 3;
};

/// PLECTIC_MAX_DEGREE when set to a positive integer, else fallback.
int max_degree_from_env(int fallback = 3);

/// alpha u^{k-1} for a random Hamiltonian pair with a (n-k)-form alpha; omega must be constant.
UElement random_hamiltonian(RandomSource& rs, const Plectic& P, int k, int max_deg);
/// Vertices in general position with n-k transverse generators.
ObsSimplex random_obs(RandomSource& rs, const Plectic& P, int k, int radius = 2);

/// Lie derivative along a vector field from the derivation rule on f dx_I.
Form lie_derivative_by_derivation(const MultiVec& v, const Form& a);
/// [u_1^...^u_m, v_1^...^v_n] from antisymmetry and the Leibniz rule, down to Lie brackets.
MultiVec schouten_by_leibniz(const std::vector<MultiVec>& u, const std::vector<MultiVec>& v, Chart chart);

/// The fixed family used as the built-in sign-broken control.
std::vector<UElement> negative_control_family(const Plectic& P);

CheckResult check_calculus(const SelftestOptions& o);
CheckResult check_wedge_contraction(const SelftestOptions& o);
CheckResult check_linfty(const SelftestOptions& o);
CheckResult check_heisenberg(const SelftestOptions& o);
CheckResult check_faces(const SelftestOptions& o);
CheckResult check_kan(const SelftestOptions& o);
CheckResult check_homology(const SelftestOptions& o);
CheckResult check_quantization(const SelftestOptions& o);
CheckResult check_inner_product(const SelftestOptions& o);

std::vector<CheckResult> run_selftest(const SelftestOptions& o);

} // namespace plectic
