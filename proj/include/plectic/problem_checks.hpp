#pragma once

#include "plectic/selftest.hpp"
#include "plectic/serialize.hpp"

#include <vector>

namespace plectic {

/// Elements alpha u^{k-1} of family f, in file order.
std::vector<UElement> family_elements(const Problem& pr, int f);
std::vector<MultiVec> family_fields(const Problem& pr, int f);

ObsComplex problem_complex(const Problem& pr, int c);

/// Simplices of dimension level+1 all of whose faces are level-simplices of cx.
std::vector<AffSimplex> outer_simplices(const ObsComplex& cx, int level, const std::vector<AffSimplex>& candidates);

/// Scales used when comparing cocycle flags with the prequantum condition.
std::vector<Scale> probe_scales();

/// Property checks on the file contents, numbered like the selftest criteria.
std::vector<CheckResult> check_problem(const Problem& pr);

/// Passes when the file's bracket signs make the m-ary Jacobi residual nonzero for some family.
CheckResult check_negative_control(const Problem& pr, int m);

} // namespace plectic
