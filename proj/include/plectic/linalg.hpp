#pragma once

#include "plectic/rational.hpp"

#include <optional>
#include <vector>

namespace plectic {

using QMatrix = std::vector<QVec>;

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& m);

int rank(QMatrix m);

/// Some x with A x = b (free variables set to zero), or nothing.
std::optional<QVec> solve(const QMatrix& A, const QVec& b);

/// Basis of {x : A x = 0}; cols gives the width when A has no rows.
std::vector<QVec> nullspace(QMatrix A, std::size_t cols);

/// Scales a nonzero vector to a primitive integer vector in the same direction.
QVec primitive(const QVec& v);

/// Determinant of a square matrix.
Q determinant(QMatrix m);

} // namespace plectic
