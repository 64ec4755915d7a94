#include "plectic/linalg.hpp"

#include <stdexcept>

namespace plectic {

std::vector<int> rref(QMatrix& m) {
  std::vector<int> pivots;
  if (m.empty())
    return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0)
      ++p;
    if (p == rows)
      continue;
    std::swap(m[p], m[r]);
    Q inv = 1 / m[r][c];
    for (auto& e : m[r])
      e *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0)
        continue;
      Q f = m[i][c];
      for (std::size_t k = c; k < cols; ++k)
        m[i][k] -= f * m[r][k];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(QMatrix m) { return static_cast<int>(rref(m).size()); }

std::optional<QVec> solve(const QMatrix& A, const QVec& b) {
  std::size_t rows = A.size();
  if (b.size() != rows)
    throw std::invalid_argument("solve: right-hand side length mismatch");
  std::size_t cols = rows ? A[0].size() : 0;
  QMatrix aug(rows, QVec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j)
      aug[i][j] = A[i][j];
    aug[i][cols] = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == static_cast<int>(cols))
    return std::nullopt;
  QVec x(cols, Q(0));
  for (std::size_t r = 0; r < piv.size(); ++r)
    x[piv[r]] = aug[r][cols];
  return x;
}

std::vector<QVec> nullspace(QMatrix A, std::size_t cols) {
  auto piv = rref(A);
  std::vector<char> is_pivot(cols, 0);
  for (int p : piv)
    is_pivot[p] = 1;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f])
      continue;
    QVec x(cols, Q(0));
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      x[piv[r]] = -A[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

QVec primitive(const QVec& v) {
  mpz_class l = 1, g = 0;
  for (const auto& e : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] * Q(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_num_mpz_t());
  }
  if (g == 0)
    throw std::invalid_argument("primitive: zero vector");
  for (auto& e : out)
    e /= Q(g);
  return out;
}

Q determinant(QMatrix m) {
  std::size_t n = m.size();
  Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Q f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k)
        m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

} // namespace plectic
