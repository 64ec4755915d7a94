#include "plectic/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace plectic {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<int> seen(images_.size() + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > size() || seen[v])
      throw std::invalid_argument("permutation images are not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto p = identity(n);
  std::swap(p.images_.at(a - 1), p.images_.at(b - 1));
  return p;
}

int Permutation::sign() const {
  int inv = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      inv += images_[i] > images_[j];
  return inv % 2 ? -1 : 1;
}

std::string Permutation::str() const {
  std::string s = "[";
  for (int i = 0; i < size(); ++i)
    s += (i ? "," : "") + std::to_string(images_[i]);
  return s + "]";
}

int koszul_sign(const Permutation& perm, const std::vector<int>& degrees) {
  if (static_cast<int>(degrees.size()) != perm.size())
    throw std::invalid_argument("koszul_sign: degree list length differs from permutation size");
  // Each inverted pair contributes the product of the two degrees.
  long odd = 0;
  for (int i = 1; i <= perm.size(); ++i)
    for (int j = i + 1; j <= perm.size(); ++j)
      if (perm(i) > perm(j))
        odd += static_cast<long>(degrees[perm(i) - 1]) * degrees[perm(j) - 1];
  return (odd % 2 == 0) ? 1 : -1;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n)
    return out;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i)
      --i;
    if (i < 0)
      break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j)
      cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<Permutation> unshuffles(int p, int q) {
  if (p < 0 || q < 0)
    throw std::invalid_argument("unshuffles: negative block size");
  std::vector<Permutation> out;
  for (const auto& head : subsets(p + q, p)) {
    std::vector<int> im;
    std::vector<char> used(p + q, 0);
    for (int h : head) {
      im.push_back(h + 1);
      used[h] = 1;
    }
    for (int i = 0; i < p + q; ++i)
      if (!used[i])
        im.push_back(i + 1);
    out.emplace_back(std::move(im));
  }
  return out;
}

int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j])
        return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

} // namespace plectic
