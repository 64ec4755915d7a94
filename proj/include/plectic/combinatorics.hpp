#pragma once

#include <string>
#include <vector>

namespace plectic {

/// Bijection on {1..n}; images[i-1] = sigma(i).
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  /// Swaps positions a and b (1-based).
  static Permutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(i - 1); }
  const std::vector<int>& images() const { return images_; }
  /// (-1)^sigma.
  int sign() const;
  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> images_;
};

/// epsilon(sigma; x_1..x_n) with x_1 ^ ... ^ x_n = epsilon * x_{sigma(1)} ^ ... ^ x_{sigma(n)}
/// in the free graded-commutative algebra; degrees[i-1] = |x_i|.
int koszul_sign(const Permutation& perm, const std::vector<int>& degrees);

/// Sh(p,q) ordered lexicographically by (sigma(1),...,sigma(p)).
std::vector<Permutation> unshuffles(int p, int q);

/// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);

/// Sign of the permutation that sorts idx; 0 if idx has a repeated entry.
int sort_sign(std::vector<int>& idx);

} // namespace plectic
