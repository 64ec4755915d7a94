#pragma once

#include "plectic/exterior.hpp"

#include <cstdint>
#include <random>

namespace plectic {

/// Seeded generator of small exact test data.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi);
  /// Small integer in [-r, r], optionally nonzero.
  Q small(int r = 3, bool nonzero = false);
  bool coin(double p = 0.5);

  Poly poly(int dim, int max_deg, int max_terms = 3);
  Form form(Chart chart, int degree, int max_deg, int max_terms = 2);
  MultiVec multivec(Chart chart, int degree, int max_deg, int max_terms = 2);
  MultiVec vector_field(Chart chart, int max_deg) { return multivec(chart, 1, max_deg); }
  QVec point(int dim, int r = 3);
  /// Random nonzero rational vector with small entries.
  QVec vector(int dim, int r = 3);

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

} // namespace plectic
