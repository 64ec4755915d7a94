#pragma once

#include "plectic/linfty.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plectic {

/// Ordered affinely independent rational vertices.
struct AffSimplex {
  std::vector<QVec> vertices;
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  friend bool operator==(const AffSimplex&, const AffSimplex&) = default;
  friend auto operator<=>(const AffSimplex&, const AffSimplex&) = default;
};

AffSimplex make_simplex(Chart chart, std::vector<QVec> vertices);
/// Columns v_j - v_0, as a chart.dim x k matrix.
std::vector<QVec> affine_differential(const AffSimplex& s);
bool affinely_independent(const std::vector<QVec>& vertices);

/// Canonical oriented span of a list of vectors: primitive integer rows of the reduced
/// echelon basis, sorted lexicographically; sign relates the wedge of the input to the
/// wedge of the rows by a positive factor, 0 when the input is linearly dependent.
struct OrientedSpan {
  std::vector<QVec> rows;
  int sign = 0;
};

OrientedSpan canonical_span(const std::vector<QVec>& vectors, int ambient_dim);

/// A k-simplex of sOb: simplex, canonical generators and the canonical form.
struct ObsSimplex {
  AffSimplex simplex;
  std::vector<QVec> generators;
  int sign = 1;
  Form alpha;

  int dim() const { return simplex.dim(); }
  /// s with d alpha = -s * i_{g_1^...} omega; equals -1 for top simplices (d alpha = omega).
  int relation_sign(const Plectic& P) const;
  bool degenerate() const { return sign == 0; }
};

/// Structural equality on simplex, generators and sign.
bool operator==(const ObsSimplex& a, const ObsSimplex& b);
bool operator<(const ObsSimplex& a, const ObsSimplex& b);

ObsSimplex make_obs(const Plectic& P, const AffSimplex& simplex,
                    const std::vector<QVec>& raw_generators);

/// Generators whose wedge carries the recorded sign (first one negated when sign < 0);
/// make_obs on these reproduces a nondegenerate x.
std::vector<QVec> signed_generators(const ObsSimplex& x);

/// Gradient of the i-th barycentric coordinate of the standard k-simplex.
QVec face_normal(int k, int i);

/// Pushforward of face_normal(k, i) with its component along face i removed (Euclidean).
QVec face_direction(const AffSimplex& s, int i);

struct FaceResult {
  ObsSimplex face;
  Form eta_raw;
  /// face_direction of the parent simplex.
  QVec normal;
};

FaceResult face_map(const Plectic& P, const ObsSimplex& x, int i);

struct FaceIdentityReport {
  bool ok = false;
  bool same_simplex = false, same_generators = false, same_sign = false;
  /// Raw bivectors satisfy B = -lambda A when relation == -1 (A from d_i d_j, B from d_{j-1} d_i).
  Q lambda = 0;
  int relation = 0;
};

FaceIdentityReport check_face_identity(const Plectic& P, const ObsSimplex& x, int i, int j);

struct Horn {
  int m = 1;
  int r = 0;
  std::map<int, ObsSimplex> faces;
  /// Vertices of the filling simplex; needed only when the faces do not determine them (m = 1).
  std::vector<QVec> vertices;
};

/// Horn data that cannot be filled; names the face pair and their shared subface.
class HornError : public std::runtime_error {
public:
  HornError(const std::string& what, int a = -1, int b = -1, std::vector<QVec> shared = {})
      : std::runtime_error(what), face_a(a), face_b(b), shared_face(std::move(shared)) {}
  int face_a, face_b;
  std::vector<QVec> shared_face;
};

ObsSimplex horn_fill(const Plectic& P, const Horn& h);
/// The horn obtained by forgetting face r of x.
Horn horn_of(const Plectic& P, const ObsSimplex& x, int r);

struct PathShiftReport {
  bool ok = false;
  ObsSimplex start, end; ///< d_{k+1} x and d_0 x
  Form eta_start, eta_end;
  QVec v_start, v_end;
};

/// Reads a (k+1)-simplex as a path of k-observables between its last and first faces.
PathShiftReport path_shift(const Plectic& P, const ObsSimplex& x);

} // namespace plectic
