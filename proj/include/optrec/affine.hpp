#pragma once

#include <optional>
#include <span>
#include <vector>

#include "optrec/types.hpp"

namespace optrec {

/// Barycentric weights of a point relative to a frame of affinely independent
/// points. The weights always sum to one; when the point is off the affine
/// hull they describe its orthogonal projection and `residual` is the
/// distance that was dropped.
struct BarycentricCoords {
  Vec weights;
  double residual = 0.0;

  double min_weight() const { return weights.size() ? weights.minCoeff() : 0.0; }
};

/// Orthogonal projection onto the affine hull of `frame`, together with the
/// barycentric weights of that projection.
struct AffineProjection {
  Vec point;
  BarycentricCoords coords;
};

/// Least-squares barycentric solve. Returns nullopt when the frame is
/// rank-deficient (relative pivot below `rank_tol`).
std::optional<AffineProjection> project_to_affine_hull(const Vec& x, std::span<const Vec> frame,
                                                       double rank_tol = 1e-12);

/// Same as above but throws DegenerateFace on a rank-deficient frame.
BarycentricCoords barycentric(const Vec& x, std::span<const Vec> frame);

/// Orthonormal basis (columns) of span{frame[k] - frame[0]} and of its
/// orthogonal complement in R^d.
struct SubspaceSplit {
  Mat direction;   // d x (#frame - 1)
  Mat complement;  // d x (d + 1 - #frame)
};

SubspaceSplit split_subspace(std::span<const Vec> frame);

/// Picks frame[i] for each i in `indices`.
std::vector<Vec> select(std::span<const Vec> points, const std::vector<int>& indices);

}  // namespace optrec
