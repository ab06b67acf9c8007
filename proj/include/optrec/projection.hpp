#pragma once

#include <span>
#include <vector>

#include "optrec/affine.hpp"
#include "optrec/simplex_geometry.hpp"
#include "optrec/types.hpp"

namespace optrec {

struct ProjectionResult {
  Vec phi;                  // nearest point of the target hull
  FaceIndexSet active_set;  // vertices whose weight exceeds eps_bary
  BarycentricCoords weights;  // one weight per target vertex, exact zeros off the active set
  double certificate_max;   // max_z (x - phi) . (z - phi) over target vertices z
  double distance;          // |x - phi|
  double candidate_spread;  // max distance between accepted candidates; 0 unless checked
};

struct ProjectOptions {
  double eps_bary = kDefaultEpsBary;
  /// Visit every face candidate instead of stopping at the first accepted
  /// one, and record how far apart the accepted candidates are.
  bool check_uniqueness = false;
};

/// Nearest point of conv(target) to x, found by exhaustive face enumeration.
/// Each face hull projection is accepted when its weights are >= -eps_bary
/// and the variational inequality (x - y) . (z - y) <= 0 holds against every
/// target vertex z. The smallest accepted face wins, so points within
/// eps_bary of a cell boundary land in the lower-dimensional cell.
/// Cost is O(2^m d^3) for m target vertices.
ProjectionResult project(const Vec& x, std::span<const Vec> target, const ProjectOptions& options = {});

/// phi(x): projection onto the shrunk simplex U.
ProjectionResult project_to_shrunk(const Simplex& s, const Vec& x, bool check_uniqueness = false);

/// The I with phi(x) in G_I, i.e. the label of the partition cell of x.
FaceIndexSet region_of(const Simplex& s, const Vec& x);

struct QPoint {
  int index;
  Vec point;  // q_i(x) = x - phi(x) + u_i
};

std::vector<QPoint> q_points(const Simplex& s, const Vec& x);
std::vector<QPoint> q_points(const Simplex& s, const Vec& x, const ProjectionResult& proj);

/// max_z (x - y) . (z - y) over the target vertices. y is the projection of x
/// iff this is <= 0. Throws NotInHull if y is not in conv(target).
double certify(const Vec& x, const Vec& y, std::span<const Vec> target, double eps_bary = kDefaultEpsBary);

}  // namespace optrec
