#pragma once

#include <optional>
#include <vector>

#include "optrec/affine.hpp"
#include "optrec/types.hpp"

namespace optrec {

struct SimplexOptions {
  double eps_bary = kDefaultEpsBary;
  double degeneracy_ratio = kDefaultDegeneracyRatio;
};

/// Non-degenerate simplex T in R^d with cached circumcenter c, circumradius R
/// and the vertices u_i = (c + v_i) / 2 of the shrunk simplex U.
/// Immutable after construction.
class Simplex {
 public:
  /// Throws DimensionMismatch unless given d+1 points of dimension d, and
  /// DegenerateSimplex when the edge matrix fails the singular value test.
  explicit Simplex(std::vector<Vec> vertices, SimplexOptions options = {});

  int dim() const noexcept { return dim_; }
  int vertex_count() const noexcept { return dim_ + 1; }
  const std::vector<Vec>& vertices() const noexcept { return vertices_; }
  const Vec& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }
  const Vec& circumcenter() const noexcept { return center_; }
  double circumradius() const noexcept { return radius_; }
  const std::vector<Vec>& shrunk_vertices() const noexcept { return shrunk_; }
  const Vec& shrunk_vertex(int i) const { return shrunk_.at(static_cast<std::size_t>(i)); }

  double eps_bary() const noexcept { return options_.eps_bary; }
  double degeneracy_ratio() const noexcept { return options_.degeneracy_ratio; }
  /// sigma_min / sigma_max of the edge matrix v_i - v_0.
  double conditioning() const noexcept { return conditioning_; }
  /// Length of the longest edge; used to scale absolute tolerances.
  double diameter() const noexcept { return diameter_; }

  FaceIndexSet all_indices() const { return FaceIndexSet::full(vertex_count()); }

 private:
  int dim_;
  std::vector<Vec> vertices_;
  Vec center_;
  double radius_;
  std::vector<Vec> shrunk_;
  SimplexOptions options_;
  double conditioning_;
  double diameter_;
};

/// Closed half-space |x - v_i| <= |x - v_j| written as normal . x <= offset.
struct HalfSpace {
  int i;
  int j;
  Vec normal;     // 2 (v_j - v_i)
  double offset;  // |v_j|^2 - |v_i|^2
};

/// Geometry of the face T_I: its circumcenter c_I and radius R_I, the affine
/// hull Q_I = c_I + span(hull_basis) and the equidistant set
/// H_I = c_I + span(equidistant_basis). Both bases are orthonormal and
/// mutually orthogonal.
struct FaceGeometry {
  FaceIndexSet index_set;
  Vec center;
  double radius = 0.0;
  Mat hull_basis;         // d x (#I - 1)
  Mat equidistant_basis;  // d x (d + 1 - #I)
  std::vector<HalfSpace> halfspaces;  // one per (i in I, j not in I)

  double distance_to_hull(const Vec& x) const;         // dist(x, Q_I)
  double distance_to_equidistant(const Vec& x) const;  // dist(x, H_I)
};

FaceGeometry face_geometry(const Simplex& s, const FaceIndexSet& face);

enum class Frame { T, U };

/// Barycentric coordinates of x relative to the face `face` (whole simplex
/// by default) of T or of U.
BarycentricCoords barycentric(const Simplex& s, const Vec& x, Frame frame,
                              const std::optional<FaceIndexSet>& face = std::nullopt);

/// Closed-set membership in T using the eps_bary sign convention.
bool contains(const Simplex& s, const Vec& x);

struct FaceCentering {
  FaceIndexSet face;
  bool contains_circumcenter;
  double min_barycentric;
};

struct WellCenteredReport {
  bool overall = true;
  std::vector<FaceCentering> per_face;  // every face with #I >= 2, by size then mask
};

/// Checks that every face of T with at least two vertices contains its own
/// circumcenter. Exponential in d; intended for d <= 12.
WellCenteredReport well_centered_report(const Simplex& s);
bool is_completely_well_centered(const Simplex& s);

/// |c_I - v_j| - R_I with I = J \ {j}. Non-negative whenever T_J contains
/// its circumcenter.
double lemma_tj_margin(const Simplex& s, const FaceIndexSet& face, int j);

}  // namespace optrec
