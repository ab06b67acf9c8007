#pragma once

#include <optional>
#include <vector>

#include "optrec/projection.hpp"
#include "optrec/random.hpp"
#include "optrec/simplex_geometry.hpp"

namespace optrec {

/// max_{j != i} (|x - v_i|^2 - |x - v_j|^2). x is in the closed Voronoi
/// cell W_i iff this is <= 0.
double voronoi_margin(const Simplex& s, const Vec& x, int i);

/// x = g_part + z_part with g_part in G_I and z_part in (F_I - c) / 2.
struct CellDecomposition {
  FaceIndexSet index_set;
  Vec g_part;     // phi(x)
  Vec z_part;     // x - phi(x)
  Vec f_witness;  // 2 z_part + c, a point of F_I
  double residual;

  /// max over i in I, j of |f - v_i| - |f - v_j|; <= 0 means f is in F_I.
  double witness_margin(const Simplex& s) const;
  /// max over i, j in I of |(f - c) . (u_i - u_j)|.
  double orthogonality_defect(const Simplex& s) const;
  /// Largest U-barycentric weight of g_part outside I.
  double off_face_weight(const Simplex& s) const;
};

CellDecomposition decompose(const Simplex& s, const Vec& x);

/// Point of the cell of I inside T written through the vertex representation
/// sum_M alpha_M sum_{i in I} beta_i u_i^M, u_i^M = (c_M + v_i) / 2, over
/// all M containing I. Missing weights are drawn Dirichlet-uniform from rng.
/// Alpha is indexed like supersets(I). Throws NotWellCentered unless T is
/// completely well-centered.
Vec sample_region(const Simplex& s, const FaceIndexSet& face, const std::optional<Vec>& beta,
                  const std::optional<Vec>& alpha, Rng& rng);

/// A point of F_I that lies strictly outside W_k for every k not in I. Built
/// from one point per facet normal line, averaged with `weights` over the
/// complement of I (uniform when absent). I must be a proper subset.
Vec sample_f_interior(const Simplex& s, const FaceIndexSet& face,
                      const std::optional<Vec>& weights = std::nullopt);

enum class DomainMode { SimplexItself, WholeSpace };

struct AdmissibilityViolation {
  int index;
  Vec q_point;
};

struct AdmissibilityReport {
  bool ok = true;
  FaceIndexSet region;
  std::vector<AdmissibilityViolation> violations;
};

/// Checks that every q_i(x), i in the region of x, lies in the domain. This is
/// a pointwise check only.
AdmissibilityReport admissibility_at(const Simplex& s, const Vec& x, DomainMode domain);

struct FacetScanResult {
  bool violation_found = false;
  int facet = -1;  // index of the vertex opposite the facet
  Vec point;
  std::optional<AdmissibilityReport> report;
  std::size_t points_checked = 0;
  std::size_t violating_points = 0;
};

/// Scans every facet of T on a barycentric lattice with `level` subdivisions
/// per edge for points where T fails to be admissible for itself. Reports the
/// violating point with the most offending indices, the first one on ties.
FacetScanResult scan_facets_for_admissibility(const Simplex& s, int level);

/// Points sum_i (k_i / level) p_i over all k with sum k_i = level, in
/// lexicographic order of k.
std::vector<Vec> barycentric_lattice(std::span<const Vec> frame, int level);

}  // namespace optrec
