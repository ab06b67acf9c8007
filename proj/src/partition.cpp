#include "optrec/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace optrec {

double voronoi_margin(const Simplex& s, const Vec& x, int i) {
  const double di = (x - s.vertex(i)).squaredNorm();
  double worst = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < s.vertex_count(); ++j) {
    if (j != i) worst = std::max(worst, di - (x - s.vertex(j)).squaredNorm());
  }
  return worst;
}

double CellDecomposition::witness_margin(const Simplex& s) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (int i : index_set.indices()) {
    const double di = (f_witness - s.vertex(i)).norm();
    for (int j = 0; j < s.vertex_count(); ++j) {
      worst = std::max(worst, di - (f_witness - s.vertex(j)).norm());
    }
  }
  return worst;
}

double CellDecomposition::orthogonality_defect(const Simplex& s) const {
  const Vec offset = f_witness - s.circumcenter();
  const auto idx = index_set.indices();
  double worst = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      worst = std::max(worst, std::abs(offset.dot(s.shrunk_vertex(idx[a]) - s.shrunk_vertex(idx[b]))));
    }
  }
  return worst;
}

double CellDecomposition::off_face_weight(const Simplex& s) const {
  const auto bc = barycentric(s, g_part, Frame::U);
  double worst = 0.0;
  for (int k = 0; k < s.vertex_count(); ++k) {
    if (!index_set.contains(k)) worst = std::max(worst, std::abs(bc.weights[k]));
  }
  return worst;
}

CellDecomposition decompose(const Simplex& s, const Vec& x) {
  const auto proj = project_to_shrunk(s, x);
  CellDecomposition out{proj.active_set, proj.phi, x - proj.phi, {}, 0.0};
  out.f_witness = 2.0 * out.z_part + s.circumcenter();
  out.residual = (x - (out.g_part + out.z_part)).norm();
  return out;
}

Vec sample_region(const Simplex& s, const FaceIndexSet& face, const std::optional<Vec>& beta,
                  const std::optional<Vec>& alpha, Rng& rng) {
  if (face.universe() != s.vertex_count()) {
    throw Error(ErrorKind::DimensionMismatch, "index set does not match the simplex");
  }
  if (!is_completely_well_centered(s)) {
    throw Error(ErrorKind::NotWellCentered, "the vertex representation needs a completely well-centered simplex");
  }
  const auto idx = face.indices();
  const auto uppers = supersets(face);

  const Vec b = beta ? *beta : rng.dirichlet(static_cast<int>(idx.size()));
  if (b.size() != static_cast<Eigen::Index>(idx.size()) || b.minCoeff() <= 0.0 ||
      std::abs(b.sum() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "beta must be strictly positive and sum to one over I");
  }
  const Vec a = alpha ? *alpha : rng.dirichlet(static_cast<int>(uppers.size()));
  if (a.size() != static_cast<Eigen::Index>(uppers.size()) || a.minCoeff() < 0.0 ||
      std::abs(a.sum() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "alpha must be non-negative and sum to one over [I, Sigma]");
  }

  // sum_i beta_i v_i is shared by every M; only the face circumcenters vary.
  Vec weighted_vertices = Vec::Zero(s.dim());
  for (std::size_t k = 0; k < idx.size(); ++k) weighted_vertices += b[static_cast<Eigen::Index>(k)] * s.vertex(idx[k]);
  Vec x = Vec::Zero(s.dim());
  for (std::size_t m = 0; m < uppers.size(); ++m) {
    const double am = a[static_cast<Eigen::Index>(m)];
    if (am == 0.0) continue;
    const Vec cm = uppers[m].is_full() ? s.circumcenter() : face_geometry(s, uppers[m]).center;
    x += am * 0.5 * (cm + weighted_vertices);
  }
  return x;
}

Vec sample_f_interior(const Simplex& s, const FaceIndexSet& face, const std::optional<Vec>& weights) {
  if (face.universe() != s.vertex_count()) {
    throw Error(ErrorKind::DimensionMismatch, "index set does not match the simplex");
  }
  if (face.is_full()) throw Error(ErrorKind::InvalidArgument, "I must be a proper subset");
  const auto outside = face.complement().indices();
  Vec w = weights ? *weights : Vec::Constant(static_cast<Eigen::Index>(outside.size()), 1.0 / outside.size());
  if (w.size() != static_cast<Eigen::Index>(outside.size()) || w.minCoeff() <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "weights must be strictly positive, one per index outside I");
  }
  w /= w.sum();

  Vec z = Vec::Zero(s.dim());
  for (std::size_t k = 0; k < outside.size(); ++k) {
    const int i = outside[k];
    // Facet opposite v_i: points c_i + t n are equidistant from its vertices
    // and move away from v_i once 2 t (a - b) > R_i^2 - |c_i - v_i|^2.
    const auto facet = face_geometry(s, s.all_indices().without(i));
    Vec n = facet.equidistant_basis.col(0);
    if (n.dot(s.vertex(i) - facet.center) > 0.0) n = -n;
    const double a = n.dot(facet.center);
    const double b = n.dot(s.vertex(i));
    const double gap = facet.radius * facet.radius - (facet.center - s.vertex(i)).squaredNorm();
    const double t = 2.0 * std::max(0.0, gap / (2.0 * (a - b))) + 1.0;
    z += w[static_cast<Eigen::Index>(k)] * (facet.center + t * n);
  }
  return z;
}

AdmissibilityReport admissibility_at(const Simplex& s, const Vec& x, DomainMode domain) {
  const auto proj = project_to_shrunk(s, x);
  AdmissibilityReport report{true, proj.active_set, {}};
  if (domain == DomainMode::WholeSpace) return report;
  for (auto& q : q_points(s, x, proj)) {
    if (!contains(s, q.point)) report.violations.push_back({q.index, std::move(q.point)});
  }
  report.ok = report.violations.empty();
  return report;
}

namespace {

void lattice_rec(std::span<const Vec> frame, int level, std::size_t pos, int remaining, Vec& partial,
                 std::vector<Vec>& out) {
  if (pos + 1 == frame.size()) {
    out.push_back(partial + (static_cast<double>(remaining) / level) * frame[pos]);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    Vec next = partial + (static_cast<double>(k) / level) * frame[pos];
    lattice_rec(frame, level, pos + 1, remaining - k, next, out);
  }
}

}  // namespace

std::vector<Vec> barycentric_lattice(std::span<const Vec> frame, int level) {
  if (frame.empty() || level < 1) throw Error(ErrorKind::InvalidArgument, "lattice needs a frame and level >= 1");
  std::vector<Vec> out;
  Vec partial = Vec::Zero(frame.front().size());
  lattice_rec(frame, level, 0, level, partial, out);
  return out;
}

FacetScanResult scan_facets_for_admissibility(const Simplex& s, int level) {
  FacetScanResult result;
  for (int i = 0; i < s.vertex_count(); ++i) {
    const auto facet = select(s.vertices(), s.all_indices().without(i).indices());
    for (const auto& x : barycentric_lattice(facet, level)) {
      ++result.points_checked;
      auto report = admissibility_at(s, x, DomainMode::SimplexItself);
      if (report.ok) continue;
      ++result.violating_points;
      if (!result.report || report.violations.size() > result.report->violations.size()) {
        result.violation_found = true;
        result.facet = i;
        result.point = x;
        result.report = std::move(report);
      }
    }
  }
  return result;
}

}  // namespace optrec
