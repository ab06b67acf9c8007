#include "optrec/simplex_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace optrec {

namespace {

struct Circumsphere {
  Vec center;
  double radius;
};

// Circumcenter of an affinely independent frame inside its own affine hull.
// With edges E = QR, writing c - p0 = Q z turns the equidistance conditions
// 2 e_k . (c - p0) = |e_k|^2 into the triangular system 2 R^T z = |e|^2.
Circumsphere circumsphere(std::span<const Vec> frame) {
  const auto d = frame.front().size();
  if (frame.size() == 1) return {frame[0], 0.0};
  const auto k = static_cast<Eigen::Index>(frame.size()) - 1;
  Mat edges(d, k);
  for (Eigen::Index j = 0; j < k; ++j) edges.col(j) = frame[static_cast<std::size_t>(j) + 1] - frame[0];
  Eigen::HouseholderQR<Mat> qr(edges);
  const Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Vec rhs = 0.5 * edges.colwise().squaredNorm().transpose();
  const Vec z = r.transpose().triangularView<Eigen::Lower>().solve(rhs);
  const Mat q = qr.householderQ() * Mat::Identity(d, k);
  Circumsphere out{frame[0] + q * z, 0.0};
  out.radius = (out.center - frame[0]).norm();
  return out;
}

std::vector<Vec> face_points(const Simplex& s, Frame frame, const FaceIndexSet& face) {
  const auto& pts = frame == Frame::T ? s.vertices() : s.shrunk_vertices();
  return select(pts, face.indices());
}

}  // namespace

Simplex::Simplex(std::vector<Vec> vertices, SimplexOptions options)
    : vertices_(std::move(vertices)), options_(options) {
  if (vertices_.size() < 2) {
    throw Error(ErrorKind::DimensionMismatch, "a simplex needs at least two vertices");
  }
  dim_ = static_cast<int>(vertices_.size()) - 1;
  if (dim_ > kMaxDimension) throw Error(ErrorKind::DimensionMismatch, "dimension too large");
  for (const auto& v : vertices_) {
    if (v.size() != dim_) {
      std::ostringstream msg;
      msg << "expected " << dim_ + 1 << " points of dimension " << dim_ << ", got a point of dimension "
          << v.size();
      throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    if (!v.allFinite()) throw Error(ErrorKind::NonFinite, "vertex coordinates must be finite");
  }

  Mat edges(dim_, dim_);
  for (int j = 0; j < dim_; ++j) edges.col(j) = vertices_[static_cast<std::size_t>(j) + 1] - vertices_[0];
  const Vec sv = Eigen::JacobiSVD<Mat>(edges).singularValues();
  const double smax = sv.maxCoeff();
  const double smin = sv.minCoeff();
  conditioning_ = smax > 0.0 ? smin / smax : 0.0;
  if (!(smax > 0.0) || !(smin >= options_.degeneracy_ratio * smax)) {
    std::ostringstream msg;
    msg << "edge matrix singular value ratio " << conditioning_ << " below threshold "
        << options_.degeneracy_ratio;
    throw Error(ErrorKind::DegenerateSimplex, msg.str());
  }

  const auto sphere = circumsphere(vertices_);
  center_ = sphere.center;
  radius_ = sphere.radius;
  shrunk_.reserve(vertices_.size());
  for (const auto& v : vertices_) shrunk_.push_back(0.5 * (center_ + v));

  diameter_ = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      diameter_ = std::max(diameter_, (vertices_[i] - vertices_[j]).norm());
    }
  }
}

double FaceGeometry::distance_to_hull(const Vec& x) const {
  // Q_I = c_I + span(hull); the residual lives in span(equidistant).
  return (equidistant_basis.transpose() * (x - center)).norm();
}

double FaceGeometry::distance_to_equidistant(const Vec& x) const {
  return (hull_basis.transpose() * (x - center)).norm();
}

FaceGeometry face_geometry(const Simplex& s, const FaceIndexSet& face) {
  if (face.universe() != s.vertex_count()) {
    throw Error(ErrorKind::DimensionMismatch, "index set does not match the simplex");
  }
  const auto pts = face_points(s, Frame::T, face);
  const auto sphere = circumsphere(pts);
  auto split = split_subspace(pts);

  FaceGeometry g{face, sphere.center, sphere.radius, std::move(split.direction),
                 std::move(split.complement), {}};
  for (int i : face.indices()) {
    for (int j = 0; j < s.vertex_count(); ++j) {
      if (face.contains(j)) continue;
      g.halfspaces.push_back({i, j, 2.0 * (s.vertex(j) - s.vertex(i)),
                              s.vertex(j).squaredNorm() - s.vertex(i).squaredNorm()});
    }
  }
  return g;
}

BarycentricCoords barycentric(const Simplex& s, const Vec& x, Frame frame,
                              const std::optional<FaceIndexSet>& face) {
  if (x.size() != s.dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  const auto pts = face_points(s, frame, face.value_or(s.all_indices()));
  return barycentric(x, pts);
}

bool contains(const Simplex& s, const Vec& x) {
  const auto bc = barycentric(s, x, Frame::T);
  return bc.min_weight() >= -s.eps_bary();
}

WellCenteredReport well_centered_report(const Simplex& s) {
  WellCenteredReport report;
  for (const auto& face : all_faces(s.vertex_count())) {
    if (face.size() < 2) continue;
    const auto pts = face_points(s, Frame::T, face);
    const auto sphere = circumsphere(pts);
    const double w = barycentric(sphere.center, pts).min_weight();
    const bool ok = w >= -s.eps_bary();
    report.per_face.push_back({face, ok, w});
    report.overall = report.overall && ok;
  }
  return report;
}

bool is_completely_well_centered(const Simplex& s) { return well_centered_report(s).overall; }

double lemma_tj_margin(const Simplex& s, const FaceIndexSet& face, int j) {
  if (face.size() < 2 || !face.contains(j)) {
    throw Error(ErrorKind::InvalidArgument, "need #J >= 2 and j in J");
  }
  const auto rest = face_geometry(s, face.without(j));
  return (rest.center - s.vertex(j)).norm() - rest.radius;
}

}  // namespace optrec
