#include "optrec/affine.hpp"

#include <cmath>

namespace optrec {

namespace {

Mat edge_matrix(std::span<const Vec> frame) {
  const auto d = frame.front().size();
  Mat edges(d, static_cast<Eigen::Index>(frame.size()) - 1);
  for (std::size_t k = 1; k < frame.size(); ++k) edges.col(k - 1) = frame[k] - frame[0];
  return edges;
}

}  // namespace

std::optional<AffineProjection> project_to_affine_hull(const Vec& x, std::span<const Vec> frame,
                                                       double rank_tol) {
  if (frame.empty()) throw Error(ErrorKind::InvalidArgument, "empty frame");
  AffineProjection out;
  if (frame.size() == 1) {
    out.point = frame[0];
    out.coords.weights = Vec::Ones(1);
    out.coords.residual = (x - frame[0]).norm();
    return out;
  }
  const Mat edges = edge_matrix(frame);
  if (edges.cols() > edges.rows()) return std::nullopt;

  Eigen::HouseholderQR<Mat> qr(edges);
  const auto& r = qr.matrixQR();
  const double scale = edges.colwise().norm().maxCoeff();
  for (Eigen::Index k = 0; k < edges.cols(); ++k) {
    if (!(std::abs(r(k, k)) > rank_tol * scale)) return std::nullopt;
  }
  const Vec lambda = qr.solve(x - frame[0]);

  out.coords.weights.resize(static_cast<Eigen::Index>(frame.size()));
  out.coords.weights[0] = 1.0 - lambda.sum();
  out.coords.weights.tail(lambda.size()) = lambda;
  out.point = frame[0] + edges * lambda;
  out.coords.residual = (x - out.point).norm();
  return out;
}

BarycentricCoords barycentric(const Vec& x, std::span<const Vec> frame) {
  auto proj = project_to_affine_hull(x, frame);
  if (!proj) throw Error(ErrorKind::DegenerateFace, "frame is not affinely independent");
  return proj->coords;
}

SubspaceSplit split_subspace(std::span<const Vec> frame) {
  const auto d = frame.front().size();
  SubspaceSplit out;
  if (frame.size() == 1) {
    out.direction = Mat(d, 0);
    out.complement = Mat::Identity(d, d);
    return out;
  }
  const Mat edges = edge_matrix(frame);
  const auto k = edges.cols();
  Eigen::HouseholderQR<Mat> qr(edges);
  const Mat q = qr.householderQ() * Mat::Identity(d, d);
  out.direction = q.leftCols(k);
  out.complement = q.rightCols(d - k);
  return out;
}

std::vector<Vec> select(std::span<const Vec> points, const std::vector<int>& indices) {
  std::vector<Vec> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(points[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace optrec
