#include "optrec/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace optrec {

namespace {

constexpr double kRoundoff = 1e-14;

std::vector<Vec> subset_points(std::span<const Vec> target, std::uint32_t mask) {
  std::vector<Vec> pts;
  for (std::size_t k = 0; k < target.size(); ++k) {
    if ((mask >> k) & 1u) pts.push_back(target[k]);
  }
  return pts;
}

double raw_certificate(const Vec& x, const Vec& y, std::span<const Vec> target) {
  const Vec r = x - y;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& z : target) worst = std::max(worst, r.dot(z - y));
  return worst;
}

// Scale-free form of the variational inequality: the angle between x - y
// and every z - y must be at least 90 degrees up to eps_bary.
bool certificate_holds(const Vec& x, const Vec& y, std::span<const Vec> target, double eps) {
  const Vec r = x - y;
  const double nr = r.norm();
  const double guard = kRoundoff * (1.0 + x.squaredNorm());
  for (const auto& z : target) {
    const Vec e = z - y;
    if (r.dot(e) > eps * nr * e.norm() + guard * (1.0 + z.squaredNorm())) return false;
  }
  return true;
}

// Next mask with the same popcount (Gosper's hack).
std::uint32_t next_same_popcount(std::uint32_t v) {
  const std::uint32_t t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (__builtin_ctz(v) + 1));
}

struct Candidate {
  std::uint32_t mask;
  AffineProjection proj;
};

std::optional<Candidate> try_face(const Vec& x, std::span<const Vec> target, std::uint32_t mask,
                                  double eps) {
  const auto pts = subset_points(target, mask);
  auto proj = project_to_affine_hull(x, pts);
  if (!proj) return std::nullopt;  // degenerate face: skipped, never fatal
  if (proj->coords.min_weight() < -eps) return std::nullopt;
  if (!certificate_holds(x, proj->point, target, eps)) return std::nullopt;
  return Candidate{mask, std::move(*proj)};
}

Vec scatter(const Vec& local, std::uint32_t mask, std::size_t m) {
  Vec full = Vec::Zero(static_cast<Eigen::Index>(m));
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if ((mask >> i) & 1u) full[static_cast<Eigen::Index>(i)] = local[k++];
  }
  return full;
}

}  // namespace

ProjectionResult project(const Vec& x, std::span<const Vec> target, const ProjectOptions& options) {
  const std::size_t m = target.size();
  if (m == 0 || m > static_cast<std::size_t>(kMaxDimension) + 1) {
    throw Error(ErrorKind::InvalidArgument, "target vertex count out of range");
  }
  for (const auto& z : target) {
    if (z.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  }
  const double eps = options.eps_bary;
  const std::uint32_t full = m >= 32 ? ~0u : (1u << m) - 1u;

  std::optional<Candidate> best;
  double spread = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::uint32_t mask = k >= 32 ? ~0u : (1u << k) - 1u; mask <= full && mask != 0;) {
      if (auto cand = try_face(x, target, mask, eps)) {
        if (!best) {
          best = std::move(cand);
          if (!options.check_uniqueness) break;
        } else {
          spread = std::max(spread, (cand->proj.point - best->proj.point).norm());
        }
      }
      if (mask == full) break;
      mask = next_same_popcount(mask);
    }
    if (best && !options.check_uniqueness) break;
  }
  if (!best) {
    // Compactness guarantees a nearest point; reaching this is a bug.
    throw std::logic_error("projection found no certified face candidate");
  }

  // Drop weights within eps_bary of zero and re-project onto the smaller face.
  std::uint32_t active = 0;
  {
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((best->mask >> i) & 1u) {
        if (best->proj.coords.weights[k] > eps) active |= 1u << i;
        ++k;
      }
    }
  }
  if (active != best->mask) {
    auto proj = project_to_affine_hull(x, subset_points(target, active));
    if (!proj) throw std::logic_error("active face became degenerate");
    best = Candidate{active, std::move(*proj)};
  }

  ProjectionResult out{best->proj.point,
                       FaceIndexSet(active, static_cast<int>(m)),
                       {scatter(best->proj.coords.weights, active, m), best->proj.coords.residual},
                       0.0,
                       (x - best->proj.point).norm(),
                       spread};
  out.certificate_max = raw_certificate(x, out.phi, target);
  return out;
}

ProjectionResult project_to_shrunk(const Simplex& s, const Vec& x, bool check_uniqueness) {
  if (x.size() != s.dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  return project(x, s.shrunk_vertices(), {s.eps_bary(), check_uniqueness});
}

FaceIndexSet region_of(const Simplex& s, const Vec& x) { return project_to_shrunk(s, x).active_set; }

std::vector<QPoint> q_points(const Simplex& s, const Vec& x) {
  return q_points(s, x, project_to_shrunk(s, x));
}

std::vector<QPoint> q_points(const Simplex& s, const Vec& x, const ProjectionResult& proj) {
  std::vector<QPoint> out;
  const Vec shift = x - proj.phi;
  for (int i : proj.active_set.indices()) out.push_back({i, shift + s.shrunk_vertex(i)});
  return out;
}

double certify(const Vec& x, const Vec& y, std::span<const Vec> target, double eps_bary) {
  auto proj = project_to_affine_hull(y, target);
  if (!proj) throw Error(ErrorKind::DegenerateFace, "target vertices are not affinely independent");
  const double scale = 1.0 + y.norm();
  if (proj->coords.min_weight() < -eps_bary || proj->coords.residual > 1e-9 * scale) {
    throw Error(ErrorKind::NotInHull, "claimed projection is outside the target hull");
  }
  return raw_certificate(x, y, target);
}

}  // namespace optrec
