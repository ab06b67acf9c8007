#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/QR>

#include "optrec/projection.hpp"
#include "optrec/random.hpp"
#include "optrec/simplex_geometry.hpp"

namespace optrec::testing {

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

inline Simplex make_simplex(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Vec> vs;
  for (const auto& r : rows) vs.push_back(vec(r));
  return Simplex(std::move(vs));
}

inline Simplex right_triangle() { return make_simplex({{0, 0}, {2, 0}, {0, 2}}); }
inline Simplex obtuse_triangle() { return make_simplex({{0, 0}, {4, 0}, {2, 0.5}}); }

inline std::vector<Vec> counterexample_vertices(double a = 0.2, double b = 0.6) {
  const double s = std::sqrt(1.0 - a * a);
  return {vec({0, -1, 0}), vec({s, a, 0}), vec({-s, a, 0}), vec({0, b, std::sqrt(1.0 - b * b)})};
}
inline Simplex counterexample(double a = 0.2, double b = 0.6) { return Simplex(counterexample_vertices(a, b)); }

inline Mat random_rotation(int d, Rng& rng) {
  Mat g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ() * Mat::Identity(d, d);
}

/// Regular simplex with unit circumradius centred at the origin.
inline std::vector<Vec> regular_simplex(int d) {
  // e_i - centroid in R^{d+1}, expressed in an orthonormal basis of the
  // sum-zero hyperplane.
  Mat pts = Mat::Identity(d + 1, d + 1) - Mat::Constant(d + 1, d + 1, 1.0 / (d + 1));
  Eigen::HouseholderQR<Mat> qr(pts.leftCols(d));
  const Mat basis = (qr.householderQ() * Mat::Identity(d + 1, d + 1)).leftCols(d);
  std::vector<Vec> out;
  for (int i = 0; i <= d; ++i) {
    Vec v = basis.transpose() * pts.col(i);
    out.push_back(v / v.norm());
  }
  return out;
}

/// Perturbed, rotated, scaled and translated regular simplex; rejection
/// sampled until completely well-centered.
inline Simplex random_cwc_simplex(int d, Rng& rng, double noise = 0.15) {
  while (true) {
    const Mat rot = random_rotation(d, rng);
    const double scale = rng.uniform(0.5, 3.0);
    const Vec shift = rng.uniform_vector(d, -2.0, 2.0);
    std::vector<Vec> vs;
    for (const auto& v : regular_simplex(d)) vs.push_back(scale * (rot * (v + noise * rng.normal_vector(d))) + shift);
    try {
      Simplex s(std::move(vs));
      if (is_completely_well_centered(s)) return s;
    } catch (const Error&) {
    }
  }
}

/// Gaussian vertices, retried until the conditioning test passes.
inline Simplex random_simplex(int d, Rng& rng) {
  while (true) {
    std::vector<Vec> vs;
    for (int i = 0; i <= d; ++i) vs.push_back(rng.normal_vector(d));
    try {
      Simplex s(std::move(vs));
      if (s.conditioning() > 1e-3) return s;
    } catch (const Error&) {
    }
  }
}

/// Triangle whose angles all stay below 90 degrees by a margin.
inline Simplex random_acute_triangle(Rng& rng) {
  while (true) {
    std::vector<Vec> vs{rng.normal_vector(2), rng.normal_vector(2), rng.normal_vector(2)};
    bool acute = true;
    for (int i = 0; i < 3; ++i) {
      const Vec a = vs[static_cast<std::size_t>((i + 1) % 3)] - vs[static_cast<std::size_t>(i)];
      const Vec b = vs[static_cast<std::size_t>((i + 2) % 3)] - vs[static_cast<std::size_t>(i)];
      if (a.dot(b) < 0.05 * a.norm() * b.norm()) acute = false;
    }
    if (!acute) continue;
    try {
      return Simplex(std::move(vs));
    } catch (const Error&) {
    }
  }
}

inline Vec random_point_in(const Simplex& s, Rng& rng) {
  const Vec b = rng.dirichlet(s.vertex_count());
  Vec x = Vec::Zero(s.dim());
  for (int i = 0; i < s.vertex_count(); ++i) x += b[i] * s.vertex(i);
  return x;
}

/// Uniform point in the bounding box of T expanded by `pad` times its extent.
inline Vec random_point_near(const Simplex& s, Rng& rng, double pad = 0.5) {
  Vec lo = s.vertex(0);
  Vec hi = s.vertex(0);
  for (const auto& v : s.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec ext = hi - lo;
  Vec x(s.dim());
  for (int k = 0; k < s.dim(); ++k) x[k] = rng.uniform(lo[k] - pad * ext[k], hi[k] + pad * ext[k]);
  return x;
}

/// Cells are convex: if x +- r e_k (r = clearance * sqrt(d)) share x's
/// region, the ball of radius `clearance` around x stays inside the cell.
inline bool interior_to_cell(const Simplex& s, const Vec& x, double clearance) {
  const auto region = region_of(s, x);
  const double r = clearance * std::sqrt(static_cast<double>(s.dim()));
  Vec probe = x;
  for (int k = 0; k < s.dim(); ++k) {
    for (double sign : {-1.0, 1.0}) {
      probe[k] = x[k] + sign * r;
      if (region_of(s, probe) != region) return false;
    }
    probe[k] = x[k];
  }
  return true;
}

/// Brute-force nearest point of a triangle: minimum over a barycentric lattice
/// whose spacing along every edge is at most `step`.
inline Vec grid_nearest_in_triangle(const std::vector<Vec>& tri, const Vec& x, double step) {
  double longest = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      longest = std::max(longest, (tri[static_cast<std::size_t>(i)] - tri[static_cast<std::size_t>(j)]).norm());
    }
  }
  const int n = std::max(1, static_cast<int>(std::ceil(longest / step)));
  double best = std::numeric_limits<double>::infinity();
  Vec arg = tri[0];
  const Vec e1 = (tri[1] - tri[0]) / n;
  const Vec e2 = (tri[2] - tri[0]) / n;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const Vec y = tri[0] + i * e1 + j * e2;
      const double dist = (y - x).squaredNorm();
      if (dist < best) {
        best = dist;
        arg = y;
      }
    }
  }
  return arg;
}

}  // namespace optrec::testing
