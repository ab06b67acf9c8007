#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optrec/empirical_error.hpp"
#include "optrec/function_models.hpp"
#include "optrec/recovery.hpp"
#include "support.hpp"

using namespace optrec;
using namespace optrec::testing;

namespace {

InformationVector random_info(int d, Rng& rng) {
  std::vector<double> values;
  std::vector<Vec> grads;
  for (int i = 0; i <= d; ++i) {
    values.push_back(rng.normal());
    grads.push_back(rng.normal_vector(d));
  }
  return make_information(std::move(values), std::move(grads));
}

FunctionWithGradient affine(double a, Vec g) {
  return {[a, g](const Vec& x) { return a + g.dot(x); }, [g](const Vec&) { return g; }};
}

}  // namespace

TEST_CASE("information vectors") {
  CHECK_THROWS_AS(make_information({1.0, 2.0}, {vec({1.0})}), Error);
  CHECK_THROWS_AS(make_information({1.0, 2.0}, {vec({1.0}), vec({1.0, 2.0})}), Error);
  CHECK_THROWS_AS(make_information({1.0, NAN}, {vec({1.0}), vec({1.0})}), Error);
  try {
    make_information({1.0, 2.0}, {vec({1.0}), vec({1.0, 2.0})});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ShapeMismatch);
  }

  const auto rt = right_triangle();
  const auto zero = sample_information(affine(0.0, Vec::Zero(2)), rt);
  for (int i = 0; i < 3; ++i) {
    CHECK(zero.values[static_cast<std::size_t>(i)] == 0.0);
    CHECK(zero.gradients[static_cast<std::size_t>(i)].norm() == 0.0);
  }
  const Vec g = vec({0.3, -1.2});
  const auto lin = sample_information(affine(2.0, g), rt);
  for (int i = 0; i < 3; ++i) {
    CHECK(lin.values[static_cast<std::size_t>(i)] == doctest::Approx(2.0 + g.dot(rt.vertex(i))));
    CHECK((lin.gradients[static_cast<std::size_t>(i)] - g).norm() == 0.0);
  }
  const ErrorFunctionModel e{rt, 1.0};
  const auto ie = sample_information({[&](const Vec& x) { return e.value(x); }, [&](const Vec& x) { return e.gradient(x); }}, rt);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(ie.values[static_cast<std::size_t>(i)]) < 1e-14);
    CHECK(ie.gradients[static_cast<std::size_t>(i)].norm() < 1e-14);
  }
}

TEST_CASE("linear reproduction and zero data") {
  Rng rng(41);
  for (int d = 1; d <= 5; ++d) {
    const auto s = random_simplex(d, rng);
    const auto f = affine(rng.normal(), rng.normal_vector(d));
    const auto info = sample_information(f, s);
    InformationVector zero{std::vector<double>(static_cast<std::size_t>(d + 1), 0.0),
                           std::vector<Vec>(static_cast<std::size_t>(d + 1), Vec::Zero(d))};
    for (int rep = 0; rep < 200; ++rep) {
      const Vec w = random_point_near(s, rng, 2.0);
      CHECK(std::abs(evaluate_spline(s, info, w) - f.value(w)) <= 1e-10 * (1 + w.norm()));
      CHECK(evaluate_spline(s, zero, w) == 0.0);
    }
  }
  const auto rt = right_triangle();
  CHECK_THROWS_AS(evaluate_spline(rt, random_info(3, rng), vec({0, 0})), Error);
}

TEST_CASE("one-dimensional three-piece formula") {
  for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{-3.0, 7.0}}) {
    const auto s = make_simplex({{a}, {b}});
    const HermiteData1D data{1.5, -0.25, 2.0, 0.75};
    const auto info = make_information({data.fa, data.fb}, {vec({data.dfa}), vec({data.dfb})});
    double worst_p = 0.0;
    double worst_e = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double t = a + (b - a) * k / 1000.0;
      worst_p = std::max(worst_p, std::abs(evaluate_spline(s, info, vec({t})) - bojanov_1d(data, t, a, b)));
      worst_e = std::max(worst_e, std::abs(error_value(s, vec({t})) - euler_phi2_1d(t, a, b)));
    }
    CHECK(worst_p <= 1e-12 * (1 + std::abs(b - a)));
    CHECK(worst_e <= 1e-12 * (1 + (b - a) * (b - a)));
  }
}

TEST_CASE("spline of a quadratic at the centroid of the right triangle") {
  // f = |x - v0|^2 / 2; the centroid w = (2/3, 2/3) lies inside U, so
  // phi(w) = w, with U-weights (2/3, 1/6, 1/6) from w = u0 + (1/6, 1/6).
  // Each term is f_i + grad f_i . (c - v_i) / 2:
  //   i = 0: 0 + 0                     = 0
  //   i = 1: 2 + (2, 0) . (-1/2, 1/2)  = 1
  //   i = 2: 2 + (0, 2) . (1/2, -1/2)  = 1
  // so p_f(w) = 1/6 + 1/6 = 1/3.
  const auto rt = right_triangle();
  const Vec w = vec({2.0 / 3.0, 2.0 / 3.0});
  const Vec oracle_phi = grid_nearest_in_triangle(rt.shrunk_vertices(), w, 1e-3);
  CHECK((oracle_phi - w).norm() <= 2e-3);
  const FunctionWithGradient f{[](const Vec& x) { return 0.5 * x.squaredNorm(); }, [](const Vec& x) { return x; }};
  const double p = evaluate_spline(rt, sample_information(f, rt), w);
  CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // The bound holds: |f - p| = 4/9 - 3/9 = 1/9 <= E(w) = 1/2 - 1/9.
  CHECK(error_value(rt, w) == doctest::Approx(0.5 - 1.0 / 9.0).epsilon(1e-14));
  CHECK(std::abs(f.value(w) - p) <= error_value(rt, w));
}

TEST_CASE("error function at special points") {
  Rng rng(42);
  for (int d = 1; d <= 4; ++d) {
    const auto s = random_cwc_simplex(d, rng);
    const double r2 = s.circumradius() * s.circumradius();
    for (int i = 0; i <= d; ++i) {
      const auto ev = error_function(s, s.vertex(i));
      CHECK(std::abs(ev.value) <= 1e-12 * (1 + r2));
      CHECK(ev.gradient.norm() <= 1e-12 * (1 + s.circumradius()));
      CHECK(error_value(s, s.shrunk_vertex(i)) == doctest::Approx(r2 / 8.0).epsilon(1e-12));
    }
    const auto ec = error_function(s, s.circumcenter());
    CHECK(ec.value == doctest::Approx(r2 / 4.0).epsilon(1e-12));
    CHECK(ec.gradient.norm() <= 1e-12 * (1 + s.circumcenter().norm()));
  }
}

TEST_CASE("region-wise form") {
  Rng rng(43);
  for (int d = 1; d <= 4; ++d) {
    const auto s = random_simplex(d, rng);
    const double r2 = s.circumradius() * s.circumradius();
    for (int rep = 0; rep < 500; ++rep) {
      const Vec x = random_point_near(s, rng, 1.0);
      const auto ev = error_function(s, x);
      const double scale = 1 + r2 + (x - s.circumcenter()).squaredNorm();
      CHECK(ev.agreement <= 1e-10 * scale);
      if (ev.region.size() == 1) {
        const int i = ev.region.indices().front();
        CHECK(ev.regionwise_value == doctest::Approx(0.5 * (x - s.vertex(i)).squaredNorm()).epsilon(1e-10));
      }
      if (ev.region.is_full()) {
        CHECK(ev.regionwise_value ==
              doctest::Approx(r2 / 4.0 - 0.5 * (x - s.circumcenter()).squaredNorm()).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("error function is nonnegative on T") {
  Rng rng(44);
  for (int d = 1; d <= 4; ++d) {
    const auto s = random_cwc_simplex(d, rng);
    for (int rep = 0; rep < 500; ++rep) CHECK(error_value(s, random_point_in(s, rng)) >= -1e-9);
  }
}

TEST_CASE("gradient of the error function") {
  Rng rng(45);
  for (int d = 2; d <= 3; ++d) {
    const auto s = random_simplex(d, rng);
    int used = 0;
    for (int rep = 0; rep < 300; ++rep) {
      const Vec x = random_point_near(s, rng);
      if (!interior_to_cell(s, x, 1e-4)) continue;
      ++used;
      const Vec fd = fd_gradient([&](const Vec& y) { return error_value(s, y); }, x, 1e-5);
      CHECK((fd - error_function(s, x).gradient).cwiseAbs().maxCoeff() <= 1e-6);
    }
    CHECK(used > 250);
  }
}

TEST_CASE("gradient is 1-Lipschitz and an isometry within a cell") {
  Rng rng(46);
  for (int d = 1; d <= 4; ++d) {
    const auto s = random_simplex(d, rng);
    for (int rep = 0; rep < 2500; ++rep) {
      const Vec x = random_point_near(s, rng);
      const Vec y = rep % 2 ? random_point_near(s, rng) : Vec(x + 0.01 * rng.normal_vector(d));
      const auto ex = error_function(s, x);
      const auto ey = error_function(s, y);
      const double dg = (ex.gradient - ey.gradient).norm();
      CHECK(dg <= (x - y).norm() + 1e-12);
      if (ex.region == ey.region) CHECK(std::abs(dg - (x - y).norm()) <= 1e-9);
    }
  }
}

TEST_CASE("interpolation of values and gradients") {
  Rng rng(47);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 1 + rep % 4;
    const auto s = random_simplex(d, rng);
    const auto info = random_info(d, rng);
    const double h = 1e-6;
    for (int i = 0; i <= d; ++i) {
      const auto k = static_cast<std::size_t>(i);
      CHECK(std::abs(evaluate_spline(s, info, s.vertex(i)) - info.values[k]) <= 1e-10);
      for (int axis = 0; axis < d; ++axis) {
        Vec e = Vec::Zero(d);
        e[axis] = h;
        const double fd = (evaluate_spline(s, info, s.vertex(i) + e) - evaluate_spline(s, info, s.vertex(i) - e)) / (2 * h);
        CHECK(std::abs(fd - info.gradients[k][axis]) <= 1e-6);
      }
    }
  }
}

TEST_CASE("continuity across cells") {
  Rng rng(48);
  const auto s = random_simplex(3, rng);
  const auto info = random_info(3, rng);
  double data_scale = 0.0;
  for (int i = 0; i <= 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    data_scale = std::max({data_scale, std::abs(info.values[k]), info.gradients[k].norm()});
  }
  int pairs = 0;
  while (pairs < 1000) {
    Vec lo = random_point_near(s, rng);
    Vec hi = random_point_near(s, rng);
    const auto region = region_of(s, lo);
    if (region_of(s, hi) == region) continue;
    // Bisect down to a pair straddling a cell boundary.
    while ((hi - lo).norm() > 1e-7) {
      const Vec mid = 0.5 * (lo + hi);
      (region_of(s, mid) == region ? lo : hi) = mid;
    }
    CHECK(std::abs(evaluate_spline(s, info, lo) - evaluate_spline(s, info, hi)) <= 1e-6 * (1 + data_scale));
    ++pairs;
  }
}

TEST_CASE("normal derivative vanishes under the hypotheses") {
  const auto acute = make_simplex({{0, 0}, {2, 0}, {0.7, 1.6}});
  // Acuteness from dot products at each vertex.
  for (int i = 0; i < 3; ++i) {
    CHECK((acute.vertex((i + 1) % 3) - acute.vertex(i)).dot(acute.vertex((i + 2) % 3) - acute.vertex(i)) > 0.0);
  }
  REQUIRE(check_nd_hypotheses(acute));
  for (int i = 0; i < 3; ++i) {
    const Vec mid = 0.5 * (acute.vertex((i + 1) % 3) + acute.vertex((i + 2) % 3));
    CHECK(std::abs(normal_derivative(acute, i, mid)) <= 1e-8);
  }

  const auto seg = make_simplex({{-3}, {7}});
  CHECK(std::abs(normal_derivative(seg, 0, vec({7}))) <= 1e-12);
  CHECK(std::abs(normal_derivative(seg, 1, vec({-3}))) <= 1e-12);

  const auto ob = obtuse_triangle();
  CHECK_FALSE(check_nd_hypotheses(ob));
  // Outside the hypotheses the value is reported as-is. The base midpoint
  // (2, 0) lies in the cell of v2, where grad E = x - v2 = (0, -0.5).
  CHECK(region_of(ob, vec({2, 0})) == FaceIndexSet::singleton(2, 3));
  CHECK(normal_derivative(ob, 2, vec({2, 0})) == doctest::Approx(0.5));
  CHECK(check_nd_hypotheses(right_triangle()));

  try {
    normal_derivative(acute, 0, acute.vertex(1));
    FAIL("vertex accepted as a facet interior point");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOnFacet);
  }
  CHECK_THROWS_AS(normal_derivative(acute, 0, vec({0.5, 0.5})), Error);
}

TEST_CASE("one-dimensional formulas") {
  const HermiteData1D zero{0, 0, 0, 0};
  const HermiteData1D data{1.0, 2.0, -0.5, 0.25};
  const double a = -1.0;
  const double b = 3.0;
  const double c = 1.0;
  const double u0 = 0.0;
  for (int k = 0; k <= 20; ++k) CHECK(bojanov_1d(zero, a + 0.2 * k, a, b) == 0.0);
  CHECK(bojanov_1d(data, a, a, b) == doctest::Approx(data.fa));
  CHECK(bojanov_1d(data, u0, a, b) == doctest::Approx(data.fa + data.dfa * (u0 - a)));
  CHECK(bojanov_1d(data, b, a, b) == doctest::Approx(data.fb));
  CHECK(euler_phi2_1d(c, a, b) == doctest::Approx(1.0));  // R = 2
  CHECK(euler_phi2_1d(a, a, b) == 0.0);
  CHECK_THROWS_AS(bojanov_1d(data, 3.5, a, b), Error);
  CHECK_THROWS_AS(euler_phi2_1d(0.0, 1.0, 1.0), Error);
  try {
    euler_phi2_1d(-2.0, a, b);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfInterval);
  }
}

TEST_CASE("empirical error") {
  Rng rng(49);
  const auto s = random_cwc_simplex(3, rng);
  const std::vector<W2Model> zero{make_quadratic(0.0, Vec::Zero(3), Mat::Zero(3, 3))};
  const std::vector<W2Model> extremal{ErrorFunctionModel{s, 1.0}, ErrorFunctionModel{s, -1.0}};
  std::vector<W2Model> quadratics;
  for (int k = 0; k < 200; ++k) quadratics.emplace_back(random_certified_quadratic(3, rng));
  for (int rep = 0; rep < 50; ++rep) {
    const Vec w = random_point_in(s, rng);
    CHECK(empirical_error(s, zero, w) == 0.0);
    CHECK(std::abs(empirical_error(s, extremal, w) - error_value(s, w)) <= 1e-9);
    CHECK(empirical_error(s, quadratics, w) <= error_value(s, w) + 1e-9);
  }
  const std::vector<W2Model> uncertified{CallableModel{affine(0.0, Vec::Zero(3))}};
  try {
    empirical_error(s, uncertified, s.circumcenter());
    FAIL("uncertified model accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidModel);
  }
}
