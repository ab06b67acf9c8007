#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optrec/projection.hpp"
#include "support.hpp"

using namespace optrec;
using namespace optrec::testing;

TEST_CASE("one-dimensional clamp") {
  const auto seg = make_simplex({{0}, {2}});
  const auto p = project_to_shrunk(seg, vec({0}));
  CHECK(p.phi[0] == doctest::Approx(0.5));
  CHECK(p.active_set == FaceIndexSet::singleton(0, 2));
  CHECK(region_of(seg, vec({1.2})) == seg.all_indices());
  CHECK(region_of(seg, vec({5})) == FaceIndexSet::singleton(1, 2));
}

TEST_CASE("vertices project to shrunk vertices") {
  Rng rng(21);
  for (int d = 1; d <= 5; ++d) {
    const auto s = random_simplex(d, rng);
    for (int i = 0; i <= d; ++i) {
      const auto p = project_to_shrunk(s, s.vertex(i));
      CHECK((p.phi - s.shrunk_vertex(i)).norm() <= 1e-12 * (1 + s.vertex(i).norm()));
      CHECK(p.active_set == FaceIndexSet::singleton(i, d + 1));
    }
  }
}

TEST_CASE("right triangle examples") {
  const auto rt = right_triangle();
  // c = (1, 1) sits on the hypotenuse, hence on the edge u1 u2 of U.
  const auto pc = project_to_shrunk(rt, vec({1, 1}));
  CHECK((pc.phi - vec({1, 1})).norm() < 1e-14);
  CHECK(pc.distance < 1e-14);
  CHECK(pc.active_set == FaceIndexSet(std::vector<int>{1, 2}, 3));

  // Interior point of U.
  const auto pi = project_to_shrunk(rt, vec({0.8, 0.8}));
  CHECK(pi.active_set == rt.all_indices());
  CHECK(pi.distance < 1e-14);

  // (10, 10) is equidistant from u1 = (1.5, 0.5) and u2 = (0.5, 1.5), so its
  // nearest point is the edge midpoint (1, 1), not a vertex.
  const auto far = project_to_shrunk(rt, vec({10, 10}));
  const Vec oracle = grid_nearest_in_triangle(rt.shrunk_vertices(), vec({10, 10}), 1e-3);
  CHECK((far.phi - oracle).norm() <= 2e-3);
  CHECK((far.phi - vec({1, 1})).norm() < 1e-12);
  CHECK(far.active_set == FaceIndexSet(std::vector<int>{1, 2}, 3));
  CHECK(far.certificate_max <= 1e-9 * (1 + 200.0));
}

TEST_CASE("projection onto lower-dimensional targets") {
  const std::vector<Vec> seg{vec({0, 0, 0}), vec({2, 0, 0})};
  const auto p = project(vec({1, 3, 4}), seg);
  CHECK((p.phi - vec({1, 0, 0})).norm() < 1e-14);
  CHECK(p.distance == doctest::Approx(5.0));
  CHECK(p.active_set.size() == 2);
  const auto q = project(vec({-1, 1, 0}), seg);
  CHECK(q.phi.norm() < 1e-14);
  CHECK(q.active_set == FaceIndexSet::singleton(0, 2));
  const std::vector<Vec> point{vec({1, 2})};
  CHECK((project(vec({5, 5}), point).phi - vec({1, 2})).norm() == 0.0);
}

TEST_CASE("q points reconstruct x") {
  const auto rt = right_triangle();
  const auto qv = q_points(rt, rt.vertex(1));
  REQUIRE(qv.size() == 1);
  CHECK(qv[0].index == 1);
  CHECK((qv[0].point - rt.vertex(1)).norm() < 1e-14);

  const auto qi = q_points(rt, vec({0.8, 0.7}));
  REQUIRE(qi.size() == 3);
  for (const auto& q : qi) CHECK((q.point - rt.shrunk_vertex(q.index)).norm() < 1e-14);

  Rng rng(22);
  for (int d = 1; d <= 4; ++d) {
    const auto s = random_simplex(d, rng);
    for (int rep = 0; rep < 200; ++rep) {
      const Vec x = 3.0 * rng.normal_vector(d);
      const auto proj = project_to_shrunk(s, x);
      Vec sum = Vec::Zero(d);
      for (const auto& q : q_points(s, x, proj)) sum += proj.weights.weights[q.index] * q.point;
      CHECK((sum - x).norm() <= 1e-10 * (1 + x.norm()));
    }
  }
}

TEST_CASE("certificates") {
  const auto rt = right_triangle();
  const auto& u = rt.shrunk_vertices();
  CHECK(certify(rt.vertex(0), u[0], u) <= 1e-9);
  // (x - y) = (-1.5, -0.5); against z = u0: (-1.5)(-1) + (-0.5)(0) = 1.5.
  CHECK(certify(rt.vertex(0), u[1], u) == doctest::Approx(1.5));
  CHECK(certify(vec({0.8, 0.8}), vec({0.8, 0.8}), u) == 0.0);
  CHECK_THROWS_AS(certify(vec({0, 0}), vec({0, 0}), u), Error);
  try {
    certify(vec({0, 0}), vec({0, 0}), u);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInHull);
  }
}

TEST_CASE("nonexpansive, idempotent and unique") {
  Rng rng(23);
  double worst_gap = -1.0;
  double worst_idem = 0.0;
  double worst_spread = 0.0;
  double worst_cert = 0.0;
  std::vector<Simplex> pool;
  for (int d = 1; d <= 4; ++d) pool.push_back(random_simplex(d, rng));
  for (int rep = 0; rep < 10000; ++rep) {
    const auto& s = pool[static_cast<std::size_t>(rep % 4)];
    const Vec x = random_point_near(s, rng);
    const Vec y = random_point_near(s, rng);
    const auto px = project_to_shrunk(s, x, rep % 10 == 0);
    const auto py = project_to_shrunk(s, y);
    worst_gap = std::max(worst_gap, (px.phi - py.phi).norm() - (x - y).norm());
    worst_idem = std::max(worst_idem, (project_to_shrunk(s, px.phi).phi - px.phi).norm());
    worst_spread = std::max(worst_spread, px.candidate_spread);
    worst_cert = std::max(worst_cert, px.certificate_max / (1 + x.squaredNorm()));
  }
  CHECK(worst_gap <= 1e-12);
  CHECK(worst_idem <= 1e-10);
  CHECK(worst_spread <= 1e-8);
  CHECK(worst_cert <= 1e-9);
}

TEST_CASE("agreement with a brute-force grid on triangles") {
  Rng rng(24);
  for (int rep = 0; rep < 10; ++rep) {
    const auto s = random_simplex(2, rng);
    const Vec x = random_point_near(s, rng, 1.0);
    const Vec oracle = grid_nearest_in_triangle(s.shrunk_vertices(), x, 1e-3);
    CHECK((project_to_shrunk(s, x).phi - oracle).norm() <= 2e-3);
  }
}
