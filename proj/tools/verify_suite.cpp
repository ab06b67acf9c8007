#include "verify_suite.hpp"

#include <algorithm>
#include <cmath>

#include "optrec/empirical_error.hpp"
#include "optrec/function_models.hpp"
#include "optrec/projection.hpp"
#include "optrec/random.hpp"
#include "optrec/recovery.hpp"

namespace optrec::cli {

int facet_scan_level(int d, int max_level, double budget) {
  // A facet has d vertices; its lattice of level L has C(L + d - 1, d - 1) points.
  auto count = [d](int level) {
    double c = 1.0;
    for (int k = 1; k <= d - 1; ++k) c = c * (level + k) / k;
    return c;
  };
  int level = max_level;
  while (level > 1 && count(level) > budget) --level;
  return level;
}

namespace {

class Suite {
 public:
  Suite(const Simplex& s, std::uint64_t seed, int samples, DomainMode mode)
      : s_(s), rng_(seed), n_(static_cast<std::size_t>(samples)), mode_(mode) {
    lo_ = hi_ = s.vertex(0);
    for (const auto& v : s.vertices()) {
      lo_ = lo_.cwiseMin(v);
      hi_ = hi_.cwiseMax(v);
    }
    const Vec pad = 0.5 * (hi_ - lo_);
    lo_ -= pad;
    hi_ += pad;
  }

  VerifyReport run() {
    projection_certificate();
    projection_nonexpansive();
    error_bound();
    sharpness();
    interpolation();
    linear_reproduction();
    gradient_identity();
    gradient_lipschitz();
    same_cell_isometry();
    region_formula();
    partition_decomposition();
    normal_derivative_property();
    if (mode_ == DomainMode::SimplexItself) admissibility();
    for (const auto& p : report_.properties) report_.pass = report_.pass && p.pass;
    return std::move(report_);
  }

 private:
  Vec sample_point() {
    if (mode_ == DomainMode::SimplexItself) {
      const Vec b = rng_.dirichlet(s_.vertex_count());
      Vec x = Vec::Zero(s_.dim());
      for (int i = 0; i < s_.vertex_count(); ++i) x += b[i] * s_.vertex(i);
      return x;
    }
    Vec x(s_.dim());
    for (int k = 0; k < s_.dim(); ++k) x[k] = rng_.uniform(lo_[k], hi_[k]);
    return x;
  }

  double scale(const Vec& x) const {
    const double r = s_.circumradius();
    return 1.0 + r * r + (x - s_.circumcenter()).squaredNorm();
  }

  // Cells are convex, so if x +- r e_k share x's region then the ball of
  // radius r / sqrt(d) around x lies inside the cell.
  bool interior_to_cell(const Vec& x, double clearance) const {
    const auto region = region_of(s_, x);
    const double r = clearance * std::sqrt(static_cast<double>(s_.dim()));
    Vec probe = x;
    for (int k = 0; k < s_.dim(); ++k) {
      for (double sign : {-1.0, 1.0}) {
        probe[k] = x[k] + sign * r;
        if (region_of(s_, probe) != region) return false;
      }
      probe[k] = x[k];
    }
    return true;
  }

  void add(std::string name, std::size_t samples, double worst, double tolerance, std::string note = {}) {
    PropertyResult p{std::move(name), samples, worst, tolerance, worst <= tolerance, false, std::move(note)};
    report_.properties.push_back(std::move(p));
  }

  void skip(std::string name, std::string note) {
    report_.properties.push_back({std::move(name), 0, 0.0, 0.0, true, true, std::move(note)});
  }

  void projection_certificate() {
    double worst = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const Vec x = sample_point();
      const auto proj = project_to_shrunk(s_, x);
      worst = std::max(worst, proj.certificate_max / (1.0 + x.squaredNorm()));
    }
    add("projection_certificate", n_, worst, 1e-9, "max_z (x - phi).(z - phi) / (1 + |x|^2)");
  }

  void projection_nonexpansive() {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_; ++k) {
      const Vec x = sample_point();
      const Vec y = sample_point();
      const double gap = (project_to_shrunk(s_, x).phi - project_to_shrunk(s_, y).phi).norm() - (x - y).norm();
      worst = std::max(worst, gap);
    }
    add("projection_nonexpansive", n_, worst, 1e-12, "|phi(x) - phi(y)| - |x - y|");
  }

  void error_bound() {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_; ++k) {
      const W2Model f = random_certified_quadratic(s_.dim(), rng_);
      const Vec w = sample_point();
      const W2Model family[] = {f};
      const double gap = empirical_error(s_, family, w) - error_value(s_, w);
      worst = std::max(worst, gap / scale(w));
    }
    add("error_bound", n_, worst, 1e-9, "(|f(w) - p_f(w)| - E(w)) / scale over certified quadratics");
  }

  void sharpness() {
    const W2Model family[] = {ErrorFunctionModel{s_, 1.0}, ErrorFunctionModel{s_, -1.0}};
    double worst = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const Vec w = sample_point();
      worst = std::max(worst, std::abs(error_value(s_, w) - empirical_error(s_, family, w)) / scale(w));
    }
    add("sharpness", n_, worst, 1e-9, "|E(w) - max_{f = +-E} |f(w) - p_f(w)|| / scale");
  }

  void interpolation() {
    const std::size_t sets = std::min<std::size_t>(n_, 50);
    double worst = 0.0;
    for (std::size_t k = 0; k < sets; ++k) {
      std::vector<double> values;
      std::vector<Vec> gradients;
      for (int i = 0; i < s_.vertex_count(); ++i) {
        values.push_back(rng_.normal());
        gradients.push_back(rng_.normal_vector(s_.dim()));
      }
      const auto info = make_information(std::move(values), std::move(gradients));
      for (int i = 0; i < s_.vertex_count(); ++i) {
        const double err = std::abs(evaluate_spline(s_, info, s_.vertex(i)) - info.values[static_cast<std::size_t>(i)]);
        worst = std::max(worst, err / scale(s_.vertex(i)));
      }
    }
    add("interpolation", sets, worst, 1e-10, "|p_f(v_i) - f(v_i)| / scale for random data");
  }

  void linear_reproduction() {
    double worst = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = rng_.normal();
      const Vec g = rng_.normal_vector(s_.dim());
      const FunctionWithGradient f{[&](const Vec& x) { return a + g.dot(x); }, [&](const Vec&) { return g; }};
      const Vec w = sample_point();
      const double err = std::abs(evaluate_spline(s_, sample_information(f, s_), w) - f.value(w));
      worst = std::max(worst, err / (scale(w) * (1.0 + std::abs(a) + g.norm())));
    }
    add("linear_reproduction", n_, worst, 1e-10, "|p_f(w) - f(w)| for affine f, relative");
  }

  void gradient_identity() {
    const double h = 1e-5;
    double worst = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      const Vec x = sample_point();
      if (!interior_to_cell(x, 1e-4)) continue;
      const Vec fd = fd_gradient([&](const Vec& y) { return error_value(s_, y); }, x, h);
      worst = std::max(worst, (fd - error_function(s_, x).gradient).cwiseAbs().maxCoeff() / std::sqrt(scale(x)));
      ++used;
    }
    add("gradient_identity", used, worst, 1e-6, "central differences (h = 1e-5) vs x + c - 2 phi(x)");
  }

  void gradient_lipschitz() {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_; ++k) {
      const Vec x = sample_point();
      const Vec y = sample_point();
      const double gap = (error_function(s_, x).gradient - error_function(s_, y).gradient).norm() - (x - y).norm();
      worst = std::max(worst, gap / (1.0 + x.norm() + y.norm()));
    }
    add("gradient_lipschitz", n_, worst, 1e-12, "|grad E(x) - grad E(y)| - |x - y|, relative");
  }

  void same_cell_isometry() {
    double worst = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      const Vec x = sample_point();
      Vec dir = rng_.normal_vector(s_.dim());
      dir.normalize();
      const Vec y = x + 1e-2 * s_.circumradius() * rng_.uniform() * dir;
      const auto ex = error_function(s_, x);
      const auto ey = error_function(s_, y);
      if (ex.region != ey.region) continue;
      const double gap = std::abs((ex.gradient - ey.gradient).norm() - (x - y).norm());
      worst = std::max(worst, gap / (1.0 + x.norm() + y.norm()));
      ++used;
    }
    add("same_cell_isometry", used, worst, 1e-9, "||grad E(x) - grad E(y)| - |x - y|| for pairs in one cell");
  }

  void region_formula() {
    double worst = 0.0;
    std::size_t used = 0;
    auto check = [&](const Vec& x) {
      worst = std::max(worst, error_function(s_, x).agreement / scale(x));
      ++used;
    };
    for (std::size_t k = 0; k < n_; ++k) check(sample_point());
    std::string note = "|E(x) - regionwise E(x)| / scale";
    if (is_completely_well_centered(s_)) {
      // Reach every cell through the vertex representation as well.
      const auto faces = all_faces(s_.vertex_count());
      const std::size_t per_face = std::max<std::size_t>(1, n_ / faces.size());
      for (const auto& face : faces) {
        for (std::size_t k = 0; k < per_face; ++k) {
          check(sample_region(s_, face, std::nullopt, std::nullopt, rng_));
        }
      }
      note += "; includes samples from every cell";
    }
    add("region_formula", used, worst, 1e-10, note);
  }

  void partition_decomposition() {
    double worst = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const Vec x = sample_point();
      const auto dec = decompose(s_, x);
      const double sc = scale(x);
      worst = std::max({worst, dec.witness_margin(s_) / std::sqrt(sc), dec.orthogonality_defect(s_) / sc,
                        dec.residual / std::sqrt(sc)});
    }
    add("partition_decomposition", n_, worst, 1e-9, "F_I witness margin, orthogonality and residual");
  }

  void normal_derivative_property() {
    if (!check_nd_hypotheses(s_)) {
      skip("normal_derivative", "hypotheses do not hold for this simplex");
      return;
    }
    double worst = 0.0;
    const int d = s_.dim();
    for (std::size_t k = 0; k < n_; ++k) {
      const int opposite = rng_.uniform_int(0, d);
      const auto facet = s_.all_indices().without(opposite).indices();
      const Vec b = rng_.dirichlet(d);
      Vec x = Vec::Zero(d);
      for (int m = 0; m < d; ++m) x += (b[m] + 0.05) / (1.0 + 0.05 * d) * s_.vertex(facet[static_cast<std::size_t>(m)]);
      worst = std::max(worst, std::abs(normal_derivative(s_, opposite, x)) / std::sqrt(scale(x)));
    }
    add("normal_derivative", n_, worst, 1e-8, "|dE/dn| at facet interior points");
  }

  void admissibility() {
    const int level = facet_scan_level(s_.dim());
    auto scan = scan_facets_for_admissibility(s_, level);
    std::size_t violations = scan.violation_found ? 1 : 0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (!admissibility_at(s_, sample_point(), DomainMode::SimplexItself).ok) ++violations;
    }
    const std::size_t checked = scan.points_checked + n_;
    report_.admissibility = std::move(scan);
    add("admissible_self", checked, static_cast<double>(violations), 0.0,
        "count of points x in T with some q_i(x) outside T; facet scan level " + std::to_string(level));
  }

  const Simplex& s_;
  Rng rng_;
  std::size_t n_;
  DomainMode mode_;
  Vec lo_;
  Vec hi_;
  VerifyReport report_;
};

}  // namespace

VerifyReport run_verification(const Simplex& s, std::uint64_t seed, int samples, DomainMode mode) {
  return Suite(s, seed, samples, mode).run();
}

}  // namespace optrec::cli
