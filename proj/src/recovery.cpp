#include "optrec/recovery.hpp"

#include <cmath>
#include <sstream>

namespace optrec {

InformationVector make_information(std::vector<double> values, std::vector<Vec> gradients) {
  if (values.size() < 2 || gradients.size() != values.size()) {
    throw Error(ErrorKind::ShapeMismatch, "need d+1 values and d+1 gradients");
  }
  const auto d = static_cast<Eigen::Index>(values.size()) - 1;
  for (const auto& g : gradients) {
    if (g.size() != d) {
      std::ostringstream msg;
      msg << "gradient of dimension " << g.size() << ", expected " << d;
      throw Error(ErrorKind::ShapeMismatch, msg.str());
    }
    if (!g.allFinite()) throw Error(ErrorKind::NonFinite, "gradient entries must be finite");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "values must be finite");
  }
  return {std::move(values), std::move(gradients)};
}

InformationVector sample_information(const FunctionWithGradient& f, const Simplex& s) {
  std::vector<double> values;
  std::vector<Vec> gradients;
  for (const auto& v : s.vertices()) {
    values.push_back(f.value(v));
    gradients.push_back(f.gradient(v));
  }
  return make_information(std::move(values), std::move(gradients));
}

double evaluate_spline(const Simplex& s, const InformationVector& info, const Vec& w) {
  return evaluate_spline(s, info, w, project_to_shrunk(s, w));
}

double evaluate_spline(const Simplex& s, const InformationVector& info, const Vec& w,
                       const ProjectionResult& proj) {
  if (info.dim() != s.dim()) throw Error(ErrorKind::ShapeMismatch, "information vector does not match the simplex");
  const Vec shift = w - proj.phi;
  double sum = 0.0;
  for (int i : proj.active_set.indices()) {
    const auto k = static_cast<std::size_t>(i);
    const Vec step = shift + 0.5 * (s.circumcenter() - s.vertex(i));
    sum += proj.weights.weights[i] * (info.values[k] + info.gradients[k].dot(step));
  }
  return sum;
}

double error_value(const Simplex& s, const Vec& x) { return error_value(s, x, project_to_shrunk(s, x)); }

double error_value(const Simplex& s, const Vec& x, const ProjectionResult& proj) {
  const double r = s.circumradius();
  return 0.25 * r * r + (x - proj.phi).squaredNorm() - 0.5 * (x - s.circumcenter()).squaredNorm();
}

ErrorEvaluation error_function(const Simplex& s, const Vec& x) {
  return error_function(s, x, project_to_shrunk(s, x));
}

ErrorEvaluation error_function(const Simplex& s, const Vec& x, const ProjectionResult& proj) {
  ErrorEvaluation out{error_value(s, x, proj), x + s.circumcenter() - 2.0 * proj.phi, proj.active_set, 0.0, 0.0};
  const auto face = face_geometry(s, proj.active_set);
  const double to_equidistant = face.distance_to_equidistant(x);
  const double to_hull = face.distance_to_hull(x);
  out.regionwise_value =
      0.25 * face.radius * face.radius - 0.5 * to_equidistant * to_equidistant + 0.5 * to_hull * to_hull;
  out.agreement = std::abs(out.value - out.regionwise_value);
  return out;
}

bool check_nd_hypotheses(const Simplex& s) {
  const double eps = s.eps_bary();
  if (barycentric(s, s.circumcenter(), Frame::T).min_weight() < -eps) return false;
  for (int i = 0; i < s.vertex_count(); ++i) {
    const auto facet = select(s.vertices(), s.all_indices().without(i).indices());
    // Barycentric weights in the facet frame describe the orthogonal
    // projection of v_i onto the facet hyperplane.
    if (barycentric(s.vertex(i), facet).min_weight() < -eps) return false;
  }
  return true;
}

Vec facet_normal(const Simplex& s, int opposite) {
  const auto facet = face_geometry(s, s.all_indices().without(opposite));
  Vec n = facet.equidistant_basis.col(0);
  if (n.dot(s.vertex(opposite) - facet.center) > 0.0) n = -n;
  return n;
}

double normal_derivative(const Simplex& s, int opposite, const Vec& x) {
  if (opposite < 0 || opposite >= s.vertex_count()) throw Error(ErrorKind::InvalidArgument, "facet index");
  const auto bc = barycentric(s, x, Frame::T);
  const double eps = s.eps_bary();
  for (int k = 0; k < s.vertex_count(); ++k) {
    const double w = bc.weights[k];
    const bool ok = k == opposite ? std::abs(w) <= eps : w > eps;
    if (!ok) throw Error(ErrorKind::NotOnFacet, "point is not in the relative interior of the facet");
  }
  return error_function(s, x).gradient.dot(facet_normal(s, opposite));
}

namespace {

void check_interval(double t, double a, double b) {
  if (!(a < b) || !(t >= a && t <= b)) {
    throw Error(ErrorKind::OutOfInterval, "need a < b and t in [a, b]");
  }
}

}  // namespace

double bojanov_1d(const HermiteData1D& data, double t, double a, double b) {
  check_interval(t, a, b);
  const double c = 0.5 * (a + b);
  const double u0 = 0.5 * (a + c);
  const double u1 = 0.5 * (b + c);
  if (t <= u0) return data.fa + data.dfa * (t - a);
  if (t >= u1) return data.fb + data.dfb * (t - b);
  const double b0 = (u1 - t) / (u1 - u0);
  const double b1 = (t - u0) / (u1 - u0);
  return b0 * (data.fa + data.dfa * (u0 - a)) + b1 * (data.fb + data.dfb * (u1 - b));
}

double euler_phi2_1d(double t, double a, double b) {
  check_interval(t, a, b);
  const double c = 0.5 * (a + b);
  const double u0 = 0.5 * (a + c);
  const double u1 = 0.5 * (b + c);
  const double r = c - a;
  if (t <= u0) return 0.5 * (t - a) * (t - a);
  if (t >= u1) return 0.5 * (t - b) * (t - b);
  return 0.25 * r * r - 0.5 * (t - c) * (t - c);
}

}  // namespace optrec
