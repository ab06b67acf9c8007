#include "optrec/function_models.hpp"

#include <algorithm>
#include <cmath>

namespace optrec {

double gershgorin_bound(const Mat& h) {
  double bound = 0.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) bound = std::max(bound, h.row(i).cwiseAbs().sum());
  return bound;
}

namespace {

// Largest eigenvalue of a symmetric matrix via power iteration on m + shift I,
// where shift >= |lambda| for every eigenvalue keeps the iteration positive.
double top_eigenvalue(const Mat& m, double shift, int iterations) {
  const auto n = m.rows();
  const Mat shifted = m + shift * Mat::Identity(n, n);
  Vec v = Vec::LinSpaced(n, 1.0, 2.0);
  v.normalize();
  for (int it = 0; it < iterations; ++it) {
    Vec next = shifted * v;
    const double norm = next.norm();
    if (norm == 0.0) break;
    v = next / norm;
  }
  return v.dot(m * v);
}

}  // namespace

double power_spectral_estimate(const Mat& h, int iterations) {
  if (h.rows() == 0) return 0.0;
  const double shift = gershgorin_bound(h);
  const double top = top_eigenvalue(h, shift, iterations);
  const double bottom = -top_eigenvalue(-h, shift, iterations);
  return std::max(std::abs(top), std::abs(bottom));
}

QuadraticModel make_quadratic(double alpha, Vec g, Mat h) {
  if (h.rows() != h.cols() || h.rows() != g.size()) {
    throw Error(ErrorKind::ShapeMismatch, "H must be d x d and g of length d");
  }
  if (!std::isfinite(alpha) || !g.allFinite() || !h.allFinite()) {
    throw Error(ErrorKind::NonFinite, "quadratic coefficients must be finite");
  }
  if (h.size() > 0 && (h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::NotSymmetric, "Hessian is not symmetric");
  }
  Mat sym = 0.5 * (h + h.transpose());
  const double gersh = gershgorin_bound(sym);
  double bound = gersh;
  if (gersh > 1.0) {
    const double power = power_spectral_estimate(sym);
    if (!(power <= 1.0 - 1e-9 && gersh <= 1.0 + 1e-6)) {
      throw Error(ErrorKind::HessianTooLarge, "Hessian spectral norm is not certified <= 1");
    }
    bound = power;
  }
  return QuadraticModel(alpha, std::move(g), std::move(sym), bound);
}

double model_value(const W2Model& m, const Vec& x) {
  return std::visit([&](const auto& f) { return f.value(x); }, m);
}

Vec model_gradient(const W2Model& m, const Vec& x) {
  return std::visit([&](const auto& f) -> Vec { return f.gradient(x); }, m);
}

bool is_certified(const W2Model& m) {
  if (const auto* q = std::get_if<QuadraticModel>(&m)) {
    const Mat& h = q->hessian();
    return q->spectral_bound() <= 1.0 + 1e-12 &&
           (h.size() == 0 || (h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  return std::holds_alternative<ErrorFunctionModel>(m);
}

FunctionWithGradient as_function(const W2Model& m) {
  return {[m](const Vec& x) { return model_value(m, x); }, [m](const Vec& x) { return model_gradient(m, x); }};
}

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  Vec grad(x.size());
  Vec probe = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + h;
    const double fp = f(probe);
    probe[k] = x[k] - h;
    const double fm = f(probe);
    probe[k] = x[k];
    grad[k] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

QuadraticModel random_certified_quadratic(int d, Rng& rng, double linear_scale) {
  const double alpha = rng.normal();
  Vec g = linear_scale * rng.normal_vector(d);
  Mat h(d, d);
  if (rng.uniform() < 0.5) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = rng.normal();
    }
    const double gersh = gershgorin_bound(h);
    if (gersh > 0.0) h *= rng.uniform(0.2, 1.0) / gersh;
    // Rescaling can leave the bound a few ulps above the target.
    while (gershgorin_bound(h) > 1.0) h *= 1.0 - 1e-15;
  } else {
    h.setZero();
    for (int i = 0; i < d; ++i) h(i, i) = rng.uniform() < 0.5 ? -1.0 : 1.0;
  }
  return make_quadratic(alpha, std::move(g), std::move(h));
}

}  // namespace optrec
