#pragma once

#include <functional>
#include <variant>

#include "optrec/random.hpp"
#include "optrec/recovery.hpp"
#include "optrec/simplex_geometry.hpp"

namespace optrec {

/// f(x) = alpha + g . x + x^T H x / 2 with a certified bound |H|_2 <= 1, which
/// puts f in W^2 of the whole space.
class QuadraticModel {
 public:
  double value(const Vec& x) const { return alpha_ + g_.dot(x) + 0.5 * x.dot(h_ * x); }
  Vec gradient(const Vec& x) const { return g_ + h_ * x; }

  double alpha() const noexcept { return alpha_; }
  const Vec& linear() const noexcept { return g_; }
  const Mat& hessian() const noexcept { return h_; }
  double spectral_bound() const noexcept { return spectral_bound_; }
  int dim() const noexcept { return static_cast<int>(g_.size()); }

 private:
  QuadraticModel(double alpha, Vec g, Mat h, double bound)
      : alpha_(alpha), g_(std::move(g)), h_(std::move(h)), spectral_bound_(bound) {}
  friend QuadraticModel make_quadratic(double alpha, Vec g, Mat h);

  double alpha_;
  Vec g_;
  Mat h_;
  double spectral_bound_;
};

/// Throws NotSymmetric when |H - H^T| exceeds 1e-12 anywhere and
/// HessianTooLarge unless the spectral certification passes: either the
/// Gershgorin bound is <= 1, or 200 shifted power-iteration steps give
/// <= 1 - 1e-9 while Gershgorin stays <= 1 + 1e-6.
QuadraticModel make_quadratic(double alpha, Vec g, Mat h);

double gershgorin_bound(const Mat& h);
/// Rayleigh-quotient estimate of max |eigenvalue| from shifted power
/// iteration on H and -H.
double power_spectral_estimate(const Mat& h, int iterations = 200);

/// sign * E for the error function of `simplex`; a member of W^2 with zero
/// information vector.
struct ErrorFunctionModel {
  Simplex simplex;
  double sign = 1.0;

  double value(const Vec& x) const { return sign * error_value(simplex, x); }
  Vec gradient(const Vec& x) const { return sign * error_function(simplex, x).gradient; }
};

/// Arbitrary user function. Never certified, so the bound checks refuse it.
struct CallableModel {
  FunctionWithGradient f;

  double value(const Vec& x) const { return f.value(x); }
  Vec gradient(const Vec& x) const { return f.gradient(x); }
};

using W2Model = std::variant<QuadraticModel, ErrorFunctionModel, CallableModel>;

double model_value(const W2Model& m, const Vec& x);
Vec model_gradient(const W2Model& m, const Vec& x);
bool is_certified(const W2Model& m);
FunctionWithGradient as_function(const W2Model& m);

/// Central differences per coordinate. Throws InvalidArgument unless h > 0.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h);

/// Random certified quadratic. Alternates between a dense symmetric Hessian
/// scaled to a random Gershgorin bound in [0.2, 1] and a diagonal Hessian
/// with entries +-1, where the class bound is attained.
QuadraticModel random_certified_quadratic(int d, Rng& rng, double linear_scale = 1.0);

}  // namespace optrec
