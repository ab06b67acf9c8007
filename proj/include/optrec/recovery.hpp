#pragma once

#include <functional>
#include <vector>

#include "optrec/projection.hpp"
#include "optrec/simplex_geometry.hpp"

namespace optrec {

/// Values f(v_i) and gradients grad f(v_i) at the d+1 vertices.
struct InformationVector {
  std::vector<double> values;
  std::vector<Vec> gradients;

  int dim() const noexcept { return static_cast<int>(values.size()) - 1; }
};

/// Throws ShapeMismatch unless there are d+1 values and d+1 gradients of
/// dimension d, and NonFinite on NaN or infinite entries.
InformationVector make_information(std::vector<double> values, std::vector<Vec> gradients);

struct FunctionWithGradient {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

InformationVector sample_information(const FunctionWithGradient& f, const Simplex& s);

/// p_f(w) = sum_i b_i(phi(w)) [f(v_i) + grad f(v_i) . (w - phi(w) + (c - v_i) / 2)],
/// summed over the active set of phi(w). Defined on all of R^d.
double evaluate_spline(const Simplex& s, const InformationVector& info, const Vec& w);
double evaluate_spline(const Simplex& s, const InformationVector& info, const Vec& w,
                       const ProjectionResult& proj);

struct ErrorEvaluation {
  double value;               // R^2/4 + |x - phi(x)|^2 - |x - c|^2 / 2
  Vec gradient;               // x + c - 2 phi(x)
  FaceIndexSet region;
  double regionwise_value;    // R_I^2/4 - dist(x, H_I)^2 / 2 + dist(x, Q_I)^2 / 2
  double agreement;           // |value - regionwise_value|
};

/// The sharp pointwise error bound and its gradient, evaluated both globally
/// and through the quadratic that holds on the cell of x.
ErrorEvaluation error_function(const Simplex& s, const Vec& x);
ErrorEvaluation error_function(const Simplex& s, const Vec& x, const ProjectionResult& proj);

/// Value of the error function only.
double error_value(const Simplex& s, const Vec& x);
double error_value(const Simplex& s, const Vec& x, const ProjectionResult& proj);

/// True when T contains its circumcenter and every facet contains the
/// orthogonal projection of the opposite vertex. Under these conditions the
/// normal derivative of the error function vanishes on every open facet.
bool check_nd_hypotheses(const Simplex& s);

/// Unit normal of the facet opposite v_i, pointing away from v_i.
Vec facet_normal(const Simplex& s, int opposite);

/// grad E(x) . n for x in the relative interior of the facet opposite v_i.
/// Throws NotOnFacet when x is not there.
double normal_derivative(const Simplex& s, int opposite, const Vec& x);

struct HermiteData1D {
  double fa;
  double fb;
  double dfa;
  double dfb;
};

/// Three-piece optimal recovery on [a, b] from endpoint values and slopes.
double bojanov_1d(const HermiteData1D& data, double t, double a, double b);

/// The Euler spline: sharp error of bojanov_1d on functions with |f''| <= 1.
double euler_phi2_1d(double t, double a, double b);

}  // namespace optrec
