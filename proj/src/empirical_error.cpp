#include "optrec/empirical_error.hpp"

#include <algorithm>
#include <cmath>

namespace optrec {

double empirical_error(const Simplex& s, std::span<const W2Model> family, const Vec& w) {
  for (const auto& m : family) {
    if (!is_certified(m)) throw Error(ErrorKind::InvalidModel, "family member is not certified to lie in W^2");
  }
  const auto proj = project_to_shrunk(s, w);
  double worst = 0.0;
  for (const auto& m : family) {
    const auto info = sample_information(as_function(m), s);
    worst = std::max(worst, std::abs(model_value(m, w) - evaluate_spline(s, info, w, proj)));
  }
  return worst;
}

}  // namespace optrec
