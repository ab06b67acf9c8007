#pragma once

#include <span>

#include "optrec/function_models.hpp"
#include "optrec/recovery.hpp"

namespace optrec {

/// max over the family of |f(w) - p_f(w)|, each p_f built from the member's
/// own information vector. A lower estimate of the worst-case error at w,
/// bounded above by the error function. Throws InvalidModel if a member is not
/// certified to lie in W^2.
double empirical_error(const Simplex& s, std::span<const W2Model> family, const Vec& w);

}  // namespace optrec
