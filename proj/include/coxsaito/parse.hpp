#pragma once

#include "coxsaito/poly.hpp"

#include <string>

namespace coxsaito {

// Reads expressions such as "x1^2 - 3/2*x1*x2 + sqrt(5)*x3". Division is only
// allowed by constants.
Poly parse_poly(const RingPtr& ring, const std::string& text);

}  // namespace coxsaito
