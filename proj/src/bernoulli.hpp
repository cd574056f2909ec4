#pragma once

#include <cmath>

namespace dfvm {

// B(x) = x / (e^x - 1), the exponential-fitting weight.
// Near zero the quotient is 0/0; a short Maclaurin series keeps full accuracy.
// Identities used throughout: B(0) = 1, B(-x) = B(x) + x.
inline double bernoulli(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - 0.5 * x + x2 / 12.0 - x2 * x2 / 720.0;
  }
  return x / std::expm1(x);
}

}  // namespace dfvm
