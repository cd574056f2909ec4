#include "evaporation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfvm {

double evap_phi(double u, double tau, double q, double E_s) {
  if (!(u >= 0.0)) throw std::invalid_argument("evaporation: phi requires u >= 0");
  if (q == 1.0) throw std::invalid_argument("evaporation: phi undefined at q = 1");
  return std::pow(u, 1.0 - q) - (1.0 - q) * E_s * tau;
}

double evap_exact(double u, double tau, double q, double E_s) {
  if (!(u >= 0.0)) throw std::invalid_argument("evaporation: u must be >= 0");
  if (!(tau >= 0.0)) throw std::invalid_argument("evaporation: tau must be >= 0");
  if (!(q > 0.0)) throw std::invalid_argument("evaporation: q must be > 0");
  if (!(E_s >= 0.0)) throw std::invalid_argument("evaporation: E_s must be >= 0");

  if (E_s == 0.0 || tau == 0.0) return u;
  if (q == 1.0) return u * std::exp(-E_s * tau);
  if (u == 0.0) return 0.0;  // absorbing state for every q

  const double f = evap_phi(u, tau, q, E_s);
  if (q < 1.0 && f <= 0.0) return 0.0;  // extinct
  const double out = std::pow(f, 1.0 / (1.0 - q));
  // the exact solution never exceeds u; clip the last-ulp rounding overshoot
  return std::clamp(out, 0.0, u);
}

void apply_evaporation(std::span<double> u, double tau, double q, double E_s) {
  if (E_s == 0.0 || tau == 0.0) return;
  // non-isotone schemes can leave transient negatives; evaporation is
  // undefined there, so such entries pass through untouched
  for (double& v : u)
    if (v >= 0.0) v = evap_exact(v, tau, q, E_s);
}

}  // namespace dfvm
