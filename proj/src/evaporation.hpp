#pragma once

#include <span>

namespace dfvm {

// phi(u, tau) = u^(1-q) - (1-q) E_s tau, the separable-ODE first integral of
// du/dt = -E_s u^q. Only meaningful for q != 1 (q = 1 decays exponentially).
double evap_phi(double u, double tau, double q, double E_s);

// Exact substep integrator for du/dt = -E_s u^q over [0, tau]:
//   q = 1     : u exp(-E_s tau)
//   0 < q < 1 : max{0, phi}^(1/(1-q))  -- hits zero at t* = u^(1-q)/((1-q) E_s)
//   q > 1     : phi^(1/(1-q))
// Result is always in [0, u]; E_s = 0 or tau = 0 is the identity.
double evap_exact(double u, double tau, double q, double E_s);

// nodewise application (each entry is independent); entries < 0 pass through
void apply_evaporation(std::span<double> u, double tau, double q, double E_s);

}  // namespace dfvm
