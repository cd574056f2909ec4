#pragma once

#include "model.hpp"
#include "scheme.hpp"

namespace dfvm {

// One interface-flux evaluation with its frozen coefficients.
struct FluxEval {
  double u_bar = 0.0;  // selected interface value
  double a = 0.0;      // diffusion coefficient at u_bar
  double b = 0.0;      // advection coefficient (2-D form carries the n1 factor)
  double pe = 0.0;     // local Peclet number as seen from the querying node
  double value = 0.0;  // flux
  int branch = 0;      // selector state: 0 smooth/near-side, 1 far-side
};

// interface value of the frozen coefficients; pe_candidate only matters for
// the IS selector: pick u_i when exp(pe)*u_i - u_mu >= 0, else u_mu
double interface_value(Scheme scheme, double u_i, double u_mu, double pe_candidate);

// pe = -sigma * l * sin(alpha) / (m - p_exp) * h_eps(u_bar)^p_exp
double peclet_1d(double u_bar, const ModelParams& mp, double sigma, double l, double cell_alpha);

// pe = -n1 * d * sin(alpha) / (m - p_exp) * h_eps(u_bar)^p_exp
double peclet_2d(double u_bar, const ModelParams& mp, double n1, double d, double alpha);

// Scharfetter-Gummel form of the fitted two-point flux with raw coefficients:
//   F = (sigma*a/l) * [B(-pe) u_i - B(pe) u_mu],  pe = sigma*b*l/a.
// Equals the exact flux b*u - a*u' of the constant-coefficient two-point
// boundary value problem on (0,l) with u(0)=u_i, u(l)=u_mu when sigma=+1.
double fitted_flux_raw(double u_i, double u_mu, double a, double b, double l, double sigma);

// 1-D interface flux; sigma = +1 when the cell's local x points toward the
// querying node i. sigma*F is antisymmetric under swapping the two sides.
FluxEval fitted_flux_1d(double u_i, double u_mu, double sigma, double l, double cell_alpha,
                        const ModelParams& mp, Scheme scheme);

// 2-D edge flux as seen from node i; n1 is the x1-component of the unit
// vector from i toward the neighbor; F flips sign from the other endpoint.
FluxEval fitted_flux_2d(double u_i, double u_rho, double n1, double d, double alpha,
                        const ModelParams& mp, Scheme scheme);

}  // namespace dfvm
