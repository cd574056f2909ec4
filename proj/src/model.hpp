#pragma once

namespace dfvm {

// Nonlinearity/physics parameters of the regularized equation
//   u_t = ((m-p) h^(m-p-1) u_x)_x + sin(alpha) (h^(m-1) u)_x - E_s u^q,
// h = h_eps(u) = sqrt(u^2 + eps^2).
// The capillary exponent is named p_exp: plain p is reserved for the local
// Peclet number.
struct ModelParams {
  double m = 2.0;
  double p_exp = 0.0;
  double q = 1.0;
  double E_s = 0.0;
  double alpha = 0.0;  // default inclination [rad]; graph cells may override
  double epsilon = 1e-10;
};

// throws std::invalid_argument naming the offending field
void validate(const ModelParams& mp);

// dimensional reference scales used only by the nondimensionalization map
// and the diagnostic constitutive relations
struct PhysicalScales {
  double D_s = 1.0;      // saturated diffusivity
  double K_s = 1.0;      // saturated permeability
  double theta_s = 0.9;  // maximum water content
  double theta_r = 0.0;  // minimum water content
  double E_s_dim = 0.0;  // dimensional evaporation coefficient
};

void validate(const PhysicalScales& sc);

// h_eps(u) = sqrt(u^2 + eps^2); strictly positive, >= eps, even in u
double regularize(double u, double epsilon);

// a(ubar) = (m - p_exp) * h_eps(ubar)^(m - p_exp - 1) > 0
double diffusion_coefficient(double u_bar, const ModelParams& mp);

// b(ubar) = -sin(cell_alpha) * h_eps(ubar)^(m - 1)
double advection_coefficient(double u_bar, const ModelParams& mp, double cell_alpha);

struct NonDim {
  double t_tilde;
  double x_tilde;
  double E_s_tilde;
};

// t~ = K^2 (m-p)/(D th^2) t,  x~ = K (m-p)/(D th) x,  E~ = E_dim / t-scale
NonDim nondimensionalize(const PhysicalScales& sc, const ModelParams& mp, double t, double x);

// diagnostics only; the solver never evaluates these
double pressure_head(double u, const PhysicalScales& sc, const ModelParams& mp);
double permeability(double u, const PhysicalScales& sc, const ModelParams& mp);

}  // namespace dfvm
