#include "model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dfvm {

namespace {
constexpr double kHalfPi = 1.5707963267948966;

void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("model: " + field + " " + why);
}
}  // namespace

void validate(const ModelParams& mp) {
  if (!(std::isfinite(mp.m) && mp.m > 0.0)) fail("m", "must be finite and > 0");
  if (!(std::isfinite(mp.p_exp) && mp.p_exp < mp.m)) fail("p_exp", "must be finite and < m");
  if (!(std::isfinite(mp.q) && mp.q > 0.0)) fail("q", "must be finite and > 0");
  if (!(std::isfinite(mp.E_s) && mp.E_s >= 0.0)) fail("E_s", "must be finite and >= 0");
  if (!(std::isfinite(mp.alpha) && std::abs(mp.alpha) <= kHalfPi))
    fail("alpha", "must lie in [-pi/2, pi/2]");
  if (!(std::isfinite(mp.epsilon) && mp.epsilon > 0.0)) fail("epsilon", "must be finite and > 0");
}

void validate(const PhysicalScales& sc) {
  if (!(std::isfinite(sc.D_s) && sc.D_s > 0.0)) fail("D_s", "must be finite and > 0");
  if (!(std::isfinite(sc.K_s) && sc.K_s > 0.0)) fail("K_s", "must be finite and > 0");
  if (!(std::isfinite(sc.theta_s) && std::isfinite(sc.theta_r) && sc.theta_s > sc.theta_r))
    fail("theta_s", "must exceed theta_r");
  if (!(std::isfinite(sc.E_s_dim) && sc.E_s_dim >= 0.0)) fail("E_s_dim", "must be finite and >= 0");
}

double regularize(double u, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("model: epsilon must be > 0");
  return std::hypot(u, epsilon);
}

double diffusion_coefficient(double u_bar, const ModelParams& mp) {
  const double h = regularize(u_bar, mp.epsilon);
  return (mp.m - mp.p_exp) * std::pow(h, mp.m - mp.p_exp - 1.0);
}

double advection_coefficient(double u_bar, const ModelParams& mp, double cell_alpha) {
  const double h = regularize(u_bar, mp.epsilon);
  return -std::sin(cell_alpha) * std::pow(h, mp.m - 1.0);
}

NonDim nondimensionalize(const PhysicalScales& sc, const ModelParams& mp, double t, double x) {
  validate(sc);
  const double mp_diff = mp.m - mp.p_exp;
  if (mp_diff == 0.0) throw std::invalid_argument("model: m == p_exp degenerates the scale factors");
  const double t_scale = sc.K_s * sc.K_s * mp_diff / (sc.D_s * sc.theta_s * sc.theta_s);
  const double x_scale = sc.K_s * mp_diff / (sc.D_s * sc.theta_s);
  return NonDim{t_scale * t, x_scale * x, sc.E_s_dim / t_scale};
}

double pressure_head(double u, const PhysicalScales& sc, const ModelParams& mp) {
  if (!(u > 0.0)) throw std::invalid_argument("model: pressure_head requires u > 0");
  if (mp.p_exp == 0.0)
    throw std::invalid_argument("model: pressure_head degenerates at p_exp = 0");
  return (sc.theta_s * sc.D_s) / (mp.p_exp * sc.K_s) * (1.0 - std::pow(u, -mp.p_exp));
}

double permeability(double u, const PhysicalScales& sc, const ModelParams& mp) {
  return sc.K_s * std::pow(u, mp.m);
}

}  // namespace dfvm
