#include "flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bernoulli.hpp"

namespace dfvm {

namespace {

// IS selector: sign of exp(pe)*u_i - u_mu, guarded so that huge pe cannot
// produce inf*0
bool is_picks_near(double u_i, double u_mu, double pe) {
  if (u_i == 0.0) return -u_mu >= 0.0;
  return std::exp(std::min(pe, 700.0)) * u_i - u_mu >= 0.0;
}

// shared kernel: select u_bar, freeze coefficients, evaluate the fitted flux
// with pe_pre * sin(alpha)/(m-p) * h^p as the Peclet number and
// flux = pref_a/len * [B(-pe) u_i - B(pe) u_mu], pref_a supplied by caller
FluxEval eval_interface(double u_i, double u_mu, double pe_pre, double len, double cell_alpha,
                        const ModelParams& mp, Scheme scheme, double dir) {
  const double mp_diff = mp.m - mp.p_exp;
  const double s = std::sin(cell_alpha);
  auto peclet = [&](double u_bar) {
    return pe_pre * s / mp_diff * std::pow(regularize(u_bar, mp.epsilon), mp.p_exp);
  };

  FluxEval fe;
  double pe_cand = 0.0;
  if (scheme == Scheme::IS) pe_cand = peclet(std::max(u_i, u_mu));
  fe.u_bar = interface_value(scheme, u_i, u_mu, pe_cand);
  fe.a = diffusion_coefficient(fe.u_bar, mp);
  fe.pe = peclet(fe.u_bar);
  fe.value = dir * fe.a / len * (bernoulli(-fe.pe) * u_i - bernoulli(fe.pe) * u_mu);
  switch (scheme) {
    case Scheme::CE: fe.branch = 0; break;
    case Scheme::FU: fe.branch = (u_i >= u_mu) ? 0 : 1; break;
    case Scheme::IS: fe.branch = is_picks_near(u_i, u_mu, pe_cand) ? 0 : 1; break;
  }
  return fe;
}

}  // namespace

double interface_value(Scheme scheme, double u_i, double u_mu, double pe_candidate) {
  switch (scheme) {
    case Scheme::CE: return 0.5 * (u_i + u_mu);
    case Scheme::FU: return std::max(u_i, u_mu);
    case Scheme::IS: return is_picks_near(u_i, u_mu, pe_candidate) ? u_i : u_mu;
  }
  return u_i;
}

double peclet_1d(double u_bar, const ModelParams& mp, double sigma, double l, double cell_alpha) {
  return -sigma * l * std::sin(cell_alpha) / (mp.m - mp.p_exp) *
         std::pow(regularize(u_bar, mp.epsilon), mp.p_exp);
}

double peclet_2d(double u_bar, const ModelParams& mp, double n1, double d, double alpha) {
  return -n1 * d * std::sin(alpha) / (mp.m - mp.p_exp) *
         std::pow(regularize(u_bar, mp.epsilon), mp.p_exp);
}

double fitted_flux_raw(double u_i, double u_mu, double a, double b, double l, double sigma) {
  const double pe = sigma * b * l / a;
  return sigma * a / l * (bernoulli(-pe) * u_i - bernoulli(pe) * u_mu);
}

FluxEval fitted_flux_1d(double u_i, double u_mu, double sigma, double l, double cell_alpha,
                        const ModelParams& mp, Scheme scheme) {
  if (!(l > 0.0)) throw std::invalid_argument("flux: cell length must be positive");
  if (sigma != 1.0 && sigma != -1.0) throw std::invalid_argument("flux: sigma must be +1 or -1");
  // pe = -sigma*l*sin(alpha)/(m-p)*h^p; prefactor sigma*a/l
  FluxEval fe = eval_interface(u_i, u_mu, -sigma * l, l, cell_alpha, mp, scheme, sigma);
  fe.b = advection_coefficient(fe.u_bar, mp, cell_alpha);
  return fe;
}

FluxEval fitted_flux_2d(double u_i, double u_rho, double n1, double d, double alpha,
                        const ModelParams& mp, Scheme scheme) {
  if (!(d > 0.0)) throw std::invalid_argument("flux: node distance must be positive");
  if (!(std::abs(n1) <= 1.0)) throw std::invalid_argument("flux: |n1| must be <= 1");
  // pe = -n1*d*sin(alpha)/(m-p)*h^p; prefactor a/d
  FluxEval fe = eval_interface(u_i, u_rho, -n1 * d, d, alpha, mp, scheme, 1.0);
  fe.b = advection_coefficient(fe.u_bar, mp, alpha) * n1;
  return fe;
}

}  // namespace dfvm
