#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "flux.hpp"

namespace dfvm {

namespace {

constexpr double kGridFloor = 1e-6;  // stands in for the exact origin

// finite-difference slope of sgn*F along one argument; falls back to the
// smaller one-sided slope when the scheme's branch switches inside the stencil
double fd_slope(const FluxEval& fp, const FluxEval& fm, double f0, double sgn, double d) {
  if (fp.branch == fm.branch) return sgn * (fp.value - fm.value) / (2.0 * d);
  const double dplus = sgn * (fp.value - f0) / d;
  const double dminus = sgn * (f0 - fm.value) / d;
  return std::min(dplus, dminus);
}

}  // namespace

IsotonicityReport check_isotonicity(Scheme scheme, const ModelParams& mp, double sigma, double l,
                                    double grid_max, double grid_step, double fd_step,
                                    std::size_t max_records) {
  validate(mp);
  if (!(grid_max > 0.0) || !(grid_step > 0.0) || grid_step > grid_max)
    throw std::invalid_argument("verify: grid must satisfy 0 < step <= max");
  if (!(fd_step > 0.0)) throw std::invalid_argument("verify: fd_step must be positive");

  IsotonicityReport rep;
  rep.scheme = scheme;
  rep.m = mp.m;
  rep.p_exp = mp.p_exp;
  rep.alpha = mp.alpha;
  rep.sigma = sigma;
  rep.l = l;
  rep.grid_max = grid_max;
  rep.grid_step = grid_step;
  rep.fd_step = fd_step;

  std::vector<double> grid;
  const long k_max = static_cast<long>(std::floor(grid_max / grid_step + 1e-9));
  grid.reserve(static_cast<std::size_t>(k_max) + 1);
  for (long k = 0; k <= k_max; ++k) grid.push_back(k == 0 ? kGridFloor : k * grid_step);

  auto flux = [&](double lam, double mu) {
    return fitted_flux_1d(lam, mu, sigma, l, mp.alpha, mp, scheme);
  };
  auto record = [&](double lam, double mu, int cond, double val) {
    ++rep.n_violations;
    if (rep.violations.size() < max_records)
      rep.violations.push_back(IsotonicityViolation{lam, mu, cond, val});
  };
  const double d = fd_step;

  for (double lam : grid) {
    for (double mu : grid) {
      ++rep.n_points;
      const double f0 = flux(lam, mu).value;
      {
        const FluxEval fp = flux(lam + d, mu);
        const FluxEval fm = flux(lam - d, mu);
        const double tol =
            1e-10 * std::max({1.0, std::abs(fp.value), std::abs(fm.value)});
        const double val = fd_slope(fp, fm, f0, sigma, d);
        if (val < -tol) record(lam, mu, 0, val);
      }
      {
        const FluxEval fp = flux(lam, mu + d);
        const FluxEval fm = flux(lam, mu - d);
        const double tol =
            1e-10 * std::max({1.0, std::abs(fp.value), std::abs(fm.value)});
        const double val = fd_slope(fp, fm, f0, -sigma, d);
        if (val < -tol) record(lam, mu, 1, val);
      }
    }
  }
  return rep;
}

bool fu_bound(double m, double pe) {
  if (!(m > 0.0) || !std::isfinite(m) || !std::isfinite(pe))
    throw std::invalid_argument("verify: fu_bound needs finite m > 0 and finite pe");
  if (m <= 1.0) return true;
  return std::log((m - 1.0) / m) <= pe && pe <= std::log(m / (m - 1.0));
}

double rk4_evap_oracle(double u0, double q, double E_s, double tau, double step) {
  if (!(u0 >= 0.0)) throw std::invalid_argument("verify: rk4 oracle needs u0 >= 0");
  if (!(q > 0.0)) throw std::invalid_argument("verify: rk4 oracle needs q > 0");
  if (!(E_s >= 0.0)) throw std::invalid_argument("verify: rk4 oracle needs E_s >= 0");
  if (!(tau >= 0.0)) throw std::invalid_argument("verify: rk4 oracle needs tau >= 0");
  if (!(step > 0.0)) throw std::invalid_argument("verify: rk4 oracle needs step > 0");
  if (tau == 0.0 || E_s == 0.0) return u0;

  const long n = static_cast<long>(std::ceil(tau / step));
  const double h = tau / static_cast<double>(n);
  auto f = [&](double u) { return -E_s * std::pow(std::max(u, 0.0), q); };
  double u = u0;
  for (long k = 0; k < n; ++k) {
    const double k1 = f(u);
    const double k2 = f(u + 0.5 * h * k1);
    const double k3 = f(u + 0.5 * h * k2);
    const double k4 = f(u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (u < 0.0) u = 0.0;
  }
  return u;
}

double local_bvp_oracle(double u_i, double u_mu, double a, double b, double l, int grid_n) {
  if (!(a > 0.0)) throw std::invalid_argument("verify: bvp oracle needs a > 0");
  if (!(l > 0.0)) throw std::invalid_argument("verify: bvp oracle needs l > 0");
  if (grid_n < 1000) throw std::invalid_argument("verify: bvp oracle needs grid_n >= 1000");
  if (!std::isfinite(u_i) || !std::isfinite(u_mu) || !std::isfinite(b))
    throw std::invalid_argument("verify: bvp oracle needs finite data");

  const int n = grid_n;
  const double h = l / n;
  // centered scheme for a*u'' - b*u' = 0: lo*u_{j-1} + di*u_j + up*u_{j+1} = 0
  const double lo = a / (h * h) + b / (2.0 * h);
  const double di = -2.0 * a / (h * h);
  const double up = a / (h * h) - b / (2.0 * h);

  // Thomas sweep over interior unknowns u_1 .. u_{n-1}
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);  // modified sup-diagonal
  std::vector<double> r(static_cast<std::size_t>(n), 0.0);  // modified rhs
  double denom = di;
  if (denom == 0.0) throw std::invalid_argument("verify: bvp oracle hit a singular pivot");
  c[1] = up / denom;
  r[1] = (-lo * u_i) / denom;
  for (int j = 2; j <= n - 1; ++j) {
    denom = di - lo * c[static_cast<std::size_t>(j - 1)];
    if (denom == 0.0) throw std::invalid_argument("verify: bvp oracle hit a singular pivot");
    c[static_cast<std::size_t>(j)] = up / denom;
    const double rhs_j = (j == n - 1) ? -up * u_mu : 0.0;
    r[static_cast<std::size_t>(j)] =
        (rhs_j - lo * r[static_cast<std::size_t>(j - 1)]) / denom;
  }
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  u[0] = u_i;
  u[static_cast<std::size_t>(n)] = u_mu;
  u[static_cast<std::size_t>(n - 1)] = r[static_cast<std::size_t>(n - 1)];
  for (int j = n - 2; j >= 1; --j)
    u[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j)] -
                                     c[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j + 1)];

  // midpoint flux of the first interval; the scheme keeps it constant in j
  return b * 0.5 * (u[0] + u[1]) - a * (u[1] - u[0]) / h;
}

std::string isotonicity_report_json(const IsotonicityReport& rep) {
  nlohmann::json j;
  j["scheme"] = to_string(rep.scheme);
  j["m"] = rep.m;
  j["p_exp"] = rep.p_exp;
  j["alpha"] = rep.alpha;
  j["sigma"] = rep.sigma;
  j["l"] = rep.l;
  j["grid"] = {{"max", rep.grid_max}, {"step", rep.grid_step}, {"fd_step", rep.fd_step}};
  j["n_points"] = rep.n_points;
  j["n_violations"] = rep.n_violations;
  j["isotone"] = rep.isotone();
  nlohmann::json viol = nlohmann::json::array();
  for (const IsotonicityViolation& v : rep.violations)
    viol.push_back({{"lambda", v.lambda},
                    {"mu", v.mu},
                    {"condition", v.condition},
                    {"value", v.value}});
  j["violations"] = std::move(viol);
  return j.dump(2);
}

}  // namespace dfvm
