#pragma once
// Executable monotonicity checks for the interface flux plus the independent
// oracles used by the test suite.

#include <cstddef>
#include <string>
#include <vector>

#include "model.hpp"
#include "scheme.hpp"

namespace dfvm {

struct IsotonicityViolation {
  double lambda = 0.0;
  double mu = 0.0;
  int condition = 0;   // 0: d(sigma F)/d lambda < 0, 1: -d(sigma F)/d mu < 0
  double value = 0.0;  // offending finite-difference value
};

struct IsotonicityReport {
  Scheme scheme = Scheme::CE;
  double m = 0.0;
  double p_exp = 0.0;
  double alpha = 0.0;
  double sigma = 1.0;
  double l = 1.0;
  double grid_max = 0.0;
  double grid_step = 0.0;
  double fd_step = 0.0;
  long n_points = 0;
  long n_violations = 0;
  std::vector<IsotonicityViolation> violations;  // capped at max_records
  bool isotone() const { return n_violations == 0; }
};

// Scans lambda, mu over {1e-6, grid_step, 2*grid_step, ..., grid_max} (the
// exact origin is replaced by 1e-6) and tests, by central differences of the
// 1-D fitted flux, that sigma*F is nondecreasing in lambda and nonincreasing
// in mu.  Where the scheme's selector switches inside the stencil, both
// one-sided differences are formed and the smaller one is tested.  Tolerance:
// 1e-10 scaled by the local flux magnitude.
IsotonicityReport check_isotonicity(Scheme scheme, const ModelParams& mp, double sigma, double l,
                                    double grid_max, double grid_step, double fd_step,
                                    std::size_t max_records = 1000);

// Closed-form monotonicity bound for the fully-upwind scheme:
// isotone iff ln((m-1)/m) <= pe <= ln(m/(m-1)); always true for m <= 1.
bool fu_bound(double m, double pe);

// Classical RK4 on du/dt = -E_s*max(u,0)^q over n = ceil(tau/step) equal
// steps, clamped at zero.
double rk4_evap_oracle(double u0, double q, double E_s, double tau, double step);

// Second-order centered discretization of the two-point boundary value
// problem (b*u - a*u')' = 0 on (0, l), u(0) = u_i, u(l) = u_mu, on grid_n
// intervals (>= 1000); returns the constant discrete flux b*u - a*u'.
double local_bvp_oracle(double u_i, double u_mu, double a, double b, double l, int grid_n);

std::string isotonicity_report_json(const IsotonicityReport& rep);

}  // namespace dfvm
