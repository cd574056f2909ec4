#pragma once
// Drives one configured run end to end: load mesh, expand the initial
// profile, march to t_end, write snapshots and the audit log.

#include <string>
#include <vector>

#include "config.hpp"

namespace dfvm {

struct RunSummary {
  long steps = 0;
  double t_final = 0.0;
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double min_u_overall = 0.0;
  bool any_dominance_violation = false;
  std::string output_dir;
};

// Expands the configured initial condition over the given node x-coordinates
// (x_1 for 2-D meshes).  Profile kinds other than constant/file require
// coordinates.
std::vector<double> expand_initial(const InitialCondition& ic, const std::vector<double>& x,
                                   int n_nodes);

RunSummary execute_run(const RunConfig& cfg);

}  // namespace dfvm
