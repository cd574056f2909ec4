#pragma once
// CSV output for snapshots and the mass audit.  Floats are printed with 17
// significant digits so outputs are byte-reproducible.

#include <string>
#include <vector>

#include "solver.hpp"

namespace dfvm {

std::string format_double(double v);  // %.17g

// header "time,node,u", one row per node
void write_snapshot_csv(const std::string& path, double t, const std::vector<double>& u);

// header "step,time,mass,min_u,max_u,dominance_ok" (flag printed as 1/0)
void write_audit_csv(const std::string& path, const std::vector<StepAudit>& rows);

}  // namespace dfvm
