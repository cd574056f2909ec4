#include "sim_io.hpp"

#include <cstdio>
#include <fstream>

#include "errors.hpp"

namespace dfvm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_snapshot_csv(const std::string& path, double t, const std::vector<double>& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("io: cannot open " + path + " for writing");
  out << "time,node,u\n";
  const std::string ts = format_double(t);
  for (std::size_t i = 0; i < u.size(); ++i)
    out << ts << ',' << i << ',' << format_double(u[i]) << '\n';
  out.flush();
  if (!out) throw IoError("io: failed writing " + path);
}

void write_audit_csv(const std::string& path, const std::vector<StepAudit>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("io: cannot open " + path + " for writing");
  out << "step,time,mass,min_u,max_u,dominance_ok\n";
  for (const StepAudit& r : rows)
    out << r.step << ',' << format_double(r.t) << ',' << format_double(r.mass) << ','
        << format_double(r.min_u) << ',' << format_double(r.max_u) << ','
        << (r.dominance_ok ? 1 : 0) << '\n';
  out.flush();
  if (!out) throw IoError("io: failed writing " + path);
}

}  // namespace dfvm
