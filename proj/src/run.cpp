#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "errors.hpp"
#include "sim_io.hpp"
#include "solver.hpp"

namespace dfvm {

namespace {

std::string snapshot_name(long step) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "snapshot_%06ld.csv", step);
  return buf;
}

}  // namespace

std::vector<double> expand_initial(const InitialCondition& ic, const std::vector<double>& x,
                                   int n_nodes) {
  if (ic.kind == "constant") return std::vector<double>(static_cast<std::size_t>(n_nodes), ic.value);
  if (ic.kind == "file") return load_node_values(ic.path, n_nodes);
  if (static_cast<int>(x.size()) != n_nodes)
    throw ConfigError("config: initial profile '" + ic.kind + "' needs node coordinates");
  std::vector<double> u(static_cast<std::size_t>(n_nodes), ic.background);
  if (ic.kind == "step") {
    for (int i = 0; i < n_nodes; ++i)
      if (x[static_cast<std::size_t>(i)] >= ic.lo && x[static_cast<std::size_t>(i)] <= ic.hi)
        u[static_cast<std::size_t>(i)] = ic.value;
  } else if (ic.kind == "hump") {
    for (int i = 0; i < n_nodes; ++i) {
      const double s = (x[static_cast<std::size_t>(i)] - ic.center) / ic.width;
      if (std::abs(s) < 1.0) {
        const double w = (1.0 - s * s) * (1.0 - s * s);
        u[static_cast<std::size_t>(i)] = ic.background + (ic.value - ic.background) * w;
      }
    }
  } else {
    throw ConfigError("config: initial.kind: unknown profile '" + ic.kind + "'");
  }
  return u;
}

RunSummary execute_run(const RunConfig& cfg) {
  namespace fs = std::filesystem;

  std::optional<Simulation> sim;
  std::vector<double> xcoord;
  if (cfg.mesh_kind == "1d-graph") {
    const GraphMesh mesh = load_graph_mesh(cfg.mesh_path);
    if (mesh.has_coords())
      for (int i = 0; i < mesh.n_nodes(); ++i) xcoord.push_back(mesh.node_coord(i));
    sim.emplace(mesh, cfg.model, cfg.scheme);
  } else if (cfg.mesh_kind == "2d-tri") {
    const TriMesh mesh = load_tri_mesh(cfg.mesh_path);
    for (int i = 0; i < mesh.n_points(); ++i) xcoord.push_back(mesh.point(i)[0]);
    sim.emplace(mesh, cfg.model, cfg.scheme);
  } else {
    throw ConfigError("config: mesh.kind: must be one of 1d-graph|2d-tri");
  }
  sim->set_theta(cfg.theta);

  std::vector<double> u0 = expand_initial(cfg.initial, xcoord, sim->n_nodes());
  if (!cfg.dirichlet.empty()) {
    std::vector<int> nodes;
    std::map<int, double> values;
    for (const DirichletEntry& e : cfg.dirichlet) {
      if (e.node >= sim->n_nodes())
        throw ConfigError("config: boundary.dirichlet: node " + std::to_string(e.node) +
                          " out of range for this mesh");
      nodes.push_back(e.node);
      values[e.node] = e.value;
      u0[static_cast<std::size_t>(e.node)] = e.value;
    }
    sim->set_dirichlet(std::move(nodes),
                       [values](int node, double) { return values.at(node); });
  }
  sim->set_initial(std::move(u0));

  fs::create_directories(cfg.output_dir);
  const fs::path outdir(cfg.output_dir);
  write_snapshot_csv((outdir / snapshot_name(0)).string(), 0.0, sim->u());

  // whole steps of dt, plus one remainder step when t_end is not a multiple
  const long n_full = static_cast<long>(std::floor(cfg.t_end / cfg.dt + 1e-9));
  double rem = cfg.t_end - static_cast<double>(n_full) * cfg.dt;
  if (rem <= 1e-12 * cfg.dt) rem = 0.0;

  RunSummary summary;
  summary.output_dir = cfg.output_dir;
  summary.mass_initial = sim->mass();
  double min_u = *std::min_element(sim->u().begin(), sim->u().end());
  const double max_u0 = *std::max_element(sim->u().begin(), sim->u().end());

  long last_written = 0;
  auto take_step = [&](double dt) {
    try {
      sim->step(dt);
    } catch (const std::exception& e) {
      throw SolverError("solver: step " + std::to_string(sim->step_count() + 1) + " failed: " +
                        e.what());
    }
  };
  for (long k = 1; k <= n_full; ++k) {
    take_step(cfg.dt);
    if (k % cfg.output_every == 0) {
      write_snapshot_csv((outdir / snapshot_name(k)).string(), sim->time(), sim->u());
      last_written = k;
    }
  }
  if (rem > 0.0) take_step(rem);
  if (sim->step_count() > last_written)
    write_snapshot_csv((outdir / snapshot_name(sim->step_count())).string(), sim->time(),
                       sim->u());

  std::vector<StepAudit> rows;
  rows.reserve(sim->audit().size() + 1);
  StepAudit first;
  first.step = 0;
  first.t = 0.0;
  first.mass = summary.mass_initial;
  first.min_u = min_u;
  first.max_u = max_u0;
  rows.push_back(first);
  for (const StepAudit& r : sim->audit()) rows.push_back(r);
  write_audit_csv((outdir / "audit.csv").string(), rows);

  for (const StepAudit& r : sim->audit()) {
    min_u = std::min(min_u, r.min_u);
    if (!r.dominance_ok) summary.any_dominance_violation = true;
  }
  summary.steps = sim->step_count();
  summary.t_final = sim->time();
  summary.mass_final = sim->mass();
  summary.min_u_overall = min_u;
  return summary;
}

}  // namespace dfvm
