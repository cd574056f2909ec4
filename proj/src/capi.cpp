#include "dfvm/dfvm.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "config.hpp"
#include "errors.hpp"
#include "evaporation.hpp"
#include "bernoulli.hpp"
#include "flux.hpp"
#include "graph_mesh.hpp"
#include "model.hpp"
#include "run.hpp"
#include "scheme.hpp"
#include "solver.hpp"
#include "tri_mesh.hpp"
#include "verify.hpp"

struct dfvm_graph_mesh {
  dfvm::GraphMesh impl;
};
struct dfvm_tri_mesh {
  dfvm::TriMesh impl;
};
struct dfvm_sim {
  dfvm::Simulation impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what != nullptr ? what : "unknown error"; }

template <class F>
dfvm_status guarded(F&& f) noexcept {
  try {
    f();
    return DFVM_OK;
  } catch (const dfvm::ConfigError& e) {
    set_error(e.what());
    return DFVM_ERR_PARSE;
  } catch (const dfvm::IoError& e) {
    set_error(e.what());
    return DFVM_ERR_IO;
  } catch (const dfvm::SolverError& e) {
    set_error(e.what());
    return DFVM_ERR_SOLVER;
  } catch (const dfvm::MeshError& e) {
    set_error(e.what());
    return DFVM_ERR_INVALID_ARGUMENT;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return DFVM_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DFVM_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return DFVM_ERR_INTERNAL;
  }
}

[[noreturn]] void bad_arg(const char* msg) { throw std::invalid_argument(msg); }

dfvm::ModelParams to_params(const dfvm_model_params* mp) {
  if (mp == nullptr) bad_arg("api: model params pointer is null");
  dfvm::ModelParams out;
  out.m = mp->m;
  out.p_exp = mp->p_exp;
  out.q = mp->q;
  out.E_s = mp->E_s;
  out.alpha = mp->alpha;
  out.epsilon = mp->epsilon;
  return out;
}

dfvm::Scheme to_scheme(int scheme) {
  switch (scheme) {
    case DFVM_SCHEME_CE: return dfvm::Scheme::CE;
    case DFVM_SCHEME_FU: return dfvm::Scheme::FU;
    case DFVM_SCHEME_IS: return dfvm::Scheme::IS;
    default: bad_arg("api: scheme must be 0 (ce), 1 (fu) or 2 (is)");
  }
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* dfvm_version(void) { return "0.1.0"; }

const char* dfvm_last_error(void) { return g_last_error.c_str(); }

void dfvm_string_free(char* s) { delete[] s; }

void dfvm_model_params_init(dfvm_model_params* mp) {
  if (mp == nullptr) return;
  const dfvm::ModelParams d;
  mp->m = d.m;
  mp->p_exp = d.p_exp;
  mp->q = d.q;
  mp->E_s = d.E_s;
  mp->alpha = d.alpha;
  mp->epsilon = d.epsilon;
}

dfvm_status dfvm_model_params_validate(const dfvm_model_params* mp) {
  return guarded([&] { dfvm::validate(to_params(mp)); });
}

dfvm_status dfvm_regularize(double u, double epsilon, double* out) {
  return guarded([&] {
    if (out == nullptr) bad_arg("api: out pointer is null");
    *out = dfvm::regularize(u, epsilon);
  });
}

double dfvm_bernoulli(double x) { return dfvm::bernoulli(x); }

dfvm_status dfvm_evap_exact(double u, double tau, double q, double E_s, double* out) {
  return guarded([&] {
    if (out == nullptr) bad_arg("api: out pointer is null");
    *out = dfvm::evap_exact(u, tau, q, E_s);
  });
}

dfvm_status dfvm_flux_1d(double u_i, double u_mu, double sigma, double l, double cell_alpha,
                         const dfvm_model_params* mp, int scheme, double* flux, double* u_bar,
                         double* pe) {
  return guarded([&] {
    const dfvm::ModelParams params = to_params(mp);
    dfvm::validate(params);
    const dfvm::FluxEval fe =
        dfvm::fitted_flux_1d(u_i, u_mu, sigma, l, cell_alpha, params, to_scheme(scheme));
    if (flux != nullptr) *flux = fe.value;
    if (u_bar != nullptr) *u_bar = fe.u_bar;
    if (pe != nullptr) *pe = fe.pe;
  });
}

dfvm_status dfvm_graph_mesh_load(const char* path, dfvm_graph_mesh** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) bad_arg("api: null pointer argument");
    *out = new dfvm_graph_mesh{dfvm::load_graph_mesh(path)};
  });
}

dfvm_status dfvm_graph_mesh_chain(int n_nodes, double spacing, int reversed,
                                  dfvm_graph_mesh** out) {
  return guarded([&] {
    if (out == nullptr) bad_arg("api: out pointer is null");
    *out = new dfvm_graph_mesh{dfvm::GraphMesh::uniform_chain(n_nodes, spacing, reversed != 0)};
  });
}

void dfvm_graph_mesh_free(dfvm_graph_mesh* mesh) { delete mesh; }

int dfvm_graph_mesh_n_nodes(const dfvm_graph_mesh* mesh) {
  return mesh == nullptr ? -1 : mesh->impl.n_nodes();
}

int dfvm_graph_mesh_n_cells(const dfvm_graph_mesh* mesh) {
  return mesh == nullptr ? -1 : mesh->impl.n_cells();
}

double dfvm_graph_mesh_total_measure(const dfvm_graph_mesh* mesh) {
  return mesh == nullptr ? -1.0 : mesh->impl.total_measure();
}

dfvm_status dfvm_graph_mesh_info_json(const dfvm_graph_mesh* mesh, char** out) {
  return guarded([&] {
    if (mesh == nullptr || out == nullptr) bad_arg("api: null pointer argument");
    nlohmann::json j;
    j["kind"] = "1d-graph";
    j["n_nodes"] = mesh->impl.n_nodes();
    j["n_cells"] = mesh->impl.n_cells();
    j["total_measure"] = mesh->impl.total_measure();
    j["has_coords"] = mesh->impl.has_coords();
    *out = dup_string(j.dump(2));
  });
}

dfvm_status dfvm_tri_mesh_load(const char* path, dfvm_tri_mesh** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) bad_arg("api: null pointer argument");
    *out = new dfvm_tri_mesh{dfvm::load_tri_mesh(path)};
  });
}

dfvm_status dfvm_tri_mesh_strip(int nx, int ny, double h, dfvm_tri_mesh** out) {
  return guarded([&] {
    if (out == nullptr) bad_arg("api: out pointer is null");
    *out = new dfvm_tri_mesh{dfvm::TriMesh::structured_right_strip(nx, ny, h)};
  });
}

void dfvm_tri_mesh_free(dfvm_tri_mesh* mesh) { delete mesh; }

int dfvm_tri_mesh_n_points(const dfvm_tri_mesh* mesh) {
  return mesh == nullptr ? -1 : mesh->impl.n_points();
}

int dfvm_tri_mesh_n_triangles(const dfvm_tri_mesh* mesh) {
  return mesh == nullptr ? -1 : mesh->impl.n_triangles();
}

double dfvm_tri_mesh_total_area(const dfvm_tri_mesh* mesh) {
  return mesh == nullptr ? -1.0 : mesh->impl.total_area();
}

dfvm_status dfvm_tri_mesh_info_json(const dfvm_tri_mesh* mesh, char** out) {
  return guarded([&] {
    if (mesh == nullptr || out == nullptr) bad_arg("api: null pointer argument");
    nlohmann::json j;
    j["kind"] = "2d-tri";
    j["n_points"] = mesh->impl.n_points();
    j["n_triangles"] = mesh->impl.n_triangles();
    j["n_edges"] = mesh->impl.edges().size();
    j["total_area"] = mesh->impl.total_area();
    j["total_voronoi_area"] = mesh->impl.total_voronoi_area();
    j["clamped_facets"] = mesh->impl.clamped_facet_count();
    *out = dup_string(j.dump(2));
  });
}

dfvm_status dfvm_sim_create_graph(const dfvm_graph_mesh* mesh, const dfvm_model_params* mp,
                                  int scheme, dfvm_sim** out) {
  return guarded([&] {
    if (mesh == nullptr || out == nullptr) bad_arg("api: null pointer argument");
    *out = new dfvm_sim{dfvm::Simulation(mesh->impl, to_params(mp), to_scheme(scheme))};
  });
}

dfvm_status dfvm_sim_create_tri(const dfvm_tri_mesh* mesh, const dfvm_model_params* mp,
                                int scheme, dfvm_sim** out) {
  return guarded([&] {
    if (mesh == nullptr || out == nullptr) bad_arg("api: null pointer argument");
    *out = new dfvm_sim{dfvm::Simulation(mesh->impl, to_params(mp), to_scheme(scheme))};
  });
}

void dfvm_sim_free(dfvm_sim* sim) { delete sim; }

dfvm_status dfvm_sim_set_theta(dfvm_sim* sim, double theta) {
  return guarded([&] {
    if (sim == nullptr) bad_arg("api: sim pointer is null");
    sim->impl.set_theta(theta);
  });
}

dfvm_status dfvm_sim_set_initial(dfvm_sim* sim, const double* u, int n) {
  return guarded([&] {
    if (sim == nullptr || u == nullptr) bad_arg("api: null pointer argument");
    if (n != sim->impl.n_nodes()) bad_arg("api: initial state length does not match node count");
    sim->impl.set_initial(std::vector<double>(u, u + n));
  });
}

dfvm_status dfvm_sim_set_dirichlet(dfvm_sim* sim, const int* nodes, const double* values,
                                   int count) {
  return guarded([&] {
    if (sim == nullptr || nodes == nullptr || values == nullptr)
      bad_arg("api: null pointer argument");
    if (count <= 0) bad_arg("api: dirichlet count must be positive");
    std::vector<int> ns(nodes, nodes + count);
    std::vector<double> vs(values, values + count);
    auto g = [ns, vs](int node, double) {
      for (std::size_t k = 0; k < ns.size(); ++k)
        if (ns[k] == node) return vs[k];
      return 0.0;
    };
    sim->impl.set_dirichlet(std::move(ns), g);
  });
}

dfvm_status dfvm_sim_step(dfvm_sim* sim, double dt, long n_steps) {
  return guarded([&] {
    if (sim == nullptr) bad_arg("api: sim pointer is null");
    sim->impl.run(dt, n_steps);
  });
}

int dfvm_sim_n_nodes(const dfvm_sim* sim) { return sim == nullptr ? -1 : sim->impl.n_nodes(); }

double dfvm_sim_time(const dfvm_sim* sim) { return sim == nullptr ? -1.0 : sim->impl.time(); }

long dfvm_sim_step_count(const dfvm_sim* sim) {
  return sim == nullptr ? -1 : sim->impl.step_count();
}

double dfvm_sim_mass(const dfvm_sim* sim) { return sim == nullptr ? -1.0 : sim->impl.mass(); }

dfvm_status dfvm_sim_get_u(const dfvm_sim* sim, double* out, int n) {
  return guarded([&] {
    if (sim == nullptr || out == nullptr) bad_arg("api: null pointer argument");
    const std::vector<double>& u = sim->impl.u();
    if (n != static_cast<int>(u.size())) bad_arg("api: buffer length does not match node count");
    std::memcpy(out, u.data(), u.size() * sizeof(double));
  });
}

dfvm_status dfvm_run_config_text(const char* config_json, const char* base_dir,
                                 char** summary_json) {
  return guarded([&] {
    if (config_json == nullptr || summary_json == nullptr) bad_arg("api: null pointer argument");
    const dfvm::RunConfig cfg =
        dfvm::parse_config_text(config_json, base_dir == nullptr ? "" : base_dir);
    const dfvm::RunSummary s = dfvm::execute_run(cfg);
    nlohmann::json j;
    j["steps"] = s.steps;
    j["t_final"] = s.t_final;
    j["mass_initial"] = s.mass_initial;
    j["mass_final"] = s.mass_final;
    j["min_u_overall"] = s.min_u_overall;
    j["any_dominance_violation"] = s.any_dominance_violation;
    j["output_dir"] = s.output_dir;
    *summary_json = dup_string(j.dump(2));
  });
}

dfvm_status dfvm_run_config_file(const char* path, char** summary_json) {
  return guarded([&] {
    if (path == nullptr || summary_json == nullptr) bad_arg("api: null pointer argument");
    const dfvm::RunConfig cfg = dfvm::parse_config_file(path);
    const dfvm::RunSummary s = dfvm::execute_run(cfg);
    nlohmann::json j;
    j["steps"] = s.steps;
    j["t_final"] = s.t_final;
    j["mass_initial"] = s.mass_initial;
    j["mass_final"] = s.mass_final;
    j["min_u_overall"] = s.min_u_overall;
    j["any_dominance_violation"] = s.any_dominance_violation;
    j["output_dir"] = s.output_dir;
    *summary_json = dup_string(j.dump(2));
  });
}

dfvm_status dfvm_check_isotonicity(int scheme, const dfvm_model_params* mp, double sigma,
                                   double l, double grid_max, double grid_step, double fd_step,
                                   long* n_violations, char** report_json) {
  return guarded([&] {
    const dfvm::ModelParams params = to_params(mp);
    const dfvm::IsotonicityReport rep = dfvm::check_isotonicity(
        to_scheme(scheme), params, sigma, l, grid_max, grid_step, fd_step);
    if (n_violations != nullptr) *n_violations = rep.n_violations;
    if (report_json != nullptr) *report_json = dup_string(dfvm::isotonicity_report_json(rep));
  });
}

int dfvm_fu_bound(double m, double pe) {
  try {
    return dfvm::fu_bound(m, pe) ? 1 : 0;
  } catch (const std::exception& e) {
    set_error(e.what());
    return -1;
  }
}

}  // extern "C"
