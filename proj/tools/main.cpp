// Command-line front end; talks to the solver library through its C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dfvm/dfvm.h"

namespace {

int scheme_code(const std::string& s) {
  if (s == "ce") return DFVM_SCHEME_CE;
  if (s == "fu") return DFVM_SCHEME_FU;
  return DFVM_SCHEME_IS;
}

// 1 for config/usage trouble, 3 for solver/internal trouble
int exit_code_for(dfvm_status st) {
  switch (st) {
    case DFVM_OK: return 0;
    case DFVM_ERR_SOLVER:
    case DFVM_ERR_INTERNAL: return 3;
    default: return 1;
  }
}

int report_failure(dfvm_status st) {
  std::cerr << "error: " << dfvm_last_error() << "\n";
  return exit_code_for(st);
}

struct RunArgs {
  std::string config_path;
  std::string scheme;
  std::string output_dir;
  std::string mesh_path;
  double dt = 0.0;
  double t_end = 0.0;
  double theta = 0.0;
  long output_every = 0;
};

int cmd_run(const RunArgs& a, const CLI::App* sub) {
  std::ifstream in(a.config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << a.config_path << "\n";
    return 1;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();

  const bool overrides = sub->count("--scheme") || sub->count("--dt") || sub->count("--t-end") ||
                         sub->count("--theta") || sub->count("--output-dir") ||
                         sub->count("--output-every") || sub->count("--mesh");
  if (overrides) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      std::cerr << "error: " << a.config_path << " is not a JSON object\n";
      return 1;
    }
    if (sub->count("--scheme")) j["scheme"] = a.scheme;
    if (sub->count("--dt")) j["dt"] = a.dt;
    if (sub->count("--t-end")) j["t_end"] = a.t_end;
    if (sub->count("--theta")) j["theta"] = a.theta;
    if (sub->count("--output-dir")) j["output"]["dir"] = a.output_dir;
    if (sub->count("--output-every")) j["output"]["every"] = a.output_every;
    if (sub->count("--mesh")) j["mesh"]["path"] = a.mesh_path;
    text = j.dump(2);
  }

  const std::string base = std::filesystem::path(a.config_path).parent_path().string();
  char* summary = nullptr;
  const dfvm_status st = dfvm_run_config_text(text.c_str(), base.c_str(), &summary);
  if (st != DFVM_OK) return report_failure(st);
  std::cout << summary << "\n";
  dfvm_string_free(summary);
  return 0;
}

struct VerifyArgs {
  std::string scheme = "is";
  double m = 2.0;
  double p_exp = 0.0;
  double alpha = 0.0;
  double sigma = 1.0;
  double l = 1.0;
  double grid_max = 1.0;
  double grid_step = 0.01;
  double fd_step = 1e-6;
  std::string output;
};

int cmd_verify(const VerifyArgs& a) {
  dfvm_model_params mp;
  dfvm_model_params_init(&mp);
  mp.m = a.m;
  mp.p_exp = a.p_exp;
  mp.alpha = a.alpha;

  long n_violations = 0;
  char* report = nullptr;
  const dfvm_status st =
      dfvm_check_isotonicity(scheme_code(a.scheme), &mp, a.sigma, a.l, a.grid_max, a.grid_step,
                             a.fd_step, &n_violations, &report);
  if (st != DFVM_OK) return report_failure(st);

  if (!a.output.empty()) {
    std::ofstream out(a.output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << a.output << " for writing\n";
      dfvm_string_free(report);
      return 1;
    }
    out << report << "\n";
  } else {
    std::cout << report << "\n";
  }
  dfvm_string_free(report);

  std::cout << "scheme=" << a.scheme << " m=" << a.m << " p_exp=" << a.p_exp
            << " alpha=" << a.alpha << " sigma=" << a.sigma << " l=" << a.l
            << " violations=" << n_violations
            << (n_violations == 0 ? " -> isotone on grid" : " -> NOT isotone") << "\n";
  return n_violations == 0 ? 0 : 2;
}

int cmd_mesh_info(const std::string& kind, const std::string& path) {
  char* info = nullptr;
  dfvm_status st = DFVM_OK;
  if (kind == "1d-graph") {
    dfvm_graph_mesh* mesh = nullptr;
    st = dfvm_graph_mesh_load(path.c_str(), &mesh);
    if (st == DFVM_OK) {
      st = dfvm_graph_mesh_info_json(mesh, &info);
      dfvm_graph_mesh_free(mesh);
    }
  } else {
    dfvm_tri_mesh* mesh = nullptr;
    st = dfvm_tri_mesh_load(path.c_str(), &mesh);
    if (st == DFVM_OK) {
      st = dfvm_tri_mesh_info_json(mesh, &info);
      dfvm_tri_mesh_free(mesh);
    }
  }
  if (st != DFVM_OK) return report_failure(st);
  std::cout << info << "\n";
  dfvm_string_free(info);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual finite-volume saturation transport on graphs and triangulations"};
  app.set_version_flag("--version", std::string(dfvm_version()));
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "execute a configured simulation");
  run->add_option("--config", run_args.config_path, "JSON run configuration")->required();
  run->add_option("--scheme", run_args.scheme, "override scheme (ce|fu|is)")
      ->check(CLI::IsMember({"ce", "fu", "is"}));
  run->add_option("--dt", run_args.dt, "override time increment");
  run->add_option("--t-end", run_args.t_end, "override final time");
  run->add_option("--theta", run_args.theta, "override theta");
  run->add_option("--output-dir", run_args.output_dir, "override output directory");
  run->add_option("--output-every", run_args.output_every, "override snapshot cadence");
  run->add_option("--mesh", run_args.mesh_path, "override mesh path");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "isotonicity scan of the interface flux");
  verify->add_option("--scheme", verify_args.scheme, "flux scheme (ce|fu|is)")
      ->required()
      ->check(CLI::IsMember({"ce", "fu", "is"}));
  verify->add_option("--m", verify_args.m, "diffusion exponent")->required();
  verify->add_option("--p-exp", verify_args.p_exp, "pressure exponent");
  verify->add_option("--alpha", verify_args.alpha, "inclination angle");
  verify->add_option("--sigma", verify_args.sigma, "orientation (+1|-1)");
  verify->add_option("--l", verify_args.l, "cell length");
  verify->add_option("--grid-max", verify_args.grid_max, "scan range upper bound");
  verify->add_option("--grid-step", verify_args.grid_step, "scan grid step");
  verify->add_option("--fd-step", verify_args.fd_step, "finite-difference step");
  verify->add_option("--output", verify_args.output, "write the JSON report here");

  std::string mesh_kind;
  std::string mesh_path;
  CLI::App* info = app.add_subcommand("mesh-info", "load a mesh and print its summary");
  info->add_option("--kind", mesh_kind, "mesh kind (1d-graph|2d-tri)")
      ->required()
      ->check(CLI::IsMember({"1d-graph", "2d-tri"}));
  info->add_option("--path", mesh_path, "mesh file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (app.got_subcommand(run)) return cmd_run(run_args, run);
  if (app.got_subcommand(verify)) return cmd_verify(verify_args);
  if (app.got_subcommand(info)) return cmd_mesh_info(mesh_kind, mesh_path);
  return 1;
}
