#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// exercises the shared library strictly through its C header

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "dfvm/dfvm.h"

namespace {

#ifndef DFVM_TEST_DATA_DIR
#error "DFVM_TEST_DATA_DIR must be defined by the build"
#endif

const std::string kData = DFVM_TEST_DATA_DIR;

}  // namespace

TEST_CASE("version and error plumbing") {
  REQUIRE(dfvm_version() != nullptr);
  CHECK(std::string(dfvm_version()) == "0.1.0");
  // a failing call populates the thread-local message
  double out = 0.0;
  CHECK(dfvm_regularize(1.0, -1.0, &out) == DFVM_ERR_INVALID_ARGUMENT);
  REQUIRE(dfvm_last_error() != nullptr);
  CHECK(std::strlen(dfvm_last_error()) > 0);
}

TEST_CASE("model params init and validate") {
  dfvm_model_params mp;
  dfvm_model_params_init(&mp);
  CHECK(mp.m == 2.0);
  CHECK(mp.p_exp == 0.0);
  CHECK(mp.q == 1.0);
  CHECK(mp.E_s == 0.0);
  CHECK(mp.alpha == 0.0);
  CHECK(mp.epsilon == 1e-10);
  CHECK(dfvm_model_params_validate(&mp) == DFVM_OK);
  mp.m = -1.0;
  CHECK(dfvm_model_params_validate(&mp) == DFVM_ERR_INVALID_ARGUMENT);
  CHECK(dfvm_model_params_validate(nullptr) == DFVM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scalar helpers") {
  double out = 0.0;
  REQUIRE(dfvm_regularize(3.0, 4.0, &out) == DFVM_OK);
  CHECK(out == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(dfvm_regularize(3.0, 4.0, nullptr) == DFVM_ERR_INVALID_ARGUMENT);

  CHECK(dfvm_bernoulli(0.0) == 1.0);
  CHECK(dfvm_bernoulli(1.0) == doctest::Approx(0.5819767068693265).epsilon(1e-15));

  REQUIRE(dfvm_evap_exact(1.0, std::log(2.0), 1.0, 1.0, &out) == DFVM_OK);
  CHECK(out == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dfvm_evap_exact(-1.0, 1.0, 1.0, 1.0, &out) == DFVM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("flux through the C surface") {
  dfvm_model_params mp;
  dfvm_model_params_init(&mp);
  double flux = 0.0, ubar = 0.0, pe = 0.0;
  REQUIRE(dfvm_flux_1d(1.0, 0.0, 1.0, 1.0, 1.5707963267948966, &mp, DFVM_SCHEME_FU, &flux, &ubar,
                       &pe) == DFVM_OK);
  CHECK(flux == doctest::Approx(1.5414940825367983).epsilon(1e-12));
  CHECK(ubar == 1.0);
  CHECK(pe == doctest::Approx(-0.5).epsilon(1e-12));
  // out-pointers are optional
  CHECK(dfvm_flux_1d(1.0, 0.0, 1.0, 1.0, 0.0, &mp, DFVM_SCHEME_CE, nullptr, nullptr, nullptr) ==
        DFVM_OK);
  CHECK(dfvm_flux_1d(1.0, 0.0, 1.0, 1.0, 0.0, nullptr, DFVM_SCHEME_CE, &flux, nullptr, nullptr) ==
        DFVM_ERR_INVALID_ARGUMENT);
  CHECK(dfvm_flux_1d(1.0, 0.0, 1.0, 1.0, 0.0, &mp, 7, &flux, nullptr, nullptr) ==
        DFVM_ERR_INVALID_ARGUMENT);
  CHECK(dfvm_flux_1d(1.0, 0.0, 0.0, 1.0, 0.0, &mp, DFVM_SCHEME_CE, &flux, nullptr, nullptr) ==
        DFVM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("graph mesh lifecycle") {
  dfvm_graph_mesh* mesh = nullptr;
  REQUIRE(dfvm_graph_mesh_chain(11, 0.1, 0, &mesh) == DFVM_OK);
  REQUIRE(mesh != nullptr);
  CHECK(dfvm_graph_mesh_n_nodes(mesh) == 11);
  CHECK(dfvm_graph_mesh_n_cells(mesh) == 10);
  CHECK(dfvm_graph_mesh_total_measure(mesh) == doctest::Approx(1.0).epsilon(1e-14));
  char* info = nullptr;
  REQUIRE(dfvm_graph_mesh_info_json(mesh, &info) == DFVM_OK);
  REQUIRE(info != nullptr);
  CHECK(std::string(info).find("\"n_nodes\"") != std::string::npos);
  dfvm_string_free(info);
  dfvm_graph_mesh_free(mesh);

  mesh = nullptr;
  REQUIRE(dfvm_graph_mesh_load((kData + "/chain10.json").c_str(), &mesh) == DFVM_OK);
  CHECK(dfvm_graph_mesh_n_nodes(mesh) == 11);
  dfvm_graph_mesh_free(mesh);

  CHECK(dfvm_graph_mesh_load((kData + "/no_such.json").c_str(), &mesh) == DFVM_ERR_IO);
  CHECK(dfvm_graph_mesh_chain(1, 1.0, 0, &mesh) == DFVM_ERR_INVALID_ARGUMENT);
  CHECK(dfvm_graph_mesh_load(nullptr, &mesh) == DFVM_ERR_INVALID_ARGUMENT);
  CHECK(dfvm_graph_mesh_n_nodes(nullptr) == -1);
}

TEST_CASE("tri mesh lifecycle") {
  dfvm_tri_mesh* mesh = nullptr;
  REQUIRE(dfvm_tri_mesh_strip(4, 4, 0.25, &mesh) == DFVM_OK);
  CHECK(dfvm_tri_mesh_n_points(mesh) == 25);
  CHECK(dfvm_tri_mesh_n_triangles(mesh) == 32);
  CHECK(dfvm_tri_mesh_total_area(mesh) == doctest::Approx(1.0).epsilon(1e-13));
  char* info = nullptr;
  REQUIRE(dfvm_tri_mesh_info_json(mesh, &info) == DFVM_OK);
  CHECK(std::string(info).find("\"n_points\"") != std::string::npos);
  dfvm_string_free(info);
  dfvm_tri_mesh_free(mesh);

  mesh = nullptr;
  REQUIRE(dfvm_tri_mesh_load((kData + "/tri_two.json").c_str(), &mesh) == DFVM_OK);
  CHECK(dfvm_tri_mesh_n_points(mesh) == 4);
  dfvm_tri_mesh_free(mesh);

  CHECK(dfvm_tri_mesh_strip(0, 1, 0.1, &mesh) == DFVM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("simulation lifecycle mirrors the reference two-node solve") {
  dfvm_graph_mesh* mesh = nullptr;
  REQUIRE(dfvm_graph_mesh_chain(2, 1.0, 0, &mesh) == DFVM_OK);
  dfvm_model_params mp;
  dfvm_model_params_init(&mp);
  mp.m = 1.0;

  dfvm_sim* sim = nullptr;
  REQUIRE(dfvm_sim_create_graph(mesh, &mp, DFVM_SCHEME_IS, &sim) == DFVM_OK);
  dfvm_graph_mesh_free(mesh);  // sim owns its own copy of the interfaces

  CHECK(dfvm_sim_n_nodes(sim) == 2);
  const double u0[2] = {1.0, 0.0};
  REQUIRE(dfvm_sim_set_initial(sim, u0, 2) == DFVM_OK);
  CHECK(dfvm_sim_set_initial(sim, u0, 3) == DFVM_ERR_INVALID_ARGUMENT);
  REQUIRE(dfvm_sim_step(sim, 0.1, 1) == DFVM_OK);
  CHECK(dfvm_sim_step_count(sim) == 1);
  CHECK(dfvm_sim_time(sim) == doctest::Approx(0.1).epsilon(1e-15));
  double u[2] = {0.0, 0.0};
  REQUIRE(dfvm_sim_get_u(sim, u, 2) == DFVM_OK);
  CHECK(u[0] == doctest::Approx(6.0 / 7.0).epsilon(1e-13));
  CHECK(u[1] == doctest::Approx(1.0 / 7.0).epsilon(1e-13));
  CHECK(dfvm_sim_mass(sim) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(dfvm_sim_get_u(sim, u, 1) == DFVM_ERR_INVALID_ARGUMENT);
  CHECK(dfvm_sim_set_theta(sim, 0.4) == DFVM_ERR_INVALID_ARGUMENT);
  dfvm_sim_free(sim);
}

TEST_CASE("dirichlet through the C surface") {
  dfvm_graph_mesh* mesh = nullptr;
  REQUIRE(dfvm_graph_mesh_chain(3, 0.5, 0, &mesh) == DFVM_OK);
  dfvm_model_params mp;
  dfvm_model_params_init(&mp);
  mp.m = 1.0;
  dfvm_sim* sim = nullptr;
  REQUIRE(dfvm_sim_create_graph(mesh, &mp, DFVM_SCHEME_IS, &sim) == DFVM_OK);
  dfvm_graph_mesh_free(mesh);
  const double u0[3] = {1.0, 0.3, 0.0};
  REQUIRE(dfvm_sim_set_initial(sim, u0, 3) == DFVM_OK);
  const int nodes[2] = {0, 2};
  const double values[2] = {1.0, 0.0};
  REQUIRE(dfvm_sim_set_dirichlet(sim, nodes, values, 2) == DFVM_OK);
  REQUIRE(dfvm_sim_step(sim, 0.05, 400) == DFVM_OK);
  double u[3];
  REQUIRE(dfvm_sim_get_u(sim, u, 3) == DFVM_OK);
  CHECK(u[0] == 1.0);
  CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(u[2] == 0.0);
  dfvm_sim_free(sim);
}

TEST_CASE("configured run through the C surface") {
  namespace fs = std::filesystem;
  const fs::path outdir = fs::temp_directory_path() / "dfvm_capi_run_test";
  fs::remove_all(outdir);

  const std::string config = std::string(R"({
    "mesh": {"kind": "1d-graph", "path": "chain10.json"},
    "model": {"m": 2.0, "alpha": 0.5},
    "scheme": "is",
    "dt": 0.001,
    "t_end": 0.005,
    "output": {"every": 5, "dir": ")") + outdir.string() + R"("},
    "initial": {"kind": "constant", "value": 0.4}
  })";

  char* summary = nullptr;
  REQUIRE(dfvm_run_config_text(config.c_str(), kData.c_str(), &summary) == DFVM_OK);
  REQUIRE(summary != nullptr);
  const std::string s(summary);
  CHECK(s.find("\"steps\": 5") != std::string::npos);
  CHECK(s.find("\"mass_initial\"") != std::string::npos);
  CHECK(s.find("\"output_dir\"") != std::string::npos);
  dfvm_string_free(summary);
  CHECK(fs::exists(outdir / "audit.csv"));
  fs::remove_all(outdir);

  // parse errors surface as DFVM_ERR_PARSE
  summary = nullptr;
  CHECK(dfvm_run_config_text("{broken", "", &summary) == DFVM_ERR_PARSE);
  CHECK(dfvm_run_config_file((kData + "/missing.json").c_str(), &summary) == DFVM_ERR_IO);
}

TEST_CASE("isotonicity scan through the C surface") {
  dfvm_model_params mp;
  dfvm_model_params_init(&mp);
  long nv = -1;
  char* report = nullptr;
  REQUIRE(dfvm_check_isotonicity(DFVM_SCHEME_IS, &mp, 1.0, 1.0, 1.0, 0.05, 1e-6, &nv, &report) ==
          DFVM_OK);
  CHECK(nv == 0);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"isotone\": true") != std::string::npos);
  dfvm_string_free(report);

  // fully upwind beyond the bound: violations expected
  mp.alpha = -1.5707963267948966;
  nv = -1;
  REQUIRE(dfvm_check_isotonicity(DFVM_SCHEME_FU, &mp, 1.0, 2.0, 1.0, 0.05, 1e-6, &nv, nullptr) ==
          DFVM_OK);
  CHECK(nv > 0);

  CHECK(dfvm_check_isotonicity(DFVM_SCHEME_IS, nullptr, 1.0, 1.0, 1.0, 0.05, 1e-6, &nv, nullptr) ==
        DFVM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fu bound through the C surface") {
  CHECK(dfvm_fu_bound(2.0, 0.5) == 1);
  CHECK(dfvm_fu_bound(2.0, 1.0) == 0);
  CHECK(dfvm_fu_bound(0.0, 0.0) == -1);
}
