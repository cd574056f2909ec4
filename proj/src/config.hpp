#pragma once
// Run configuration: JSON parsing with strict key checking, defaults,
// normalized emission, and the mesh / nodal-data file loaders.

#include <string>
#include <utility>
#include <vector>

#include "graph_mesh.hpp"
#include "model.hpp"
#include "scheme.hpp"
#include "tri_mesh.hpp"

namespace dfvm {

struct DirichletEntry {
  int node = -1;
  double value = 0.0;
};

struct InitialCondition {
  std::string kind = "constant";  // constant | file | step | hump
  double value = 0.0;             // constant value / profile peak
  double background = 0.0;
  double lo = 0.0;                // step interval [lo, hi]
  double hi = 0.0;
  double center = 0.0;            // hump center / half-width
  double width = 0.0;
  std::string path;               // per-node JSON array, for kind = file
};

struct RunConfig {
  int spec_version = 1;
  std::string mesh_kind;  // 1d-graph | 2d-tri
  std::string mesh_path;  // resolved against the config file directory
  ModelParams model;
  Scheme scheme = Scheme::IS;
  double theta = 1.0;
  double dt = 0.0;
  double t_end = 0.0;
  long output_every = 1;
  std::string output_dir = "out";
  InitialCondition initial;
  std::vector<DirichletEntry> dirichlet;
  unsigned long seed = 0;
};

// base_dir resolves relative mesh / initial-data paths; throws ConfigError
// with the offending key path on any schema or invariant violation
RunConfig parse_config_text(const std::string& text, const std::string& base_dir);
RunConfig parse_config_file(const std::string& path);

// normalized JSON with all defaults materialized; parsing it again
// reproduces the identical RunConfig
std::string emit_config(const RunConfig& cfg);

GraphMesh load_graph_mesh(const std::string& path);
TriMesh load_tri_mesh(const std::string& path);

// JSON array of n_nodes finite numbers
std::vector<double> load_node_values(const std::string& path, int n_nodes);

}  // namespace dfvm
