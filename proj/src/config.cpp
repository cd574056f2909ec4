#include "config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

#include "errors.hpp"

namespace dfvm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("io: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("io: failed reading " + path);
  return ss.str();
}

json parse_json(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: " + where + ": not valid JSON");
  return j;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(where, "unknown key '" + it.key() + "'");
  }
}

double get_number(const json& obj, const std::string& where, const char* key, bool required,
                  double fallback) {
  if (!obj.contains(key)) {
    if (required) fail(where + "." + key, "missing required key");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& obj, const std::string& where, const char* key, bool required,
                       const std::string& fallback) {
  if (!obj.contains(key)) {
    if (required) fail(where + "." + key, "missing required key");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

long get_integer(const json& obj, const std::string& where, const char* key, bool required,
                 long fallback) {
  if (!obj.contains(key)) {
    if (required) fail(where + "." + key, "missing required key");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<long>();
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  const json j = parse_json(text, "root");
  if (!j.is_object()) fail("root", "expected an object");
  check_keys(j, "root",
             {"spec_version", "mesh", "model", "scheme", "theta", "dt", "t_end", "output",
              "initial", "boundary", "seed"});

  RunConfig cfg;

  const long ver = get_integer(j, "root", "spec_version", false, 1);
  if (ver != 1) fail("spec_version", "unsupported value (expected 1)");
  cfg.spec_version = 1;

  if (!j.contains("mesh")) fail("mesh", "missing required key");
  const json& jm = j.at("mesh");
  if (!jm.is_object()) fail("mesh", "expected an object");
  check_keys(jm, "mesh", {"kind", "path"});
  cfg.mesh_kind = get_string(jm, "mesh", "kind", true, "");
  if (cfg.mesh_kind != "1d-graph" && cfg.mesh_kind != "2d-tri")
    fail("mesh.kind", "must be one of 1d-graph|2d-tri");
  cfg.mesh_path = resolve_path(get_string(jm, "mesh", "path", true, ""), base_dir);

  if (!j.contains("model")) fail("model", "missing required key");
  const json& jp = j.at("model");
  if (!jp.is_object()) fail("model", "expected an object");
  check_keys(jp, "model", {"m", "p_exp", "q", "E_s", "alpha", "epsilon"});
  cfg.model.m = get_number(jp, "model", "m", true, 0.0);
  cfg.model.p_exp = get_number(jp, "model", "p_exp", false, 0.0);
  cfg.model.q = get_number(jp, "model", "q", false, 1.0);
  cfg.model.E_s = get_number(jp, "model", "E_s", false, 0.0);
  cfg.model.alpha = get_number(jp, "model", "alpha", false, 0.0);
  cfg.model.epsilon = get_number(jp, "model", "epsilon", false, 1e-10);
  try {
    validate(cfg.model);
  } catch (const std::invalid_argument& e) {
    fail("model", e.what());
  }

  const std::string scheme_str = get_string(j, "root", "scheme", false, "is");
  const auto sc = parse_scheme(scheme_str);
  if (!sc) fail("scheme", "'" + scheme_str + "' is not one of ce|fu|is");
  cfg.scheme = *sc;

  cfg.theta = get_number(j, "root", "theta", false, 1.0);
  if (!(cfg.theta > 0.5) || !(cfg.theta <= 1.0)) fail("theta", "must lie in (0.5, 1]");

  cfg.dt = get_number(j, "root", "dt", true, 0.0);
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) fail("dt", "must be positive and finite");

  cfg.t_end = get_number(j, "root", "t_end", true, 0.0);
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) fail("t_end", "must be >= 0 and finite");

  if (j.contains("output")) {
    const json& jo = j.at("output");
    if (!jo.is_object()) fail("output", "expected an object");
    check_keys(jo, "output", {"every", "dir"});
    cfg.output_every = get_integer(jo, "output", "every", false, 1);
    if (cfg.output_every < 1) fail("output.every", "must be >= 1");
    cfg.output_dir = get_string(jo, "output", "dir", false, "out");
    if (cfg.output_dir.empty()) fail("output.dir", "must not be empty");
  }

  if (j.contains("initial")) {
    const json& ji = j.at("initial");
    if (!ji.is_object()) fail("initial", "expected an object");
    check_keys(ji, "initial",
               {"kind", "value", "background", "lo", "hi", "center", "width", "path"});
    cfg.initial.kind = get_string(ji, "initial", "kind", false, "constant");
    if (cfg.initial.kind != "constant" && cfg.initial.kind != "file" &&
        cfg.initial.kind != "step" && cfg.initial.kind != "hump")
      fail("initial.kind", "must be one of constant|file|step|hump");
    cfg.initial.value = get_number(ji, "initial", "value", false, 0.0);
    cfg.initial.background = get_number(ji, "initial", "background", false, 0.0);
    cfg.initial.lo = get_number(ji, "initial", "lo", false, 0.0);
    cfg.initial.hi = get_number(ji, "initial", "hi", false, 0.0);
    cfg.initial.center = get_number(ji, "initial", "center", false, 0.0);
    cfg.initial.width = get_number(ji, "initial", "width", false, 0.0);
    if (cfg.initial.kind == "file") {
      cfg.initial.path =
          resolve_path(get_string(ji, "initial", "path", true, ""), base_dir);
    } else if (ji.contains("path")) {
      fail("initial.path", "only valid when kind = file");
    }
    if (cfg.initial.kind == "step" && !(cfg.initial.hi >= cfg.initial.lo))
      fail("initial.hi", "step interval needs hi >= lo");
    if (cfg.initial.kind == "hump" && !(cfg.initial.width > 0.0))
      fail("initial.width", "hump needs a positive width");
  }

  if (j.contains("boundary")) {
    const json& jb = j.at("boundary");
    if (!jb.is_object()) fail("boundary", "expected an object");
    check_keys(jb, "boundary", {"dirichlet"});
    if (jb.contains("dirichlet")) {
      const json& jd = jb.at("dirichlet");
      if (!jd.is_array()) fail("boundary.dirichlet", "expected an array");
      for (std::size_t k = 0; k < jd.size(); ++k) {
        const std::string where = "boundary.dirichlet[" + std::to_string(k) + "]";
        const json& je = jd.at(k);
        if (!je.is_object()) fail(where, "expected an object");
        check_keys(je, where, {"node", "value"});
        DirichletEntry e;
        e.node = static_cast<int>(get_integer(je, where, "node", true, 0));
        if (e.node < 0) fail(where + ".node", "must be >= 0");
        e.value = get_number(je, where, "value", true, 0.0);
        if (!std::isfinite(e.value)) fail(where + ".value", "must be finite");
        for (const DirichletEntry& prev : cfg.dirichlet)
          if (prev.node == e.node) fail(where + ".node", "duplicate node id");
        cfg.dirichlet.push_back(e);
      }
    }
  }

  const long seed = get_integer(j, "root", "seed", false, 0);
  if (seed < 0) fail("seed", "must be >= 0");
  cfg.seed = static_cast<unsigned long>(seed);

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  const std::string text = read_file(path);
  const std::string base = std::filesystem::path(path).parent_path().string();
  return parse_config_text(text, base);
}

std::string emit_config(const RunConfig& cfg) {
  json j;
  j["spec_version"] = cfg.spec_version;
  j["mesh"] = {{"kind", cfg.mesh_kind}, {"path", cfg.mesh_path}};
  j["model"] = {{"m", cfg.model.m},         {"p_exp", cfg.model.p_exp},
                {"q", cfg.model.q},         {"E_s", cfg.model.E_s},
                {"alpha", cfg.model.alpha}, {"epsilon", cfg.model.epsilon}};
  j["scheme"] = to_string(cfg.scheme);
  j["theta"] = cfg.theta;
  j["dt"] = cfg.dt;
  j["t_end"] = cfg.t_end;
  j["output"] = {{"every", cfg.output_every}, {"dir", cfg.output_dir}};
  json ji = {{"kind", cfg.initial.kind},
             {"value", cfg.initial.value},
             {"background", cfg.initial.background},
             {"lo", cfg.initial.lo},
             {"hi", cfg.initial.hi},
             {"center", cfg.initial.center},
             {"width", cfg.initial.width}};
  if (cfg.initial.kind == "file") ji["path"] = cfg.initial.path;
  j["initial"] = std::move(ji);
  json jd = json::array();
  for (const DirichletEntry& e : cfg.dirichlet)
    jd.push_back({{"node", e.node}, {"value", e.value}});
  j["boundary"] = {{"dirichlet", std::move(jd)}};
  j["seed"] = cfg.seed;
  return j.dump(2);
}

GraphMesh load_graph_mesh(const std::string& path) {
  const json j = parse_json(read_file(path), "graph mesh " + path);
  const std::string where = "graph mesh " + path;
  if (!j.is_object()) fail(where, "expected an object");
  check_keys(j, where, {"kind", "nodes", "cells"});
  const std::string kind = get_string(j, where, "kind", false, "1d-graph");
  if (kind != "1d-graph") fail(where + ".kind", "expected 1d-graph");

  // "nodes" is either a node count or an array of abscissae
  if (!j.contains("nodes")) fail(where + ".nodes", "missing required key");
  const json& jn = j.at("nodes");
  long n_nodes = 0;
  std::vector<double> coords;
  if (jn.is_number_integer()) {
    n_nodes = jn.get<long>();
  } else if (jn.is_array()) {
    for (const json& v : jn) {
      if (!v.is_number()) fail(where + ".nodes", "expected numbers");
      coords.push_back(v.get<double>());
    }
    n_nodes = static_cast<long>(coords.size());
  } else {
    fail(where + ".nodes", "expected a count or an array of coordinates");
  }

  if (!j.contains("cells")) fail(where + ".cells", "missing required key");
  const json& jcells = j.at("cells");
  if (!jcells.is_array()) fail(where + ".cells", "expected an array");
  std::vector<GraphCell> cells;
  for (std::size_t k = 0; k < jcells.size(); ++k) {
    const std::string cw = where + ".cells[" + std::to_string(k) + "]";
    const json& jc = jcells.at(k);
    if (!jc.is_object()) fail(cw, "expected an object");
    check_keys(jc, cw, {"node_a", "node_b", "length", "alpha"});
    GraphCell c;
    c.node_a = static_cast<int>(get_integer(jc, cw, "node_a", true, 0));
    c.node_b = static_cast<int>(get_integer(jc, cw, "node_b", true, 0));
    c.length = get_number(jc, cw, "length", true, 0.0);
    if (jc.contains("alpha")) c.alpha = get_number(jc, cw, "alpha", true, 0.0);
    cells.push_back(c);
  }
  return GraphMesh::build(static_cast<int>(n_nodes), std::move(cells), std::move(coords));
}

TriMesh load_tri_mesh(const std::string& path) {
  const json j = parse_json(read_file(path), "tri mesh " + path);
  const std::string where = "tri mesh " + path;
  if (!j.is_object()) fail(where, "expected an object");
  check_keys(j, where, {"kind", "points", "triangles"});
  const std::string kind = get_string(j, where, "kind", false, "2d-tri");
  if (kind != "2d-tri") fail(where + ".kind", "expected 2d-tri");

  if (!j.contains("points")) fail(where + ".points", "missing required key");
  const json& jp = j.at("points");
  if (!jp.is_array()) fail(where + ".points", "expected an array");
  std::vector<std::array<double, 2>> points;
  for (std::size_t k = 0; k < jp.size(); ++k) {
    const json& v = jp.at(k);
    if (!v.is_array() || v.size() != 2 || !v.at(0).is_number() || !v.at(1).is_number())
      fail(where + ".points[" + std::to_string(k) + "]", "expected [x, y]");
    points.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  }

  if (!j.contains("triangles")) fail(where + ".triangles", "missing required key");
  const json& jt = j.at("triangles");
  if (!jt.is_array()) fail(where + ".triangles", "expected an array");
  std::vector<std::array<int, 3>> tris;
  for (std::size_t k = 0; k < jt.size(); ++k) {
    const json& v = jt.at(k);
    if (!v.is_array() || v.size() != 3 || !v.at(0).is_number_integer() ||
        !v.at(1).is_number_integer() || !v.at(2).is_number_integer())
      fail(where + ".triangles[" + std::to_string(k) + "]", "expected [i, j, k]");
    tris.push_back({v.at(0).get<int>(), v.at(1).get<int>(), v.at(2).get<int>()});
  }
  return TriMesh::build(points, tris);
}

std::vector<double> load_node_values(const std::string& path, int n_nodes) {
  const json j = parse_json(read_file(path), "node data " + path);
  if (!j.is_array()) throw ConfigError("config: node data " + path + ": expected an array");
  if (static_cast<long>(j.size()) != n_nodes)
    throw ConfigError("config: node data " + path + ": expected " + std::to_string(n_nodes) +
                      " entries, found " + std::to_string(j.size()));
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_number() || !std::isfinite(v.get<double>()))
      throw ConfigError("config: node data " + path + ": entries must be finite numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace dfvm
