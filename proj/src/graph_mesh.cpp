#include "graph_mesh.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dfvm {

GraphMesh GraphMesh::build(int n_nodes, std::vector<GraphCell> cells, std::vector<double> coords) {
  if (n_nodes < 2) throw MeshError("graph mesh: need at least 2 nodes");
  if (cells.empty()) throw MeshError("graph mesh: need at least 1 cell");
  if (!coords.empty() && static_cast<int>(coords.size()) != n_nodes)
    throw MeshError("graph mesh: coords size does not match node count");

  GraphMesh m;
  m.inc_.resize(n_nodes);
  m.dual_.assign(n_nodes, 0.0);

  for (int k = 0; k < static_cast<int>(cells.size()); ++k) {
    const GraphCell& c = cells[k];
    if (c.node_a < 0 || c.node_a >= n_nodes || c.node_b < 0 || c.node_b >= n_nodes)
      throw MeshError("graph mesh: cell " + std::to_string(k) + " references a missing node");
    if (c.node_a == c.node_b)
      throw MeshError("graph mesh: cell " + std::to_string(k) + " repeats a node");
    if (!(std::isfinite(c.length) && c.length > 0.0))
      throw MeshError("graph mesh: cell " + std::to_string(k) + " has nonpositive length");
    if (c.alpha && !(std::isfinite(*c.alpha) && std::abs(*c.alpha) <= 1.5707963267948966))
      throw MeshError("graph mesh: cell " + std::to_string(k) + " alpha outside [-pi/2, pi/2]");
    // local x runs node_a -> node_b, so sigma = -1 at node_a, +1 at node_b
    m.inc_[c.node_a].push_back({k, c.node_b, -1});
    m.inc_[c.node_b].push_back({k, c.node_a, +1});
    m.dual_[c.node_a] += 0.5 * c.length;
    m.dual_[c.node_b] += 0.5 * c.length;
    m.total_ += c.length;
  }

  for (int i = 0; i < n_nodes; ++i)
    if (m.inc_[i].empty()) throw MeshError("graph mesh: node " + std::to_string(i) + " is dangling");

  // connectivity sweep over the incidence lists
  std::vector<char> seen(n_nodes, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (const GraphIncidence& e : m.inc_[i]) {
      if (!seen[e.neighbor]) {
        seen[e.neighbor] = 1;
        ++reached;
        stack.push_back(e.neighbor);
      }
    }
  }
  if (reached != n_nodes) throw MeshError("graph mesh: graph is disconnected");

  m.cells_ = std::move(cells);
  m.coords_ = std::move(coords);
  return m;
}

GraphMesh GraphMesh::uniform_chain(int n_nodes, double spacing, bool reversed) {
  if (n_nodes < 2) throw MeshError("graph mesh: chain needs at least 2 nodes");
  if (!(spacing > 0.0)) throw MeshError("graph mesh: chain spacing must be > 0");
  std::vector<GraphCell> cells;
  std::vector<double> coords;
  cells.reserve(n_nodes - 1);
  coords.reserve(n_nodes);
  for (int i = 0; i < n_nodes; ++i) coords.push_back(i * spacing);
  for (int i = 0; i + 1 < n_nodes; ++i) {
    if (reversed)
      cells.push_back({i + 1, i, spacing, std::nullopt});
    else
      cells.push_back({i, i + 1, spacing, std::nullopt});
  }
  return build(n_nodes, std::move(cells), std::move(coords));
}

double GraphMesh::node_coord(int i) const {
  if (i < 0 || i >= n_nodes() || coords_.empty())
    throw MeshError("graph mesh: node coordinate unavailable");
  return coords_[static_cast<std::size_t>(i)];
}

const GraphCell& GraphMesh::cell(int k) const {
  if (k < 0 || k >= n_cells()) throw MeshError("graph mesh: cell index out of range");
  return cells_[static_cast<std::size_t>(k)];
}

const std::vector<GraphIncidence>& GraphMesh::incidence(int i) const {
  if (i < 0 || i >= n_nodes()) throw MeshError("graph mesh: node index out of range");
  return inc_[static_cast<std::size_t>(i)];
}

double GraphMesh::dual_measure(int i) const {
  if (i < 0 || i >= n_nodes()) throw MeshError("graph mesh: node index out of range");
  return dual_[static_cast<std::size_t>(i)];
}

}  // namespace dfvm
