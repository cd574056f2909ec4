#pragma once

#include <optional>
#include <vector>

namespace dfvm {

// One regular cell of the 1-D graph mesh. The cell's local x axis runs from
// node_a to node_b; with the exponentially fitted flux this means a positive
// sin(alpha) transports mass from node_a toward node_b.
struct GraphCell {
  int node_a = -1;
  int node_b = -1;
  double length = 0.0;
  std::optional<double> alpha;  // per-cell inclination override [rad]
};

struct GraphIncidence {
  int cell;      // incident cell index
  int neighbor;  // node at the cell's other end
  int sigma;     // +1 iff the cell's local x points toward this node
};

// Connected 1-D graph of regular cells (junction nodes allowed) plus the
// node-centered dual mesh: |S_i| = half the total length of incident cells.
class GraphMesh {
 public:
  // coords are optional arc-length metadata (empty, or one entry per node);
  // throws MeshError on invalid input (bad indices, nonpositive length,
  // dangling node, disconnected graph)
  static GraphMesh build(int n_nodes, std::vector<GraphCell> cells,
                         std::vector<double> coords = {});

  // n_nodes >= 2 nodes at spacing h; cells (i, i+1) or, when reversed,
  // (i+1, i) so that positive sin(alpha) transports toward descending x
  static GraphMesh uniform_chain(int n_nodes, double spacing, bool reversed = false);

  int n_nodes() const { return static_cast<int>(dual_.size()); }
  int n_cells() const { return static_cast<int>(cells_.size()); }
  bool has_coords() const { return !coords_.empty(); }
  double node_coord(int i) const;
  const GraphCell& cell(int k) const;
  const std::vector<GraphIncidence>& incidence(int i) const;
  double dual_measure(int i) const;
  double total_measure() const { return total_; }

 private:
  std::vector<double> coords_;
  std::vector<GraphCell> cells_;
  std::vector<std::vector<GraphIncidence>> inc_;
  std::vector<double> dual_;
  double total_ = 0.0;
};

}  // namespace dfvm
