#pragma once

#include <array>
#include <string>
#include <vector>

namespace dfvm {

// Conforming 2-D triangulation with node-centered Voronoi dual cells.
// Facet lengths come from circumcenter geometry, so the mesh is expected to
// be Delaunay; negative facets are clamped to zero with a warning (or a hard
// error in strict mode) because they break the M-matrix structure.
class TriMesh {
 public:
  struct Edge {
    int a = -1, b = -1;      // node pair, a < b
    double d = 0.0;          // |P_b - P_a|
    double n1 = 0.0;         // unit vector a -> b
    double n2 = 0.0;
    double facet = 0.0;      // Voronoi facet length (clamped at 0)
    double facet_raw = 0.0;  // signed value before clamping
  };

  struct NodeElement {
    int tri;   // incident triangle
    int opp1;  // the two other nodes, counterclockwise after this node
    int opp2;
  };

  static TriMesh build(std::vector<std::array<double, 2>> points,
                       std::vector<std::array<int, 3>> triangles, bool strict_delaunay = false);

  // (nx+1) x (ny+1) lattice at spacing h, every square split by the same
  // diagonal into two right isoceles triangles; node id = iy*(nx+1) + ix
  static TriMesh structured_right_strip(int nx, int ny, double h);

  int n_points() const { return static_cast<int>(points_.size()); }
  int n_triangles() const { return static_cast<int>(tris_.size()); }
  const std::array<double, 2>& point(int i) const;
  const std::array<int, 3>& triangle(int k) const;  // counterclockwise
  double triangle_area(int k) const;
  double total_area() const { return total_area_; }
  double voronoi_area(int i) const;
  double total_voronoi_area() const { return total_voronoi_; }

  const std::vector<Edge>& edges() const { return edges_; }
  int degree(int i) const;                          // number of incident edges
  const std::vector<int>& node_edges(int i) const;  // incident edge ids
  // geometry of the l-th incident edge as seen from node i (unit vector
  // points away from i; flips sign when queried from the other endpoint)
  void edge_geometry(int i, int l, int* neighbor, double* d, double* n1, double* n2) const;
  double voronoi_facet(int i, int l) const;
  const std::vector<NodeElement>& node_elements(int i) const;

  int clamped_facet_count() const { return clamped_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<std::array<double, 2>> points_;
  std::vector<std::array<int, 3>> tris_;
  std::vector<double> tri_area_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> node_edges_;
  std::vector<std::vector<NodeElement>> node_elements_;
  std::vector<double> voronoi_;
  std::vector<std::string> warnings_;
  double total_area_ = 0.0;
  double total_voronoi_ = 0.0;
  int clamped_ = 0;
};

}  // namespace dfvm
