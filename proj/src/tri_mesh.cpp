#include "tri_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "errors.hpp"

namespace dfvm {

namespace {

using Pt = std::array<double, 2>;

double cross(const Pt& o, const Pt& p, const Pt& q) {
  return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
}

double dist(const Pt& p, const Pt& q) { return std::hypot(q[0] - p[0], q[1] - p[1]); }

// circumcenter of a nondegenerate triangle
Pt circumcenter(const Pt& a, const Pt& b, const Pt& c) {
  const double bx = b[0] - a[0], by = b[1] - a[1];
  const double cx = c[0] - a[0], cy = c[1] - a[1];
  const double den = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  return {a[0] + (cy * b2 - by * c2) / den, a[1] + (bx * c2 - cx * b2) / den};
}

double quad_area(const Pt& p0, const Pt& p1, const Pt& p2, const Pt& p3) {
  // shoelace; signed, so per-triangle sub-cell pieces tile exactly
  return 0.5 * ((p0[0] * p1[1] - p1[0] * p0[1]) + (p1[0] * p2[1] - p2[0] * p1[1]) +
                (p2[0] * p3[1] - p3[0] * p2[1]) + (p3[0] * p0[1] - p0[0] * p3[1]));
}

}  // namespace

TriMesh TriMesh::build(std::vector<Pt> points, std::vector<std::array<int, 3>> triangles,
                       bool strict_delaunay) {
  const int np = static_cast<int>(points.size());
  if (np < 3) throw MeshError("tri mesh: need at least 3 points");
  if (triangles.empty()) throw MeshError("tri mesh: need at least 1 triangle");

  {
    // duplicate points would produce zero-length edges
    std::vector<int> order(points.size());
    for (int i = 0; i < np; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      return points[static_cast<std::size_t>(i)] < points[static_cast<std::size_t>(j)];
    });
    for (std::size_t k = 1; k < order.size(); ++k)
      if (points[static_cast<std::size_t>(order[k - 1])] ==
          points[static_cast<std::size_t>(order[k])])
        throw MeshError("tri mesh: duplicate point " + std::to_string(order[k]));
  }

  TriMesh m;
  m.points_ = std::move(points);
  m.tris_ = std::move(triangles);
  m.tri_area_.resize(m.tris_.size());

  for (std::size_t k = 0; k < m.tris_.size(); ++k) {
    auto& t = m.tris_[k];
    for (int v : t)
      if (v < 0 || v >= np)
        throw MeshError("tri mesh: triangle " + std::to_string(k) + " references a missing point");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw MeshError("tri mesh: triangle " + std::to_string(k) + " repeats a point");
    const Pt &p0 = m.points_[static_cast<std::size_t>(t[0])],
             &p1 = m.points_[static_cast<std::size_t>(t[1])],
             &p2 = m.points_[static_cast<std::size_t>(t[2])];
    double twice = cross(p0, p1, p2);
    if (twice < 0.0) {  // re-orient counterclockwise
      std::swap(t[1], t[2]);
      twice = -twice;
    }
    const double scale = std::max({dist(p0, p1), dist(p1, p2), dist(p2, p0)});
    if (!(twice > 1e-12 * scale * scale))
      throw MeshError("tri mesh: triangle " + std::to_string(k) + " is degenerate");
    m.tri_area_[k] = 0.5 * twice;
    m.total_area_ += m.tri_area_[k];
  }

  // canonical edge table: for edge (a<b), a left triangle traverses a->b,
  // a right one traverses b->a
  struct EdgeTris {
    int left = -1, right = -1;
  };
  std::map<std::pair<int, int>, EdgeTris> table;
  for (std::size_t k = 0; k < m.tris_.size(); ++k) {
    const auto& t = m.tris_[k];
    for (int e = 0; e < 3; ++e) {
      const int u = t[static_cast<std::size_t>(e)], v = t[static_cast<std::size_t>((e + 1) % 3)];
      const bool fwd = u < v;
      auto& et = table[{std::min(u, v), std::max(u, v)}];
      int& slot = fwd ? et.left : et.right;
      if (slot != -1)
        throw MeshError("tri mesh: nonconforming edge (" + std::to_string(u) + "," +
                        std::to_string(v) + ")");
      slot = static_cast<int>(k);
    }
  }

  m.node_edges_.resize(static_cast<std::size_t>(np));
  m.edges_.reserve(table.size());
  std::vector<Pt> cc(m.tris_.size());
  for (std::size_t k = 0; k < m.tris_.size(); ++k)
    cc[k] = circumcenter(m.points_[static_cast<std::size_t>(m.tris_[k][0])],
                         m.points_[static_cast<std::size_t>(m.tris_[k][1])],
                         m.points_[static_cast<std::size_t>(m.tris_[k][2])]);

  for (const auto& [key, et] : table) {
    Edge e;
    e.a = key.first;
    e.b = key.second;
    const Pt &pa = m.points_[static_cast<std::size_t>(e.a)],
             &pb = m.points_[static_cast<std::size_t>(e.b)];
    e.d = dist(pa, pb);
    e.n1 = (pb[0] - pa[0]) / e.d;
    e.n2 = (pb[1] - pa[1]) / e.d;
    // signed circumcenter offsets along the left normal of a->b; a missing
    // side contributes the edge midpoint (offset 0)
    const Pt mid{0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])};
    const double ln1 = -e.n2, ln2 = e.n1;
    double s_left = 0.0, s_right = 0.0;
    if (et.left >= 0) {
      const Pt& c = cc[static_cast<std::size_t>(et.left)];
      s_left = (c[0] - mid[0]) * ln1 + (c[1] - mid[1]) * ln2;
    }
    if (et.right >= 0) {
      const Pt& c = cc[static_cast<std::size_t>(et.right)];
      s_right = (c[0] - mid[0]) * ln1 + (c[1] - mid[1]) * ln2;
    }
    e.facet_raw = s_left - s_right;
    e.facet = std::max(e.facet_raw, 0.0);
    if (e.facet_raw < -1e-12 * e.d) {
      const std::string msg = "tri mesh: negative Voronoi facet on edge (" + std::to_string(e.a) +
                              "," + std::to_string(e.b) + "): mesh is not Delaunay";
      if (strict_delaunay) throw MeshError(msg);
      m.warnings_.push_back(msg + "; clamped to 0");
      ++m.clamped_;
    }
    const int id = static_cast<int>(m.edges_.size());
    m.node_edges_[static_cast<std::size_t>(e.a)].push_back(id);
    m.node_edges_[static_cast<std::size_t>(e.b)].push_back(id);
    m.edges_.push_back(e);
  }

  for (int i = 0; i < np; ++i)
    if (m.node_edges_[static_cast<std::size_t>(i)].empty())
      throw MeshError("tri mesh: point " + std::to_string(i) + " is not used by any triangle");

  // Voronoi areas by signed per-triangle decomposition: the three sub-quads
  // (vertex, edge midpoint, circumcenter, edge midpoint) tile each triangle
  m.voronoi_.assign(static_cast<std::size_t>(np), 0.0);
  m.node_elements_.resize(static_cast<std::size_t>(np));
  for (std::size_t k = 0; k < m.tris_.size(); ++k) {
    const auto& t = m.tris_[k];
    const Pt &p0 = m.points_[static_cast<std::size_t>(t[0])],
             &p1 = m.points_[static_cast<std::size_t>(t[1])],
             &p2 = m.points_[static_cast<std::size_t>(t[2])];
    const Pt m01{0.5 * (p0[0] + p1[0]), 0.5 * (p0[1] + p1[1])};
    const Pt m12{0.5 * (p1[0] + p2[0]), 0.5 * (p1[1] + p2[1])};
    const Pt m20{0.5 * (p2[0] + p0[0]), 0.5 * (p2[1] + p0[1])};
    const Pt& c = cc[k];
    m.voronoi_[static_cast<std::size_t>(t[0])] += quad_area(p0, m01, c, m20);
    m.voronoi_[static_cast<std::size_t>(t[1])] += quad_area(p1, m12, c, m01);
    m.voronoi_[static_cast<std::size_t>(t[2])] += quad_area(p2, m20, c, m12);
    m.node_elements_[static_cast<std::size_t>(t[0])].push_back(
        {static_cast<int>(k), t[1], t[2]});
    m.node_elements_[static_cast<std::size_t>(t[1])].push_back(
        {static_cast<int>(k), t[2], t[0]});
    m.node_elements_[static_cast<std::size_t>(t[2])].push_back(
        {static_cast<int>(k), t[0], t[1]});
  }
  for (int i = 0; i < np; ++i) {
    const double a = m.voronoi_[static_cast<std::size_t>(i)];
    if (!(a > 0.0))
      throw MeshError("tri mesh: nonpositive dual area at point " + std::to_string(i) +
                      ": mesh is too far from Delaunay");
    m.total_voronoi_ += a;
  }
  return m;
}

TriMesh TriMesh::structured_right_strip(int nx, int ny, double h) {
  if (nx < 1 || ny < 1) throw MeshError("tri mesh: strip needs nx >= 1 and ny >= 1");
  if (!(h > 0.0)) throw MeshError("tri mesh: strip spacing must be > 0");
  std::vector<Pt> pts;
  pts.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int iy = 0; iy <= ny; ++iy)
    for (int ix = 0; ix <= nx; ++ix) pts.push_back({ix * h, iy * h});
  auto id = [nx](int ix, int iy) { return iy * (nx + 1) + ix; };
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const int p00 = id(ix, iy), p10 = id(ix + 1, iy);
      const int p01 = id(ix, iy + 1), p11 = id(ix + 1, iy + 1);
      tris.push_back({p00, p10, p01});
      tris.push_back({p10, p11, p01});
    }
  return build(std::move(pts), std::move(tris));
}

const std::array<double, 2>& TriMesh::point(int i) const {
  if (i < 0 || i >= n_points()) throw MeshError("tri mesh: point index out of range");
  return points_[static_cast<std::size_t>(i)];
}

const std::array<int, 3>& TriMesh::triangle(int k) const {
  if (k < 0 || k >= n_triangles()) throw MeshError("tri mesh: triangle index out of range");
  return tris_[static_cast<std::size_t>(k)];
}

double TriMesh::triangle_area(int k) const {
  if (k < 0 || k >= n_triangles()) throw MeshError("tri mesh: triangle index out of range");
  return tri_area_[static_cast<std::size_t>(k)];
}

double TriMesh::voronoi_area(int i) const {
  if (i < 0 || i >= n_points()) throw MeshError("tri mesh: point index out of range");
  return voronoi_[static_cast<std::size_t>(i)];
}

int TriMesh::degree(int i) const {
  if (i < 0 || i >= n_points()) throw MeshError("tri mesh: point index out of range");
  return static_cast<int>(node_edges_[static_cast<std::size_t>(i)].size());
}

const std::vector<int>& TriMesh::node_edges(int i) const {
  if (i < 0 || i >= n_points()) throw MeshError("tri mesh: point index out of range");
  return node_edges_[static_cast<std::size_t>(i)];
}

void TriMesh::edge_geometry(int i, int l, int* neighbor, double* d, double* n1, double* n2) const {
  const auto& ids = node_edges(i);
  if (l < 0 || l >= static_cast<int>(ids.size()))
    throw MeshError("tri mesh: local edge index out of range");
  const Edge& e = edges_[static_cast<std::size_t>(ids[static_cast<std::size_t>(l)])];
  const double sgn = (e.a == i) ? 1.0 : -1.0;
  if (neighbor) *neighbor = (e.a == i) ? e.b : e.a;
  if (d) *d = e.d;
  if (n1) *n1 = sgn * e.n1;
  if (n2) *n2 = sgn * e.n2;
}

double TriMesh::voronoi_facet(int i, int l) const {
  const auto& ids = node_edges(i);
  if (l < 0 || l >= static_cast<int>(ids.size()))
    throw MeshError("tri mesh: local edge index out of range");
  return edges_[static_cast<std::size_t>(ids[static_cast<std::size_t>(l)])].facet;
}

const std::vector<TriMesh::NodeElement>& TriMesh::node_elements(int i) const {
  if (i < 0 || i >= n_points()) throw MeshError("tri mesh: point index out of range");
  return node_elements_[static_cast<std::size_t>(i)];
}

}  // namespace dfvm
