#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "tri_mesh.hpp"

using namespace dfvm;

namespace {

TriMesh unit_right_triangle() {
  return TriMesh::build({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
}

const TriMesh::Edge* find_edge(const TriMesh& m, int a, int b) {
  if (a > b) std::swap(a, b);
  for (const auto& e : m.edges())
    if (e.a == a && e.b == b) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("single right triangle") {
  TriMesh m = unit_right_triangle();
  CHECK(m.n_points() == 3);
  CHECK(m.n_triangles() == 1);
  CHECK(m.triangle_area(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.total_area() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.edges().size() == 3);
  // Voronoi areas partition the triangle
  CHECK(m.total_voronoi_area() == doctest::Approx(0.5).epsilon(1e-13));
  for (int i = 0; i < 3; ++i) CHECK(m.voronoi_area(i) > 0.0);
}

TEST_CASE("triangle orientation is normalized to counterclockwise") {
  TriMesh cw = TriMesh::build({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 2, 1}});
  CHECK(cw.triangle_area(0) == doctest::Approx(0.5).epsilon(1e-15));
  const auto& t = cw.triangle(0);
  const auto& p0 = cw.point(t[0]);
  const auto& p1 = cw.point(t[1]);
  const auto& p2 = cw.point(t[2]);
  const double cross =
      (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
  CHECK(cross > 0.0);
}

TEST_CASE("unit square split along the diagonal") {
  TriMesh m = TriMesh::build({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}},
                             {{0, 1, 2}, {0, 2, 3}});
  CHECK(m.n_triangles() == 2);
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.edges().size() == 5);
  const TriMesh::Edge* diag = find_edge(m, 0, 2);
  REQUIRE(diag != nullptr);
  CHECK(diag->d == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // both circumcenters sit at the square's center: zero-length facet
  CHECK(diag->facet == doctest::Approx(0.0));
  CHECK(m.total_voronoi_area() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("4x4 structured grid on the unit square") {
  TriMesh m = TriMesh::structured_right_strip(4, 4, 0.25);
  CHECK(m.n_points() == 25);
  CHECK(m.n_triangles() == 32);
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-13));
  double s = 0.0;
  for (int i = 0; i < m.n_points(); ++i) s += m.voronoi_area(i);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("structured strip facet and area catalogue") {
  const double h = 0.1;
  TriMesh m = TriMesh::structured_right_strip(40, 4, h);
  REQUIRE(m.n_points() == 41 * 5);
  const auto id = [](int ix, int iy) { return iy * 41 + ix; };

  // interior horizontal and vertical edges carry facet h, diagonals 0,
  // boundary-parallel edges h/2 (cocircular right-triangle pairs)
  const TriMesh::Edge* horiz = find_edge(m, id(10, 2), id(11, 2));
  REQUIRE(horiz != nullptr);
  CHECK(horiz->facet == doctest::Approx(h).epsilon(1e-12));
  CHECK(horiz->d == doctest::Approx(h).epsilon(1e-14));
  CHECK(horiz->n1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(horiz->n2 == doctest::Approx(0.0));

  const TriMesh::Edge* vert = find_edge(m, id(10, 2), id(10, 3));
  REQUIRE(vert != nullptr);
  CHECK(vert->facet == doctest::Approx(h).epsilon(1e-12));
  CHECK(vert->n1 == doctest::Approx(0.0));

  const TriMesh::Edge* diag = find_edge(m, id(11, 2), id(10, 3));
  REQUIRE(diag != nullptr);
  CHECK(diag->facet == doctest::Approx(0.0));

  const TriMesh::Edge* bottom = find_edge(m, id(10, 0), id(11, 0));
  REQUIRE(bottom != nullptr);
  CHECK(bottom->facet == doctest::Approx(h / 2).epsilon(1e-12));

  // dual areas: interior h^2, edge h^2/2, corner h^2/4
  CHECK(m.voronoi_area(id(10, 2)) == doctest::Approx(h * h).epsilon(1e-12));
  CHECK(m.voronoi_area(id(10, 0)) == doctest::Approx(h * h / 2).epsilon(1e-12));
  CHECK(m.voronoi_area(id(0, 0)) == doctest::Approx(h * h / 4).epsilon(1e-12));
  CHECK(m.total_voronoi_area() == doctest::Approx(40 * 4 * h * h).epsilon(1e-12));
}

TEST_CASE("equilateral pair facet") {
  // two equilateral triangles of side s share an edge; the shared facet has
  // length s/sqrt(3) (circumcenters sit at the two centroids)
  const double s = 2.0;
  const double hgt = s * std::sqrt(3.0) / 2.0;
  TriMesh m = TriMesh::build({{0.0, 0.0}, {s, 0.0}, {s / 2, hgt}, {s / 2, -hgt}},
                             {{0, 1, 2}, {0, 3, 1}});
  const TriMesh::Edge* shared = find_edge(m, 0, 1);
  REQUIRE(shared != nullptr);
  CHECK(shared->facet == doctest::Approx(s / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("non-Delaunay pair clamps the negative facet") {
  // kite with apex height t = 0.45 < 0.5: both circumcenters fall on the far
  // sides of the shared edge, facet_raw = (t^2 - 1/4)/t = -19/180, while all
  // dual areas stay positive (a flatter kite would fail the area check too)
  std::vector<std::array<double, 2>> pts = {
      {0.0, 0.0}, {1.0, 0.0}, {0.5, 0.45}, {0.5, -0.45}};
  std::vector<std::array<int, 3>> tris = {{0, 1, 2}, {0, 3, 1}};

  TriMesh m = TriMesh::build(pts, tris);
  const TriMesh::Edge* e = find_edge(m, 0, 1);
  REQUIRE(e != nullptr);
  CHECK(e->facet == 0.0);
  CHECK(e->facet_raw == doctest::Approx(-19.0 / 180.0).epsilon(1e-12));
  CHECK(m.clamped_facet_count() == 1);
  CHECK(!m.warnings().empty());
  CHECK(m.voronoi_area(0) == doctest::Approx(0.0993055555555556).epsilon(1e-12));

  CHECK_THROWS_AS(TriMesh::build(pts, tris, /*strict_delaunay=*/true), MeshError);
}

TEST_CASE("edge_geometry flips sign across the edge") {
  TriMesh m = TriMesh::structured_right_strip(2, 1, 1.0);
  // pick any edge, query it from both endpoints
  for (int i = 0; i < m.n_points(); ++i) {
    for (int l = 0; l < m.degree(i); ++l) {
      int nb = -1;
      double d = 0.0, n1 = 0.0, n2 = 0.0;
      m.edge_geometry(i, l, &nb, &d, &n1, &n2);
      CHECK(std::hypot(n1, n2) == doctest::Approx(1.0).epsilon(1e-14));
      // locate the same edge from the neighbor
      bool found = false;
      for (int k = 0; k < m.degree(nb); ++k) {
        int nb2 = -1;
        double d2 = 0.0, m1 = 0.0, m2 = 0.0;
        m.edge_geometry(nb, k, &nb2, &d2, &m1, &m2);
        if (nb2 == i) {
          found = true;
          CHECK(d2 == doctest::Approx(d).epsilon(1e-15));
          CHECK(m1 == doctest::Approx(-n1).epsilon(1e-15));
          CHECK(m2 == doctest::Approx(-n2).epsilon(1e-15));
          CHECK(m.voronoi_facet(nb, k) == doctest::Approx(m.voronoi_facet(i, l)).epsilon(1e-15));
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("edge geometry pinned values") {
  // horizontal unit edge: d=1, n=(1,0); vertical: n=(0,1); 3-4-5 style direction
  TriMesh m = TriMesh::build({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
  const TriMesh::Edge* ex = find_edge(m, 0, 1);
  REQUIRE(ex != nullptr);
  CHECK(ex->d == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ex->n1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ex->n2 == doctest::Approx(0.0));
  const TriMesh::Edge* ey = find_edge(m, 0, 2);
  REQUIRE(ey != nullptr);
  CHECK(ey->n1 == doctest::Approx(0.0));
  CHECK(ey->n2 == doctest::Approx(1.0).epsilon(1e-15));

  TriMesh m2 = TriMesh::build({{0.0, 0.0}, {2.0, 0.0}, {3.0, 4.0}}, {{0, 1, 2}});
  const TriMesh::Edge* eh = find_edge(m2, 0, 2);
  REQUIRE(eh != nullptr);
  CHECK(eh->d == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(eh->n1 == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(eh->n2 == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("interior facet normals close up") {
  // sum of facet * outward-normal over an interior node's edges vanishes
  // (the Voronoi cell is a closed polygon)
  TriMesh m = TriMesh::structured_right_strip(4, 4, 0.5);
  const int interior = 2 * 5 + 2;  // node (2,2)
  REQUIRE(m.degree(interior) >= 4);
  double sx = 0.0, sy = 0.0;
  for (int l = 0; l < m.degree(interior); ++l) {
    int nb;
    double d, n1, n2;
    m.edge_geometry(interior, l, &nb, &d, &n1, &n2);
    const double L = m.voronoi_facet(interior, l);
    sx += L * n1;
    sy += L * n2;
  }
  CHECK(sx == doctest::Approx(0.0));
  CHECK(sy == doctest::Approx(0.0));
}

TEST_CASE("node_elements walk the incident triangles") {
  TriMesh m = TriMesh::structured_right_strip(2, 2, 1.0);
  const int center = 1 * 3 + 1;
  const auto& els = m.node_elements(center);
  CHECK(els.size() == 6);  // six triangles around the interior node
  for (const auto& ne : els) {
    const auto& t = m.triangle(ne.tri);
    const bool has_center = t[0] == center || t[1] == center || t[2] == center;
    CHECK(has_center);
    CHECK(ne.opp1 != center);
    CHECK(ne.opp2 != center);
  }
}

TEST_CASE("build rejects malformed triangulations") {
  using P = std::vector<std::array<double, 2>>;
  using T = std::vector<std::array<int, 3>>;
  // repeated vertex inside one triangle
  CHECK_THROWS_AS(TriMesh::build(P{{0, 0}, {1, 0}, {0, 1}}, T{{0, 1, 1}}), MeshError);
  // vertex index out of range
  CHECK_THROWS_AS(TriMesh::build(P{{0, 0}, {1, 0}, {0, 1}}, T{{0, 1, 3}}), MeshError);
  // degenerate (collinear) triangle
  CHECK_THROWS_AS(TriMesh::build(P{{0, 0}, {1, 0}, {2, 0}}, T{{0, 1, 2}}), MeshError);
  // duplicate points
  CHECK_THROWS_AS(TriMesh::build(P{{0, 0}, {1, 0}, {0, 1}, {1, 0}}, T{{0, 1, 2}, {0, 3, 2}}),
                  MeshError);
  // unused point
  CHECK_THROWS_AS(TriMesh::build(P{{0, 0}, {1, 0}, {0, 1}, {5, 5}}, T{{0, 1, 2}}), MeshError);
  // non-conforming: same edge shared by three triangles
  CHECK_THROWS_AS(TriMesh::build(P{{0, 0}, {1, 0}, {0, 1}, {0, -1}, {1, 1}},
                                 T{{0, 1, 2}, {0, 3, 1}, {0, 1, 4}}),
                  MeshError);
  // empty inputs
  CHECK_THROWS_AS(TriMesh::build(P{}, T{}), MeshError);
  // strip argument checks
  CHECK_THROWS_AS(TriMesh::structured_right_strip(0, 1, 1.0), MeshError);
  CHECK_THROWS_AS(TriMesh::structured_right_strip(1, 1, 0.0), MeshError);
}
