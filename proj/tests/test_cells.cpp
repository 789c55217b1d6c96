// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#include <catch2/catch_amalgamated.hpp>
#include <fedef/cells.hpp>

using namespace fedef;
using cells::CellKind;
using cells::EntityRef;

namespace
{
const std::vector<CellKind> all_kinds
    = {CellKind::interval,   CellKind::triangle, CellKind::quadrilateral,
       CellKind::tetrahedron, CellKind::hexahedron, CellKind::prism,
       CellKind::pyramid};
}

TEST_CASE("entity counts match the reference-cell catalogue")
{
  // {kind, vertices, edges, faces, volumes}
  const std::vector<std::pair<CellKind, std::array<int, 4>>> expected = {
      {CellKind::interval, {2, 1, 0, 0}},
      {CellKind::triangle, {3, 3, 1, 0}},
      {CellKind::quadrilateral, {4, 4, 1, 0}},
      {CellKind::tetrahedron, {4, 6, 4, 1}},
      {CellKind::hexahedron, {8, 12, 6, 1}},
      {CellKind::prism, {6, 9, 5, 1}},
      {CellKind::pyramid, {5, 8, 5, 1}},
  };
  for (const auto& [kind, counts] : expected)
  {
    cells::ReferenceCell cell = cells::reference_cell(kind);
    for (int dim = 0; dim < 4; ++dim)
      CHECK(cell.entity_count(dim) == counts[dim]);
    // Every entity's vertex indices are valid.
    for (int dim = 0; dim <= cell.tdim; ++dim)
      for (int i = 0; i < cell.entity_count(dim); ++i)
        for (int v : cell.entity_vertices({dim, i}))
        {
          CHECK(v >= 0);
          CHECK(v < static_cast<int>(cell.vertices.size()));
        }
  }
}

TEST_CASE("triangle topology matches the numbering convention")
{
  auto topo = cells::topology(CellKind::triangle);
  CHECK(topo[1][0] == std::vector<int>{1, 2});
  CHECK(topo[1][1] == std::vector<int>{0, 2});
  CHECK(topo[1][2] == std::vector<int>{0, 1});
}

TEST_CASE("interval topology")
{
  auto topo = cells::topology(CellKind::interval);
  REQUIRE(topo.size() == 2);
  CHECK(topo[0] == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(topo[1] == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("point cell is its own single entity")
{
  auto topo = cells::topology(CellKind::point);
  REQUIRE(topo.size() == 1);
  REQUIRE(topo[0].size() == 1);
}

TEST_CASE("entity names by codimension")
{
  CHECK(cells::entity_name(3, 1) == "facet");
  CHECK(cells::dimension_name(3 - 1) == "face");
  CHECK(cells::entity_name(2, 2) == "ridge");
  CHECK(cells::dimension_name(2 - 2) == "vertex");
  CHECK(cells::entity_name(1, 0) == "the cell");
  CHECK(cells::entity_name(3, 3) == "peak");
  CHECK_THROWS_AS(cells::entity_name(2, 3), std::domain_error);
}

TEST_CASE("entity closure")
{
  cells::ReferenceCell tri = cells::reference_cell(CellKind::triangle);
  auto closure = cells::entity_closure(tri, {1, 2});
  CHECK(closure
        == std::set<EntityRef>{{0, 0}, {0, 1}, {1, 2}});

  cells::ReferenceCell tet = cells::reference_cell(CellKind::tetrahedron);
  CHECK(cells::entity_closure(tet, {3, 0}).size() == 15);

  // A vertex's closure is itself.
  CHECK(cells::entity_closure(tet, {0, 2})
        == std::set<EntityRef>{{0, 2}});

  CHECK_THROWS_AS(cells::entity_closure(tri, {1, 7}), std::domain_error);
}

TEST_CASE("entity closure is idempotent and monotone")
{
  for (CellKind kind : all_kinds)
  {
    cells::ReferenceCell cell = cells::reference_cell(kind);
    for (int dim = 0; dim <= cell.tdim; ++dim)
      for (int i = 0; i < cell.entity_count(dim); ++i)
      {
        const EntityRef e{dim, i};
        auto closure = cells::entity_closure(cell, e);
        CHECK(closure.contains(e));
        std::set<EntityRef> twice;
        for (EntityRef f : closure)
        {
          auto inner = cells::entity_closure(cell, f);
          twice.insert(inner.begin(), inner.end());
        }
        CHECK(twice == closure);
      }
  }
}

TEST_CASE("entity maps hit the sub-entity vertices exactly")
{
  for (CellKind kind : all_kinds)
  {
    cells::ReferenceCell cell = cells::reference_cell(kind);
    for (int dim = 1; dim <= cell.tdim; ++dim)
      for (int i = 0; i < cell.entity_count(dim); ++i)
      {
        const EntityRef e{dim, i};
        cells::AffineMap m = cells::entity_map(cell, e);
        const auto ref_vts
            = cells::reference_vertices(cells::entity_kind(cell, e));
        const auto& vts = cell.entity_vertices(e);
        for (std::size_t v = 0; v < vts.size(); ++v)
        {
          Point image = m.apply(ref_vts[v]);
          for (int d = 0; d < 3; ++d)
            CHECK(image[d] == Catch::Approx(cell.vertices[vts[v]][d])
                                  .margin(1e-14));
        }
      }
  }
}

TEST_CASE("specific entity maps")
{
  cells::ReferenceCell tri = cells::reference_cell(CellKind::triangle);
  // Edge 1 joins vertices 0 and 2: t -> (0, t).
  cells::AffineMap m1 = cells::entity_map(tri, {1, 1});
  Point p = m1.apply({0.3, 0, 0});
  CHECK(p[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(p[1] == Catch::Approx(0.3));

  cells::ReferenceCell quad = cells::reference_cell(CellKind::quadrilateral);
  cells::AffineMap m0 = cells::entity_map(quad, {1, 0});
  p = m0.apply({0.3, 0, 0});
  CHECK(p[0] == Catch::Approx(0.3));
  CHECK(p[1] == Catch::Approx(0.0).margin(1e-15));

  cells::ReferenceCell line = cells::reference_cell(CellKind::interval);
  cells::AffineMap mid = cells::entity_map(line, {1, 0});
  CHECK(mid.apply({0.7, 0, 0})[0] == Catch::Approx(0.7));

  CHECK_THROWS_AS(cells::entity_map(tri, {0, 0}), std::domain_error);
}

TEST_CASE("lattice points")
{
  cells::ReferenceCell line = cells::reference_cell(CellKind::interval);
  auto pts = cells::lattice_points(line, 3);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0][0] == 0.0);
  CHECK(pts[1][0] == 0.5);
  CHECK(pts[2][0] == 1.0);

  cells::ReferenceCell tri = cells::reference_cell(CellKind::triangle);
  auto tpts = cells::lattice_points(tri, 3);
  REQUIRE(tpts.size() == 6);
  const std::vector<std::array<double, 2>> expected
      = {{0, 0}, {0.5, 0}, {1, 0}, {0, 0.5}, {0.5, 0.5}, {0, 1}};
  for (std::size_t i = 0; i < expected.size(); ++i)
  {
    CHECK(tpts[i][0] == expected[i][0]);
    CHECK(tpts[i][1] == expected[i][1]);
  }

  cells::ReferenceCell quad = cells::reference_cell(CellKind::quadrilateral);
  CHECK(cells::lattice_points(quad, 2).size() == 4);

  CHECK_THROWS_AS(cells::lattice_points(line, 1), std::invalid_argument);
}

TEST_CASE("lattice points lie inside the cell exactly")
{
  for (CellKind kind : all_kinds)
  {
    cells::ReferenceCell cell = cells::reference_cell(kind);
    for (int n : {2, 4, 7})
      for (bool boundary : {true, false})
        for (const Point& p : cells::lattice_points(cell, n, boundary))
        {
          // Recover the integer grid indices; generation divides by (n-1),
          // so the same division must reproduce the coordinate bit-exactly.
          const int den = n - 1;
          std::array<int, 3> idx{};
          for (int d = 0; d < 3; ++d)
          {
            idx[d] = static_cast<int>(std::lround(p[d] * den));
            REQUIRE(static_cast<double>(idx[d]) / den == p[d]);
          }
          CHECK(cells::impl::grid_point_inside(kind, idx[0], idx[1], idx[2],
                                               den, boundary));
        }
  }
}

TEST_CASE("pyramid lattice avoids the apex band")
{
  cells::ReferenceCell pyr = cells::reference_cell(CellKind::pyramid);
  for (const Point& p : cells::lattice_points(pyr, 5))
    CHECK(1.0 - p[2] >= 0.125);
}

TEST_CASE("facet normals point outward")
{
  for (CellKind kind : all_kinds)
  {
    cells::ReferenceCell cell = cells::reference_cell(kind);
    for (int i = 0; i < cell.entity_count(cell.tdim - 1); ++i)
    {
      Point n = cells::facet_normal(cell, {cell.tdim - 1, i});
      double norm = 0.0;
      for (int d = 0; d < 3; ++d)
        norm += n[d] * n[d];
      CHECK(norm == Catch::Approx(1.0));
    }
  }
  // Outwardness spot checks on the triangle.
  cells::ReferenceCell tri = cells::reference_cell(CellKind::triangle);
  Point n2 = cells::facet_normal(tri, {1, 2});
  CHECK(n2[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(n2[1] == Catch::Approx(-1.0));
  Point n0 = cells::facet_normal(tri, {1, 0});
  CHECK(n0[0] == Catch::Approx(std::sqrt(0.5)));
  CHECK(n0[1] == Catch::Approx(std::sqrt(0.5)));
}

TEST_CASE("custom vertex cells")
{
  cells::ReferenceCell biunit = cells::with_vertices(
      CellKind::interval, {Point{-1, 0, 0}, Point{1, 0, 0}});
  CHECK_FALSE(biunit.is_canonical());
  auto pts = cells::lattice_points(biunit, 3);
  CHECK(pts[0][0] == Catch::Approx(-1.0));
  CHECK(pts[1][0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(pts[2][0] == Catch::Approx(1.0));

  // Non-parallelogram quadrilaterals are not affine images.
  CHECK_THROWS_AS(cells::affine_correspondence(
                      CellKind::quadrilateral,
                      {Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0},
                       Point{2, 2, 0}},
                      2),
                  std::runtime_error);
}
