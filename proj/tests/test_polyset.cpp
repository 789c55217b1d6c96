// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#include <catch2/catch_amalgamated.hpp>
#include <fedef/fedef.hpp>
#include <random>

using namespace fedef;
using cells::CellKind;
using polyset::PolyFunction;
using polyset::PolySet;
using polyset::Term;
using polyset::TermPoly;

namespace
{
const std::vector<CellKind> all_kinds
    = {CellKind::interval,    CellKind::triangle,   CellKind::quadrilateral,
       CellKind::tetrahedron, CellKind::hexahedron, CellKind::prism,
       CellKind::pyramid};

std::size_t natural_dimension(CellKind kind, std::size_t k)
{
  switch (kind)
  {
  case CellKind::interval:
    return k + 1;
  case CellKind::triangle:
    return (k + 1) * (k + 2) / 2;
  case CellKind::quadrilateral:
    return (k + 1) * (k + 1);
  case CellKind::tetrahedron:
    return (k + 1) * (k + 2) * (k + 3) / 6;
  case CellKind::hexahedron:
    return (k + 1) * (k + 1) * (k + 1);
  case CellKind::prism:
    return (k + 1) * (k + 1) * (k + 2) / 2;
  case CellKind::pyramid:
    return (k + 1) * (k + 1) * (k + 1);
  default:
    return 0;
  }
}

PolyFunction scalar_from_terms(int tdim,
                               const std::vector<std::pair<Term, double>>& ts)
{
  TermPoly p;
  for (const auto& [t, c] : ts)
    p[t] = c;
  return polyset::make_scalar(tdim, p);
}

std::vector<Point> random_interior_points(CellKind kind, int count,
                                          unsigned seed)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  const int tdim = cells::topological_dimension(kind);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < count)
  {
    Point p{0, 0, 0};
    for (int d = 0; d < tdim; ++d)
      p[d] = unif(rng);
    bool inside = true;
    switch (kind)
    {
    case CellKind::triangle:
    case CellKind::prism:
      inside = p[0] + p[1] < 0.95;
      break;
    case CellKind::tetrahedron:
      inside = p[0] + p[1] + p[2] < 0.95;
      break;
    case CellKind::pyramid:
      inside = p[0] + p[2] < 0.95 and p[1] + p[2] < 0.95;
      break;
    default:
      break;
    }
    if (inside)
      pts.push_back(p);
  }
  return pts;
}
} // namespace

TEST_CASE("natural space dimensions match enumeration for k = 0..4")
{
  for (CellKind kind : all_kinds)
    for (std::size_t k = 0; k <= 4; ++k)
      CHECK(polyset::natural_space(kind, static_cast<int>(k)).size()
            == natural_dimension(kind, k));
}

TEST_CASE("natural space examples")
{
  CHECK(polyset::natural_space(CellKind::triangle, 2).size() == 6);
  PolySet p0 = polyset::natural_space(CellKind::interval, 0);
  REQUIRE(p0.size() == 1);
  CHECK(p0.function(0).evaluate({0.37, 0, 0})[0] == 1.0);

  // Degree-1 pyramid space: dimension 8; the function xy/(1-z) lies in its
  // span even though the generators carry (1-z)^(p0+p1) denominators.
  PolySet pyr = polyset::natural_space(CellKind::pyramid, 1);
  REQUIRE(pyr.size() == 8);
  PolyFunction target = scalar_from_terms(3, {{Term{{1, 1, 0}, 1}, 1.0}});
  PolySet target_set = polyset::make_set(CellKind::pyramid, {target});
  CHECK(verify::span_contains(pyr, target_set, verify::make_config(3)));
}

TEST_CASE("complete space")
{
  PolySet p21 = polyset::complete_space(2, 1);
  REQUIRE(p21.size() == 3);
  CHECK(polyset::complete_space(3, 2).size() == 10);
  CHECK(polyset::complete_space(1, 5).size() == 6);

  // Complete space is contained in every natural space of that dimension.
  for (CellKind kind : all_kinds)
  {
    const int tdim = cells::topological_dimension(kind);
    for (int k = 0; k <= 3; ++k)
    {
      PolySet complete = polyset::complete_space(tdim, k);
      complete.cell = kind;
      CHECK(verify::span_contains(polyset::natural_space(kind, k), complete,
                                  verify::make_config(k)));
    }
  }
}

TEST_CASE("pyramid Lagrange space")
{
  CHECK(polyset::pyramid_lagrange_space(0).size() == 1);
  CHECK(polyset::pyramid_lagrange_space(1).size() == 5);
  CHECK(polyset::pyramid_lagrange_space(2).size() == 14);
  for (int k = 0; k <= 4; ++k)
  {
    std::size_t expected = 0;
    for (std::size_t j = 1; j <= static_cast<std::size_t>(k) + 1; ++j)
      expected += j * j;
    CHECK(polyset::pyramid_lagrange_space(k).size() == expected);
  }

  // Contained in the natural space, strictly for k >= 1.
  for (int k = 0; k <= 3; ++k)
  {
    PolySet lag = polyset::pyramid_lagrange_space(k);
    PolySet nat = polyset::natural_space(CellKind::pyramid, k);
    auto cfg = verify::make_config(2 * k + 1);
    CHECK(verify::span_contains(nat, lag, cfg));
    if (k >= 1)
      CHECK_FALSE(verify::span_contains(lag, nat, cfg));
  }
}

TEST_CASE("evaluation")
{
  // span{1 - x, x} at {0, 1} is the identity table.
  PolySet set = polyset::make_set(
      CellKind::interval, {}, 1,
      {{TermPoly{{Term{{0, 0, 0}, 0}, 1.0}, {Term{{1, 0, 0}, 0}, -1.0}}},
       {TermPoly{{Term{{1, 0, 0}, 0}, 1.0}}}});
  Table t = polyset::evaluate(set, {{0, 0, 0}, {1, 0, 0}});
  CHECK(t(0, 0, 0) == 1.0);
  CHECK(t(0, 1, 0) == 0.0);
  CHECK(t(1, 0, 0) == 0.0);
  CHECK(t(1, 1, 0) == 1.0);

  // Term xy/(1-z) at (0.5, 0.5, 0.5) evaluates to 0.5.
  PolyFunction f = scalar_from_terms(3, {{Term{{1, 1, 0}, 1}, 1.0}});
  CHECK(f.evaluate({0.5, 0.5, 0.5})[0] == Catch::Approx(0.5));
  CHECK_THROWS_AS(f.evaluate({0.0, 0.0, 1.0}), std::domain_error);

  // x^2 at 0.5.
  PolyFunction g = scalar_from_terms(1, {{Term{{2, 0, 0}, 0}, 1.0}});
  CHECK(g.evaluate({0.5, 0, 0})[0] == Catch::Approx(0.25));
}

TEST_CASE("differentiation")
{
  // d/dx (x^2 y) = 2 x y.
  PolyFunction f = scalar_from_terms(2, {{Term{{2, 1, 0}, 0}, 1.0}});
  PolyFunction df = polyset::differentiate(f, 0);
  CHECK(df.evaluate({0.5, 2.0, 0})[0] == Catch::Approx(2.0));

  // curl2d of (-y, x) = 2.
  PolyFunction rot = polyset::make_function(
      {2}, 2,
      {TermPoly{{Term{{0, 1, 0}, 0}, -1.0}},
       TermPoly{{Term{{1, 0, 0}, 0}, 1.0}}});
  PolyFunction c = polyset::curl2d(rot);
  CHECK(c.evaluate({0.3, 0.7, 0})[0] == Catch::Approx(2.0));

  // d/dz of z/(1-z) = 1/(1-z) + z/(1-z)^2, against the closed form and a
  // central finite difference.
  PolyFunction h = scalar_from_terms(3, {{Term{{0, 0, 1}, 1}, 1.0}});
  PolyFunction dh = polyset::differentiate(h, 2);
  auto exact = [](double z)
  { return 1.0 / (1 - z) + z / ((1 - z) * (1 - z)); };
  for (double z : {0.1, 0.4, 0.6})
    CHECK(dh.evaluate({0, 0, z})[0] == Catch::Approx(exact(z)));
  const double eps = 1e-6, z0 = 0.3;
  const double fd
      = (h.evaluate({0, 0, z0 + eps})[0] - h.evaluate({0, 0, z0 - eps})[0])
        / (2 * eps);
  CHECK(dh.evaluate({0, 0, z0})[0] == Catch::Approx(fd).epsilon(1e-6));

  CHECK_THROWS_AS(polyset::differentiate(f, 2), std::domain_error);
  CHECK_THROWS_AS(polyset::curl2d(f), std::domain_error);
}

TEST_CASE("derivatives agree with central finite differences up to k = 4")
{
  for (CellKind kind : all_kinds)
  {
    PolySet space = polyset::natural_space(kind, 4);
    const auto points = random_interior_points(kind, 20, 1234);
    const int tdim = cells::topological_dimension(kind);
    for (std::size_t i = 0; i < space.size(); ++i)
    {
      PolyFunction f = space.function(i);
      for (int d = 0; d < tdim; ++d)
      {
        PolyFunction df = polyset::differentiate(f, d);
        for (const Point& p : points)
        {
          const double eps = 1e-6;
          Point hi = p, lo = p;
          hi[d] += eps;
          lo[d] -= eps;
          const double fd
              = (f.evaluate(hi)[0] - f.evaluate(lo)[0]) / (2 * eps);
          const double ex = df.evaluate(p)[0];
          CHECK(ex == Catch::Approx(fd).epsilon(1e-6).margin(1e-6));
        }
      }
    }
  }
}

TEST_CASE("div and curl3d wrappers")
{
  // div(x, y, z) = 3.
  PolyFunction v = polyset::make_function(
      {3}, 3,
      {TermPoly{{Term{{1, 0, 0}, 0}, 1.0}},
       TermPoly{{Term{{0, 1, 0}, 0}, 1.0}},
       TermPoly{{Term{{0, 0, 1}, 0}, 1.0}}});
  CHECK(polyset::divergence(v).evaluate({0.2, 0.4, 0.1})[0]
        == Catch::Approx(3.0));

  // curl3d(-y, x, 0) = (0, 0, 2).
  PolyFunction rot = polyset::make_function(
      {3}, 3,
      {TermPoly{{Term{{0, 1, 0}, 0}, -1.0}},
       TermPoly{{Term{{1, 0, 0}, 0}, 1.0}}, TermPoly{}});
  auto c = polyset::curl3d(rot).evaluate({0.1, 0.2, 0.3});
  CHECK(c[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(c[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(c[2] == Catch::Approx(2.0));
}

TEST_CASE("restriction")
{
  cells::ReferenceCell tri = cells::reference_cell(CellKind::triangle);

  // x^2 restricted to edge 1 (t -> (0, t)) vanishes.
  PolyFunction x2 = scalar_from_terms(2, {{Term{{2, 0, 0}, 0}, 1.0}});
  PolyFunction r1 = polyset::restrict(x2, cells::entity_map(tri, {1, 1}));
  for (double t : {0.0, 0.3, 1.0})
    CHECK(r1.evaluate({t, 0, 0})[0] == Catch::Approx(0.0).margin(1e-15));

  // (x^2, xy) restricted to edge 2 (t -> (t, 0)) is (t^2, 0).
  PolyFunction v = polyset::make_function(
      {2}, 2,
      {TermPoly{{Term{{2, 0, 0}, 0}, 1.0}},
       TermPoly{{Term{{1, 1, 0}, 0}, 1.0}}});
  PolyFunction r2 = polyset::restrict(v, cells::entity_map(tri, {1, 2}));
  for (double t : {0.0, 0.5, 1.0})
  {
    auto val = r2.evaluate({t, 0, 0});
    CHECK(val[0] == Catch::Approx(t * t).margin(1e-15));
    CHECK(val[1] == Catch::Approx(0.0).margin(1e-15));
  }

  // Constants restrict to constants.
  PolyFunction one = polyset::constant(2, 1.0);
  CHECK(polyset::restrict(one, cells::entity_map(tri, {1, 0}))
            .evaluate({0.7, 0, 0})[0]
        == Catch::Approx(1.0));
}

TEST_CASE("restriction commutes with evaluation")
{
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (CellKind kind :
       {CellKind::triangle, CellKind::quadrilateral, CellKind::tetrahedron,
        CellKind::hexahedron, CellKind::prism})
  {
    cells::ReferenceCell cell = cells::reference_cell(kind);
    PolySet space = polyset::natural_space(kind, 3);
    for (int dim = 1; dim <= cell.tdim; ++dim)
      for (int e = 0; e < cell.entity_count(dim); ++e)
      {
        cells::AffineMap m = cells::entity_map(cell, {dim, e});
        PolyFunction f = space.function(rng() % space.size());
        PolyFunction rf = polyset::restrict(f, m);
        for (int trial = 0; trial < 5; ++trial)
        {
          Point t{0, 0, 0};
          for (int d = 0; d < dim; ++d)
            t[d] = unif(rng);
          if (dim >= 2
              and cells::entity_kind(cell, {dim, e}) == CellKind::triangle
              and t[0] + t[1] > 1.0)
          {
            t[0] = 1.0 - t[0];
            t[1] = 1.0 - t[1];
          }
          const double direct = f.evaluate(m.apply(t))[0];
          CHECK(rf.evaluate(t)[0] == Catch::Approx(direct).margin(1e-12));
        }
      }
  }
}

TEST_CASE("orthonormal basis")
{
  // Interval degree 1: {1, sqrt(3)(2x - 1)}.
  PolySet on = polyset::orthonormal_basis(CellKind::interval, 1);
  REQUIRE(on.size() == 2);
  CHECK(on.function(0).evaluate({0.3, 0, 0})[0] == Catch::Approx(1.0));
  const double s3 = std::sqrt(3.0);
  CHECK(on.function(1).evaluate({1.0, 0, 0})[0] == Catch::Approx(s3));
  CHECK(on.function(1).evaluate({0.0, 0, 0})[0] == Catch::Approx(-s3));

  CHECK_THROWS_AS(polyset::orthonormal_basis(CellKind::pyramid, 2),
                  std::runtime_error);
}

TEST_CASE("orthonormal bases have identity Gram matrices")
{
  for (CellKind kind :
       {CellKind::interval, CellKind::triangle, CellKind::quadrilateral,
        CellKind::tetrahedron, CellKind::hexahedron, CellKind::prism})
  {
    const int k = kind == CellKind::interval ? 7 : 4;
    PolySet on = polyset::orthonormal_basis(kind, k);
    CHECK(on.size() == natural_dimension(kind, k));
    quadrature::QuadRule rule = quadrature::cell_rule(kind, 2 * k);
    Table vals = polyset::evaluate(on, rule.points);
    double worst = 0.0;
    for (std::size_t i = 0; i < on.size(); ++i)
      for (std::size_t j = i; j < on.size(); ++j)
      {
        double g = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q)
          g += rule.weights[q] * vals(i, q, 0) * vals(j, q, 0);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("independent rows and recombination")
{
  Eigen::MatrixXd m(3, 2);
  m << 1, 0, 0, 1, 1, 1;
  CHECK(polyset::independent_rows(m).size() == 2);

  PolySet p1 = polyset::complete_space(2, 1);
  Eigen::MatrixXd rec(3, 3);
  rec << 1, 1, 0, 0, 1, 0, 1, 1, 1;
  PolySet combo = polyset::recombine(p1, rec);
  CHECK(combo.size() == 3);
  CHECK(verify::spans_same_space(p1, combo, verify::make_config(1)));
}
