#include <gtest/gtest.h>

#include <random>

#include "linkpack/certify.hpp"
#include "linkpack/homology.hpp"
#include "oracles.hpp"

using namespace linkpack;

namespace {

const Grid kGrid = tessellate(0.5);  // 8 cells per side, h = 0.125

Region region(const std::vector<std::array<int, 3>>& cubes) {
  Region r;
  r.color = 1;
  r.label = "test";
  for (const auto& c : cubes) r.cells.push_back(kGrid.linear({c[0], c[1], c[2]}));
  std::sort(r.cells.begin(), r.cells.end());
  return r;
}

std::vector<std::array<int, 3>> block(int nx, int ny, int nz) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) out.push_back({1 + i, 1 + j, 1 + k});
  return out;
}

/// 3x3x1 slab around the hole at (3,3,3).
std::vector<std::array<int, 3>> ring() {
  std::vector<std::array<int, 3>> out;
  for (int i = 2; i <= 4; ++i)
    for (int j = 2; j <= 4; ++j)
      if (i != 3 || j != 3) out.push_back({i, j, 3});
  return out;
}

std::vector<std::array<int, 3>> double_ring() {
  std::vector<std::array<int, 3>> out;
  for (int i = 1; i <= 5; ++i)
    for (int j = 2; j <= 4; ++j)
      if (j != 3 || (i != 2 && i != 4)) out.push_back({i, j, 3});
  return out;
}

void expect_matches_oracle(const std::vector<std::array<int, 3>>& cubes) {
  const CubicalComplex cx = build_complex(region(cubes), kGrid);
  const auto betti = oracle::cube_betti(cubes);
  EXPECT_EQ(cx.vertex_count(), betti.vertices);
  EXPECT_EQ(cx.edge_count(), betti.edges);
  EXPECT_EQ(cx.face_count(), betti.faces);
  EXPECT_TRUE((cx.boundary1() * cx.boundary2()).is_zero());
  const H1Basis basis = h1_basis(cx);
  EXPECT_EQ(basis.dim, betti.b1);
  for (const auto& z : basis.cycles) EXPECT_TRUE(cx.is_cycle(z));
}

}  // namespace

TEST(Z2Matrix, DuplicateEntriesCancel) {
  const Z2Matrix m(3, {{0, 1, 1}, {2}});
  EXPECT_TRUE(m.entry(0, 0));
  EXPECT_FALSE(m.entry(1, 0));
  EXPECT_TRUE(m.entry(2, 1));
}

TEST(Z2Matrix, ProductMatchesDense) {
  const Z2Matrix a(2, {{0}, {0, 1}, {1}});   // 2x3
  const Z2Matrix b(3, {{0, 1}, {1, 2}});     // 3x2
  const Z2Matrix p = a * b;                  // 2x2
  // column 0 of b hits a-cols 0,1 -> rows {0} + {0,1} = {1}
  EXPECT_FALSE(p.entry(0, 0));
  EXPECT_TRUE(p.entry(1, 0));
  // column 1 of b hits a-cols 1,2 -> {0,1} + {1} = {0}
  EXPECT_TRUE(p.entry(0, 1));
  EXPECT_FALSE(p.entry(1, 1));
}

TEST(CubicalComplex, TwoCellBlockCountsByEnumeration) {
  // Two unit cubes side by side: 12 vertices, 20 edges, 11 squares.
  const std::vector<std::array<int, 3>> cubes{{1, 1, 1}, {2, 1, 1}};
  const CubicalComplex cx = build_complex(region(cubes), kGrid);
  EXPECT_EQ(cx.vertex_count(), 12);
  EXPECT_EQ(cx.edge_count(), 20);
  EXPECT_EQ(cx.face_count(), 11);
  EXPECT_EQ(h1_basis(cx).dim, 0);
}

TEST(H1, BlockRingDoubleRingMatchOracle) {
  expect_matches_oracle(block(2, 2, 2));
  expect_matches_oracle(ring());
  expect_matches_oracle(double_ring());
  EXPECT_EQ(h1_basis(build_complex(region(ring()), kGrid)).dim, 1);
  EXPECT_EQ(h1_basis(build_complex(region(double_ring()), kGrid)).dim, 2);
}

TEST(H1, CellsMeetingAlongAnEdgeOnly) {
  // Four cubes around a vertical line, two diagonal pairs: a loop through
  // the shared edges.
  expect_matches_oracle({{1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {1, 2, 2}, {1, 2, 1}, {3, 3, 3}, {4, 4, 3}});
}

TEST(H1, RandomRegionsMatchOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::array<int, 3>> cubes;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 2; ++k)
          if (rng() % 100 < 55) cubes.push_back({1 + i, 1 + j, 1 + k});
    if (cubes.empty()) continue;
    expect_matches_oracle(cubes);
  }
}

TEST(H1, BasisIsDeterministic) {
  const CubicalComplex cx = build_complex(region(double_ring()), kGrid);
  EXPECT_EQ(h1_basis(cx), h1_basis(cx));
}

TEST(H1, EmptyRegionIsRejected) {
  EXPECT_THROW(build_complex(Region{}, kGrid), PreconditionError);
}

namespace {

const double h = kGrid.h;
const double c = 3.5 * h;  // centre of the ring's hole

PLCurve loop_around_hole(double r, double z) {
  return PLCurve("r", {{c - r, c - r, z}, {c + r, c - r, z}, {c + r, c + r, z}, {c - r, c + r, z}});
}

/// Goes twice around the hole, climbing slightly so it never meets itself.
PLCurve double_loop() {
  std::vector<Point3> v;
  const double r[2] = {0.7 * h, 1.2 * h};
  int step = 0;
  for (double radius : r) {
    for (auto [sx, sy] : {std::pair{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}) {
      v.emplace_back(c + sx * radius, c + sy * radius, 3.2 * h + 0.08 * h * step++);
    }
  }
  return PLCurve("r", v);
}

}  // namespace

TEST(SnapToCycle, LoopAroundHoleIsTheGenerator) {
  const CubicalComplex cx = build_complex(region(ring()), kGrid);
  const H1Basis basis = h1_basis(cx);
  for (double r : {0.6 * h, 1.0 * h, 1.3 * h}) {
    const EdgeChain z = snap_to_cycle(loop_around_hole(r, 3.5 * h), cx);
    EXPECT_TRUE(cx.is_cycle(z));
    EXPECT_EQ(coordinates(z, basis, cx).count(), 1u);
  }
}

TEST(SnapToCycle, DoubleLoopIsNullModTwo) {
  const CubicalComplex cx = build_complex(region(ring()), kGrid);
  const H1Basis basis = h1_basis(cx);
  const EdgeChain z = snap_to_cycle(double_loop(), cx);
  EXPECT_TRUE(cx.is_cycle(z));
  EXPECT_EQ(coordinates(z, basis, cx).count(), 0u);
}

TEST(SnapToCycle, DoubleRingDistinguishesHoles) {
  const CubicalComplex cx = build_complex(region(double_ring()), kGrid);
  const H1Basis basis = h1_basis(cx);
  auto around = [&](double cx0) {
    const double r = 0.8 * h, z = 3.5 * h, cy = 3.5 * h;
    return PLCurve("r", {{cx0 - r, cy - r, z}, {cx0 + r, cy - r, z}, {cx0 + r, cy + r, z}, {cx0 - r, cy + r, z}});
  };
  const Z2Vector left = coordinates(snap_to_cycle(around(2.5 * h), cx), basis, cx);
  const Z2Vector right = coordinates(snap_to_cycle(around(4.5 * h), cx), basis, cx);
  EXPECT_TRUE(left.any());
  EXPECT_TRUE(right.any());
  EXPECT_NE(left, right);
}

TEST(SnapToCycle, CurveOutsideRegionThrows) {
  const CubicalComplex cx = build_complex(region(ring()), kGrid);
  EXPECT_THROW(snap_to_cycle(loop_around_hole(2.5 * h, 3.5 * h), cx), PreconditionError);
}

constexpr double kH = 0.125;

TEST(CubicalComplex, SingleCube) {
  const CubicalComplex cx = build_complex(region({{4, 4, 4}}), kGrid);
  EXPECT_EQ(cx.vertex_count(), 8);
  EXPECT_EQ(cx.edge_count(), 12);
  EXPECT_EQ(cx.face_count(), 6);
}

TEST(H1, TwoDisjointRings) {
  std::vector<std::array<int, 3>> cubes = ring();
  for (const auto& q : ring()) cubes.push_back({q[0], q[1], q[2] - 3});
  expect_matches_oracle(cubes);
  EXPECT_EQ(h1_basis(build_complex(region(cubes), kGrid)).dim, 2);
}

TEST(SnapToCycle, LoopOnGridLinesKeepsItsEdges) {
  const CubicalComplex cx = build_complex(region(ring()), kGrid);
  const double z = 3 * kH;
  const PLCurve square("r", std::vector<Point3>{{2 * kH, 2 * kH, z}, {5 * kH, 2 * kH, z}, {5 * kH, 5 * kH, z}, {2 * kH, 5 * kH, z}});
  const EdgeChain chain = snap_to_cycle(square, cx);
  EXPECT_EQ(chain.count(), 12u);
  for (int s = 2; s < 5; ++s) {
    EXPECT_TRUE(chain[*cx.edge_index({s, 2, 3}, 0)]);
    EXPECT_TRUE(chain[*cx.edge_index({s, 5, 3}, 0)]);
    EXPECT_TRUE(chain[*cx.edge_index({2, s, 3}, 1)]);
    EXPECT_TRUE(chain[*cx.edge_index({5, s, 3}, 1)]);
  }
}

TEST(SnapToCycle, TinyCurveInOneCellIsEmpty) {
  const CubicalComplex cx = build_complex(region(ring()), kGrid);
  const double x = 2.5 * kH, z = 3.5 * kH;
  const PLCurve tiny("r", std::vector<Point3>{{x - 0.1 * kH, x, z}, {x + 0.1 * kH, x, z}, {x, x + 0.1 * kH, z}});
  EXPECT_TRUE(snap_to_cycle(tiny, cx).none());
}

TEST(SnapToCycle, SnappedCirclePreservesLinking) {
  const Grid g = tessellate(0.1);
  std::vector<Point3> v;
  for (int i = 0; i < 64; ++i) {
    const double t = 2 * M_PI * i / 64;
    v.emplace_back(0.5 + 0.2 * std::cos(t), 0.5 + 0.2 * std::sin(t), 0.5);
  }
  const PLLink link("circle", {PLCurve("r", v)});
  const CubicalComplex cx = build_complex(region_of(color_cells(g, link, {"r"}), "r"), g);
  const EdgeChain z = snap_to_cycle(link.components()[0], cx);
  const auto snapped = realize_chain(z, cx);
  const std::vector<Segment> threading{{{0.5, 0.5, 0.3}, {0.9, 0.5, 0.3}},
                                       {{0.9, 0.5, 0.3}, {0.9, 0.5, 0.7}},
                                       {{0.9, 0.5, 0.7}, {0.5, 0.5, 0.7}},
                                       {{0.5, 0.5, 0.7}, {0.5, 0.5, 0.3}}};
  const std::vector<Segment> distant{{{0.05, 0.05, 0.1}, {0.15, 0.05, 0.1}},
                                     {{0.15, 0.05, 0.1}, {0.1, 0.12, 0.1}},
                                     {{0.1, 0.12, 0.1}, {0.05, 0.05, 0.1}}};
  const auto original = link.components()[0].segments();
  EXPECT_TRUE(linking_mod2(original, threading));
  EXPECT_EQ(linking_mod2(snapped, threading), linking_mod2(original, threading));
  EXPECT_EQ(linking_mod2(snapped, distant), linking_mod2(original, distant));
}

TEST(Coordinates, BasisFacesAndSums) {
  const CubicalComplex cx = build_complex(region(double_ring()), kGrid);
  const H1Basis basis = h1_basis(cx);
  ASSERT_EQ(basis.dim, 2);
  for (int p = 0; p < 2; ++p) {
    Z2Vector unit(2);
    unit.set(p);
    EXPECT_EQ(coordinates(basis.cycles[p], basis, cx), unit);
  }
  EXPECT_TRUE(coordinates(cx.face_boundary(0), basis, cx).none());
  EXPECT_EQ(coordinates(basis.cycles[0] ^ basis.cycles[1], basis, cx).count(), 2u);
  EdgeChain open(cx.edge_count());
  open.set(0);
  EXPECT_THROW(coordinates(open, basis, cx), PreconditionError);
}
