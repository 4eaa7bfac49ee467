#include <gtest/gtest.h>

#include <chrono>

#include "linkpack/packing.hpp"

using namespace linkpack;

namespace {

std::int64_t brute_force_count(double rho, double pitch) {
  // Count lattice sites k * pitch, k >= 0, for which a 3 rho x 2 rho x 2 rho box fits in [0, 1].
  std::int64_t total = 1;
  for (double extent : {3 * rho, 2 * rho, 2 * rho}) {
    std::int64_t n = 0;
    while (n * pitch + extent <= 1.0 + 1e-9) ++n;
    total *= n;
  }
  return total;
}

}  // namespace

TEST(Generation0, CountsMatchBruteForce) {
  for (double eps : {0.05, 0.025, 0.0125, 0.04, 0.03}) {
    const Generation g = generation0(eps);
    EXPECT_EQ(g.count, brute_force_count(2 * eps, 8 * eps)) << eps;
    EXPECT_EQ(static_cast<std::int64_t>(g.links.size()), g.count);
  }
  EXPECT_EQ(generation0(0.05).count, 18);
  EXPECT_EQ(generation0(0.025).count, 125);
  EXPECT_EQ(generation0(0.0125).count, 1000);
}

TEST(Generation0, LargeEpsilon) {
  EXPECT_EQ(generation0(0.2).count, 1);  // a single diagonal pair
  EXPECT_THROW(generation0(0.3), PreconditionError);
}

TEST(Generation0, VerifiesAtItsOwnEpsilon) {
  Packing p;
  p.epsilon = 0.025;
  p.generations.push_back(generation0(0.025));
  p.total_count = p.generations[0].count;
  const PackingReport r = verify_packing(p, 0.025);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.witness);
  EXPECT_GE(r.min_pair_distance, 0.025);
}

TEST(Multigeneration, RadiiAndDecay) {
  const Packing p = multigeneration(0.0125, 6);
  ASSERT_GE(p.generations.size(), 2u);
  double r = 0.0125;
  for (std::size_t i = 0; i < p.generations.size(); ++i) {
    EXPECT_NEAR(p.generations[i].radius, r, 1e-15);
    EXPECT_NEAR(p.generations[i].rho, 2 * r, 1e-15);
    r = 2 * r + 0.0125;
    if (i > 0) EXPECT_LE(p.generations[i].count, p.generations[i - 1].count / 8 + 8);
  }
  const double n0 = static_cast<double>(p.generations[0].count);
  EXPECT_LT(static_cast<double>(p.total_count), 8.0 / 7.0 * n0 + 6);
  EXPECT_TRUE(verify_packing(p, 0.0125).pass);
}

TEST(Multigeneration, SingleGenerationIsGeneration0) {
  const Packing p = multigeneration(0.05, 1);
  ASSERT_EQ(p.generations.size(), 1u);
  EXPECT_EQ(p.total_count, generation0(0.05).count);
  EXPECT_THROW(multigeneration(0.05, 0), PreconditionError);
}

TEST(VerifyPacking, CatchesMovedComponent) {
  Packing p = multigeneration(0.05, 1);
  // Replace pair 3 with one whose circles are only eps/2 apart.
  const PLLink tight = hopf_pair(Point3(0.5, 0.5, 0.5), 0.025).with_constraint("r", "b", 0.05);
  p.generations[0].links[3] = tight;
  const PackingReport r = verify_packing(p, 0.05);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->index, 3u);
  EXPECT_FALSE(r.pairs[3].ok);
}

TEST(VerifyPacking, CatchesOverlappingBoxes) {
  Packing p = multigeneration(0.05, 1);
  p.generations[0].links[1] = p.generations[0].links[0];
  const PackingReport r = verify_packing(p, 0.05);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness);
  ASSERT_TRUE(r.witness->other);
}

TEST(DensityFit, SyntheticCounts) {
  const DensityFit flat = density_fit(std::vector<DensitySample>{{0.1, 5}, {0.05, 5}, {0.025, 5}});
  EXPECT_NEAR(flat.exponent, 0.0, 1e-12);
  const DensityFit sq = density_fit(std::vector<DensitySample>{{0.1, 100}, {0.05, 400}, {0.025, 1600}});
  EXPECT_NEAR(sq.exponent, 2.0, 1e-12);
  EXPECT_NEAR(sq.r2, 1.0, 1e-12);
  EXPECT_THROW(density_fit(std::vector<DensitySample>{{0.1, 5}, {0.05, 5}}), PreconditionError);
}

TEST(DensityFit, LatticeExponentNearThree) {
  const DensityFit f = density_fit(std::vector<double>{0.05, 0.025, 0.0125});
  EXPECT_NEAR(f.exponent, 3.0, 0.3);
  EXPECT_THROW(density_fit(std::vector<double>{0.025, 0.05, 0.0125}), PreconditionError);
}

TEST(VerifyPacking, TenThousandPairsWithinBudget) {
  const auto start = std::chrono::steady_clock::now();
  const Packing p = multigeneration(0.005, 1);
  ASSERT_GE(p.total_count, 10000);
  EXPECT_TRUE(verify_packing(p, 0.005).pass);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 60.0);
}
