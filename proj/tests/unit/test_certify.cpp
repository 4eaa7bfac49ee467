#include <gtest/gtest.h>

#include <random>

#include "linkpack/certify.hpp"
#include "oracles.hpp"

using namespace linkpack;

namespace {

PLLink split_pair(double eps) {
  auto circle = [](double cx, const std::string& label) {
    std::vector<Point3> v;
    for (int i = 0; i < 32; ++i) {
      const double t = 2 * M_PI * i / 32;
      v.emplace_back(cx + 0.12 * std::cos(t), 0.5 + 0.12 * std::sin(t), 0.5 + 0.02 * std::sin(3 * t));
    }
    return PLCurve(label, v);
  };
  return PLLink("split", {circle(0.3, "r"), circle(0.7, "b")}, {{"r", "b", eps}});
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized().toRotationMatrix();
}

}  // namespace

TEST(Certificate, HopfPairPairsToOne) {
  for (double eps : {0.1, 0.2}) {
    const Certificate c = certificate(canonical_hopf(eps), "r", "b", eps);
    EXPECT_TRUE(c.eq1) << "eps " << eps;
    EXPECT_EQ(c.n_side, static_cast<int>(std::ceil(4 / eps - 1e-9)));
    EXPECT_GE(c.L.d, 1);
    EXPECT_GE(c.L.e, 1);
  }
}

TEST(Certificate, SplitPairHasZeroPairing) {
  const Certificate c = certificate(split_pair(0.1), "r", "b", 0.1);
  EXPECT_FALSE(c.eq1);
  EXPECT_EQ(c.x.count(), 1u);
  EXPECT_EQ(c.y.count(), 1u);
}

TEST(Certificate, ReproducibleAndSensitiveToPlacement) {
  const PLLink h = canonical_hopf(0.1);
  const Certificate a = certificate(h, "r", "b", 0.1);
  const Certificate b = certificate(h, "r", "b", 0.1);
  EXPECT_TRUE(certificates_equal(a, b));
  EXPECT_EQ(a.L, b.L);
  const PLLink moved = rigid_transform(h, Eigen::Matrix3d::Identity(), Eigen::Vector3d(0.1, 0.0, 0.0));
  EXPECT_FALSE(certificates_equal(a, certificate(moved, "r", "b", 0.1)));
}

TEST(Certificate, OffDiagonalOfItselfMatchesPairing) {
  const Certificate a = certificate(canonical_hopf(0.1), "r", "b", 0.1);
  EXPECT_EQ(off_diagonal_check(a, a), a.eq1);
  const Certificate s = certificate(split_pair(0.1), "r", "b", 0.1);
  EXPECT_THROW(off_diagonal_check(a, s), PreconditionError);
}

TEST(Certificate, GridMismatchIsAnError) {
  const Certificate a = certificate(canonical_hopf(0.1), "r", "b", 0.1);
  const Certificate b = certificate(canonical_hopf(0.1), "r", "b", 0.12);
  EXPECT_THROW(certificates_equal(a, b), PreconditionError);
}

TEST(Certificate, CloseCurvesFailAtPrecondition) {
  const PLLink h = canonical_hopf(0.05);
  try {
    certificate(h, "r", "b", 0.2);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "precondition");
    EXPECT_TRUE(e.is_constraint_violation());
  }
}

TEST(Certificate, UnknownLabelReportsStage) {
  try {
    certificate(canonical_hopf(0.1), "r", "green", 0.1);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "precondition");
    EXPECT_FALSE(e.is_constraint_violation());
  }
}

TEST(Bilinear, MatchesDenseProduct) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 5), e = 1 + static_cast<int>(rng() % 5);
    LinkingMatrix L{d, e, std::vector<Z2Vector>(d, Z2Vector(e))};
    Eigen::MatrixXi dense = Eigen::MatrixXi::Zero(d, e);
    Z2Vector x(d), y(e);
    Eigen::VectorXi xd = Eigen::VectorXi::Zero(d), yd = Eigen::VectorXi::Zero(e);
    for (int p = 0; p < d; ++p) {
      if (rng() & 1) { x.set(p); xd[p] = 1; }
      for (int q = 0; q < e; ++q) {
        if (rng() & 1) { L.rows[p].set(q); dense(p, q) = 1; }
      }
    }
    for (int q = 0; q < e; ++q) {
      if (rng() & 1) { y.set(q); yd[q] = 1; }
    }
    EXPECT_EQ(bilinear(x, L, y), (xd.transpose() * dense * yd) % 2 == 1);
  }
}

TEST(Bilinear, RejectsWrongLengths) {
  LinkingMatrix L{2, 2, {Z2Vector(2), Z2Vector(2)}};
  EXPECT_THROW(bilinear(Z2Vector(3), L, Z2Vector(2)), PreconditionError);
}

TEST(LinkingMod2, ChainsAgreeWithCurves) {
  const PLLink h = canonical_hopf(0.1);
  EXPECT_TRUE(linking_mod2(h.components()[0], h.components()[1]));
  const PLLink s = split_pair(0.1);
  EXPECT_FALSE(linking_mod2(s.components()[0], s.components()[1]));
}

TEST(LinkingInteger, InvariantUnderRotation) {
  const PLLink h = canonical_hopf(0.05);
  const int base = linking_integer(h.components()[0], h.components()[1]);
  std::mt19937_64 rng(99);
  const Eigen::Vector3d c(0.5, 0.5, 0.5);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Matrix3d R = random_rotation(rng);
    const PLLink t = rigid_transform(h, R, c - R * c);
    EXPECT_EQ(linking_integer(t.components()[0], t.components()[1]), base);
  }
}

TEST(DcCountBound, ExactAndLogAgree) {
  const CountBound b = dc_count_bound(5, 3);
  ASSERT_TRUE(b.exact.has_value());
  EXPECT_EQ(*b.exact, BigInt(243) * 64);
  EXPECT_NEAR(b.log_value, big_log(*b.exact), 1e-12 * b.log_value);
}

TEST(DcCountBound, LargeInputsGiveLogOnly) {
  const CountBound b = dc_count_bound(0.01);
  EXPECT_FALSE(b.exact.has_value());
  EXPECT_EQ(b.cells, 400LL * 400 * 400);
}

TEST(DcCountBound, HalvingEpsilonScalesLogByEight) {
  for (double eps : {0.1, 0.05, 0.02}) {
    const double ratio = dc_count_bound(eps / 2).log_value / dc_count_bound(eps).log_value;
    EXPECT_NEAR(ratio, 8.0, 0.4) << eps;
  }
}

namespace {

/// Curve b winds twice around the core circle a.
std::pair<PLCurve, PLCurve> double_wrap() {
  std::vector<Point3> core, wrap;
  for (int i = 0; i < 48; ++i) {
    const double t = 2 * M_PI * i / 48;
    core.emplace_back(0.5 + 0.2 * std::cos(t), 0.5 + 0.2 * std::sin(t), 0.5);
  }
  for (int i = 0; i < 144; ++i) {
    const double t = 2 * M_PI * i / 144;
    const double rad = 0.2 + 0.07 * std::cos(2 * t);
    wrap.emplace_back(0.5 + rad * std::cos(t), 0.5 + rad * std::sin(t), 0.5 + 0.07 * std::sin(2 * t));
  }
  return {PLCurve("a", core), PLCurve("b", wrap)};
}

}  // namespace

TEST(LinkingInteger, MatchesGaussIntegral) {
  const PLLink h = canonical_hopf(0.1);
  const auto [a, b] = double_wrap();
  const PLLink s = split_pair(0.1);
  const std::vector<std::pair<PLCurve, PLCurve>> cases{
      {h.components()[0], h.components()[1]}, {a, b}, {s.components()[0], s.components()[1]}};
  const int expected_abs[] = {1, 2, 0};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [p, q] = cases[i];
    const int lk = linking_integer(p, q);
    EXPECT_EQ(std::abs(lk), expected_abs[i]) << i;
    EXPECT_NEAR(oracle::gauss_linking(p.vertices(), q.vertices()), lk, 0.05) << i;
    EXPECT_EQ(linking_mod2(p, q), lk % 2 != 0) << i;
  }
}

TEST(LinkingMatrix, ContractibleRegionsGiveEmptyMatrix) {
  const Grid g = tessellate(0.5);
  Region r;
  r.color = 1;
  r.cells = {g.linear({1, 1, 1}), g.linear({1, 1, 2})};
  std::sort(r.cells.begin(), r.cells.end());
  Region b = r;
  b.color = 2;
  b.cells = {g.linear({5, 5, 5})};
  const CubicalComplex rc = build_complex(r, g), bc = build_complex(b, g);
  const LinkingMatrix L = linking_matrix(h1_basis(rc), rc, h1_basis(bc), bc);
  EXPECT_EQ(L.d, 0);
  EXPECT_EQ(L.e, 0);
  EXPECT_TRUE(L.rows.empty());
}

TEST(LinkingMatrix, HopfRegionsGiveOne) {
  const Certificate c = certificate(canonical_hopf(0.2), "r", "b", 0.2);
  ASSERT_EQ(c.L.d, 1);
  ASSERT_EQ(c.L.e, 1);
  EXPECT_TRUE(c.L.at(0, 0));
  EXPECT_EQ(c.x.count(), 1u);
  EXPECT_EQ(c.y.count(), 1u);
}

TEST(Certificate, ZeroCoordinatesPairToZero) {
  const Certificate a = certificate(canonical_hopf(0.1), "r", "b", 0.1);
  Certificate b = a;
  b.y.reset();
  EXPECT_FALSE(off_diagonal_check(a, b));
  Certificate flipped = a;
  flipped.x.flip(0);
  EXPECT_FALSE(certificates_equal(a, flipped));
}

TEST(DcCountBound, SmallExamples) {
  EXPECT_EQ(*dc_count_bound(1, 0).exact, 3);
  EXPECT_EQ(*dc_count_bound(8, 2).exact, 104976);
}
