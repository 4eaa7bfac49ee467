#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

#include "linkpack/magnus.hpp"
#include "oracles.hpp"

using namespace linkpack;

namespace {

Word random_word(std::mt19937_64& rng, int v, int len) {
  std::vector<Letter> letters;
  for (int i = 0; i < len; ++i) {
    letters.push_back({1 + static_cast<int>(rng() % v), (rng() & 1) ? 1 : -1});
  }
  return Word(std::move(letters));
}

oracle::PolyMap as_map(const IntPoly& p) {
  oracle::PolyMap out;
  const auto& t = p.table();
  for (int i = 0; i < t.size(); ++i) {
    const long long c = p.coefficients()[i].convert_to<long long>();
    if (c != 0) out[t.monomial(i)] = c;
  }
  return out;
}

IntPoly random_poly(std::mt19937_64& rng, int v, bool unit_constant) {
  IntPoly p(v);
  const auto& t = p.table();
  for (int i = 0; i < t.size(); ++i) {
    p.set(t.monomial(i), BigInt(static_cast<int>(rng() % 7) - 3));
  }
  if (unit_constant) p.set(std::vector<int>{}, BigInt((rng() & 1) ? 1 : -1));
  return p;
}

}  // namespace

TEST(Word, ParseReduceInvert) {
  const Word w = Word::parse("1 2 -2 -1 3");
  EXPECT_EQ(w.size(), 5u);
  EXPECT_EQ(w.reduced(), Word::parse("3"));
  EXPECT_EQ((w * w.inverse()).reduced(), Word());
  EXPECT_EQ(Word::generator(2, -3).to_string(), "-2 -2 -2");
  EXPECT_THROW(Word::parse("1 x"), PreconditionError);
  EXPECT_THROW(Word::parse("0"), PreconditionError);
}

TEST(Word, RelabelDropsZeros) {
  const Word w = Word::parse("1 2 -3 -1");
  const int mapping[] = {0, 2, 0, 1};
  EXPECT_EQ(w.relabeled(mapping), Word::parse("2 -1 -2"));
}

TEST(Word, ExponentSums) {
  const Word w = Word::parse("1 2 -1 1 1 -2 -2");
  const auto s = w.exponent_sums();
  ASSERT_GE(s.size(), 3u);
  EXPECT_EQ(s[1], 2);
  EXPECT_EQ(s[2], -1);
}

TEST(MonomialTable, SizeCountsInjectiveSequences) {
  // sum_k v!/(v-k)!
  EXPECT_EQ(MonomialTable::get(0).size(), 1);
  EXPECT_EQ(MonomialTable::get(3).size(), 16);
  EXPECT_EQ(MonomialTable::get(4).size(), 65);
  EXPECT_THROW(MonomialTable::get(7), PreconditionError);
}

TEST(MonomialTable, ConcurrentFirstUse) {
  std::vector<std::thread> threads;
  std::vector<const MonomialTable*> seen(8);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&seen, t] { seen[t] = &MonomialTable::get(5); });
  }
  for (auto& th : threads) th.join();
  for (auto* p : seen) EXPECT_EQ(p, seen[0]);
}

TEST(NRPoly, ProductMatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 4);
    const IntPoly a = random_poly(rng, v, false), b = random_poly(rng, v, false);
    EXPECT_EQ(as_map(a * b), oracle::poly_mul(as_map(a), as_map(b)));
  }
}

TEST(NRPoly, ExpansionMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 4);
    const Word w = random_word(rng, v, static_cast<int>(rng() % 12));
    EXPECT_EQ(as_map(expand(w, v, IntegerRing{})), oracle::magnus(w)) << w.to_string();
  }
}

TEST(NRPoly, MultiplyMeridianEqualsFullProduct) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int v = 4;
    IntPoly a = random_poly(rng, v, false);
    const int i = 1 + static_cast<int>(rng() % v);
    const int sign = (rng() & 1) ? 1 : -1;
    const IntPoly full = a * IntPoly::meridian(v, i, sign);
    a.multiply_meridian(i, sign);
    EXPECT_EQ(a, full);
  }
}

TEST(NRPoly, InverseIsTwoSided) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 5);
    const IntPoly a = random_poly(rng, v, true);
    EXPECT_TRUE((a * a.inverse()).is_one());
    EXPECT_TRUE((a.inverse() * a).is_one());
    const ModPoly m = reduce_mod(a, 5);
    EXPECT_TRUE((m * m.inverse()).is_one());
  }
}

TEST(NRPoly, ExpansionIsAHomomorphism) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Word a = random_word(rng, 3, 6), b = random_word(rng, 3, 6);
    EXPECT_EQ(expand(a * b, 3, IntegerRing{}), expand(a, 3, IntegerRing{}) * expand(b, 3, IntegerRing{}));
    EXPECT_EQ(expand(a.inverse(), 3, IntegerRing{}), expand(a, 3, IntegerRing{}).inverse());
  }
}

TEST(NRPoly, NonUnitConstantHasNoInverse) {
  IntPoly p = IntPoly::one(2);
  p.set(std::vector<int>{}, BigInt(2));
  EXPECT_THROW(p.inverse(), PreconditionError);
  EXPECT_THROW(IntPoly::one(2) * IntPoly::one(3), PreconditionError);
}

TEST(Mu, CommutatorCoefficients) {
  const IntPoly c = expand(commutator(Word::generator(1), Word::generator(2)), 2, IntegerRing{});
  const int s12[] = {1, 2}, s21[] = {2, 1}, s11[] = {1, 1};
  EXPECT_EQ(mu_coefficient(c, s12), 1);
  EXPECT_EQ(mu_coefficient(c, s21), -1);
  EXPECT_THROW(mu_coefficient(c, s11), PreconditionError);
}

TEST(CubeDivisibility, RandomMonicPolynomials) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    IntPoly g = random_poly(rng, 2, false);
    g.set(std::vector<int>{}, BigInt(1));
    EXPECT_TRUE(cube_divisibility(g));
    // The oracle's cube must agree coefficient by coefficient.
    const auto m = as_map(g);
    const auto cube = oracle::poly_mul(oracle::poly_mul(m, m), m);
    for (const auto& [mono, coeff] : cube) {
      if (!mono.empty()) EXPECT_EQ(coeff % 3, 0);
    }
  }
  EXPECT_THROW(cube_divisibility(IntPoly::one(3)), PreconditionError);
}

TEST(CubeDivisibility, FailsForSquares) {
  IntPoly g = IntPoly::one(2);
  g.set(std::vector<int>{1}, BigInt(1));
  const auto sq = as_map(g * g);
  EXPECT_EQ(sq.at({1}), 2);  // (1 + x)^2 = 1 + 2x: not divisible by 3
}

TEST(Filtration, LevelBoundsDegree) {
  for (std::int64_t p : {2, 3, 5}) {
    for (int level = 1; level <= 3; ++level) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Word w = random_lcs_element(level, p, 3, seed);
        const auto d = filtration_min_degree(w, p, 3);
        if (d) EXPECT_GE(*d, level);
      }
    }
  }
  EXPECT_FALSE(filtration_min_degree(random_lcs_element(3, 2, 2, 1), 2, 2).has_value());
  EXPECT_THROW(filtration_min_degree(Word::parse("1"), 4, 2), PreconditionError);
}

TEST(Filtration, PowersDropToHigherDegree) {
  // x^3 expands mod 3 to 1 + 3x + ... = 1 in the non-repeating ring.
  EXPECT_FALSE(filtration_min_degree(Word::generator(1, 3), 3, 2).has_value());
  EXPECT_EQ(filtration_min_degree(Word::generator(1, 2), 3, 2), 1);
}

TEST(BandSum, LongitudeCoefficientUnchanged) {
  std::mt19937_64 rng(31);
  const int seq[] = {2, 1, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const Word longitude = random_word(rng, 3, 10);
    const Word beta = random_lcs_element(4, 3, 3, rng());
    EXPECT_TRUE(band_sum_invariance(longitude, beta, 3, seq));
  }
  EXPECT_THROW(band_sum_invariance(Word::parse("1"), Word::parse("1 2"), 3, seq), PreconditionError);
}

TEST(MilnorRelator, ConjugatesOfOneMeridianCommute) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_TRUE(milnor_relator_check(random_word(rng, 3, 5), random_word(rng, 3, 5), 1 + trial % 3, 3));
  }
  // Distinct meridians do not commute.
  EXPECT_FALSE(expand(commutator(Word::generator(1), Word::generator(2)), 2, IntegerRing{}).is_one());
}

TEST(Expand, SmallWords) {
  const IntPoly m1 = expand(Word::generator(1), 2, IntegerRing{});
  EXPECT_EQ(as_map(m1), (oracle::PolyMap{{{}, 1}, {{1}, 1}}));
  EXPECT_TRUE(expand(Word::parse("1 -1"), 2, IntegerRing{}).is_one());
  const Word comm = Word::parse("1 2 -1 -2");
  const IntPoly c = expand(comm, 2, IntegerRing{});
  EXPECT_EQ(as_map(c), oracle::magnus(comm));
  EXPECT_EQ(as_map(c), (oracle::PolyMap{{{}, 1}, {{1, 2}, 1}, {{2, 1}, -1}}));
  EXPECT_EQ(mu_coefficient(c, std::span<const int>{}), 1);
}

TEST(CubeDivisibility, LinearAndNonMonic) {
  IntPoly g = IntPoly::one(2);
  g.set(std::vector<int>{1}, BigInt(1));
  EXPECT_TRUE(cube_divisibility(g));
  EXPECT_EQ(as_map(g * g * g), (oracle::PolyMap{{{}, 1}, {{1}, 3}}));
  IntPoly two = IntPoly::one(2);
  two.set(std::vector<int>{}, BigInt(2));
  EXPECT_THROW(cube_divisibility(two), PreconditionError);
}

TEST(Filtration, MeridianAndCommutator) {
  EXPECT_EQ(filtration_min_degree(Word::generator(1), 3, 2), 1);
  EXPECT_EQ(filtration_min_degree(Word::parse("1 2 -1 -2"), 2, 2), 2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_GE(filtration_min_degree(random_lcs_element(2, 3, 3, seed), 3, 3).value_or(99), 2);
  }
}

TEST(BandSum, RandomPairsAcrossPrimesAndDegrees) {
  std::mt19937_64 rng(53);
  int checked = 0;
  for (std::int64_t p : {2, 3, 5}) {
    for (int v = 1; v <= 3; ++v) {
      std::vector<int> seq(v);
      std::iota(seq.begin(), seq.end(), 1);
      for (int trial = 0; trial < 12; ++trial) {
        std::shuffle(seq.begin(), seq.end(), rng);
        const Word longitude = random_word(rng, v, 8);
        const Word beta = random_lcs_element(v + 1, p, v, rng());
        EXPECT_TRUE(band_sum_invariance(longitude, beta, p, seq));
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 100);
  const int one[] = {1};
  EXPECT_TRUE(band_sum_invariance(Word::generator(1, 2), Word::generator(1, 3), 3, one));
  EXPECT_THROW(band_sum_invariance(Word::generator(1, 2), Word::generator(1), 3, one), PreconditionError);
}

TEST(MilnorRelator, TrivialConjugatorsAndManyRandomOnes) {
  EXPECT_TRUE(milnor_relator_check(Word(), Word(), 1, 2));
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 1 + trial % 4;
    EXPECT_TRUE(milnor_relator_check(random_word(rng, v, 6), random_word(rng, v, 6), 1 + trial % v, v));
  }
  const Word g1 = Word::generator(1), g2 = Word::generator(2), c = Word::parse("2 1");
  EXPECT_FALSE(expand(commutator(c * g1 * c.inverse(), g2), 2, IntegerRing{}).is_one());
}
