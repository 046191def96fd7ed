#include <gtest/gtest.h>

#include <random>

#include "mobius/arith.hpp"
#include "mobius/errors.hpp"
#include "mobius/square_wave.hpp"
#include "mobius/walsh.hpp"
#include "oracles.hpp"

using namespace mobius;
using namespace mobius::walsh;

TEST(BitIndexSet, Basics) {
  const auto s = BitIndexSet::from_indices(10, std::vector<unsigned>{3, 9});
  EXPECT_EQ(s.mask(), (1u << 2) | (1u << 8));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(4));
  EXPECT_EQ(s.indices(), (std::vector<unsigned>{3, 9}));
  EXPECT_EQ(s.to_string(), "{3,9}");
  EXPECT_EQ(BitIndexSet(4, 0).to_string(), "{}");
  EXPECT_THROW(BitIndexSet(3, 8), std::out_of_range);
  EXPECT_THROW(BitIndexSet::from_indices(3, std::vector<unsigned>{0}), std::out_of_range);
}

TEST(Fwht, ConstantAndSingleCharacter) {
  const std::vector<std::int8_t> one(64, 1);
  const auto s = fwht<std::int8_t>(one);
  EXPECT_EQ(s.numerator(0), 64);
  for (std::uint64_t m = 1; m < 64; ++m) EXPECT_EQ(s.numerator(m), 0);

  std::vector<std::int8_t> chi(64);
  for (std::uint64_t x = 0; x < 64; ++x) chi[x] = (x & 1) ? -1 : 1;
  const auto c = fwht<std::int8_t>(chi);
  EXPECT_EQ(c.coefficient(1), (ExactRatio{1, 1}));
  for (std::uint64_t m = 0; m < 64; ++m)
    if (m != 1) EXPECT_EQ(c.numerator(m), 0);
}

TEST(Fwht, MatchesDirectSummationAtN12) {
  const auto f = oracle::random_signs(1u << 12, 7);
  const auto s = fwht<std::int8_t>(f);
  for (std::uint64_t m = 0; m < f.size(); ++m) ASSERT_EQ(s.numerator(m), oracle::walsh_numerator(f, m));
}

TEST(Fwht, ParsevalExactForSignTables) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = oracle::random_signs(1u << 10, seed);
    const auto s = fwht<std::int8_t>(f);
    EXPECT_EQ(s.energy(), static_cast<unsigned __int128>(f.size()) * f.size());
  }
}

TEST(Fwht, InvolutionUpToScale) {
  const auto mu = arith::sieve(12);
  std::vector<std::int64_t> data(mu.values().begin(), mu.values().end());
  butterfly(data);
  butterfly(data);
  for (std::uint64_t x = 0; x < mu.size(); ++x)
    ASSERT_EQ(data[x], static_cast<std::int64_t>(mu.size()) * mu[x]);
}

TEST(Fwht, RejectsBadLengthsAndOverflow) {
  const std::vector<std::int8_t> three(3, 1);
  EXPECT_THROW(fwht<std::int8_t>(three), std::invalid_argument);
  const std::vector<std::int64_t> huge(4, std::int64_t{1} << 62);
  EXPECT_THROW(fwht<std::int64_t>(huge), CapacityError);
}

TEST(WalshCoefficient, EmptySetIsMertensMean) {
  const auto mu = arith::sieve(14);
  const auto c = walsh_coefficient(mu.values(), BitIndexSet(14, 0));
  EXPECT_EQ(c.num, oracle::mertens(mu.size() - 1));
  EXPECT_EQ(c.den, mu.size());
}

TEST(WalshCoefficient, AgreesWithFwhtOnRandomPairs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int8_t> f(1u << 10);
    for (auto& v : f) v = static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1);
    const std::uint64_t mask = rng() % f.size();
    const auto s = fwht<std::int8_t>(f);
    ASSERT_EQ(walsh_coefficient<std::int8_t>(f, BitIndexSet(10, mask)), s.coefficient(mask));
  }
}

TEST(WalshViaPsi, SquareWaveIsTheDigitCharacter) {
  for (unsigned i = 1; i <= 16; ++i)
    for (std::uint64_t x = 0; x < (1u << 16); ++x)
      ASSERT_EQ(smoothing::square_wave_dyadic(x, i), arith::digit(x, i) ? -1 : 1);
  // The rational route agrees with the integer one.
  for (unsigned i = 1; i <= 6; ++i)
    for (std::uint64_t x = 0; x < 256; ++x)
      ASSERT_EQ(smoothing::square_wave(Rational(x, BigInt(1) << i)), smoothing::square_wave_dyadic(x, i));
}

TEST(WalshViaPsi, EqualsWalshCoefficient) {
  const std::vector<std::int8_t> one(1u << 8, 1);
  EXPECT_EQ(walsh_via_psi<std::int8_t>(one, BitIndexSet(8, 2)).num, 0);

  const auto mu = arith::sieve(16);
  const auto s = BitIndexSet::from_indices(16, std::vector<unsigned>{3, 9});
  EXPECT_EQ(walsh_via_psi(mu.values(), s), walsh_coefficient(mu.values(), s));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_signs(1u << 12, rng());
    const BitIndexSet set(12, rng() % 4096);
    ASSERT_EQ(walsh_via_psi<std::int8_t>(f, set), walsh_coefficient<std::int8_t>(f, set));
  }
}

TEST(TailMass, Edges) {
  const auto f = oracle::random_signs(1u << 8, 5);
  const auto s = fwht<std::int8_t>(f);
  EXPECT_EQ(tail_mass(s, 8).num, 0);
  std::int64_t sum = 0;
  for (auto v : f) sum += v;
  // t = 0: 1 - mean^2, exactly.
  const auto t0 = tail_mass(s, 0);
  EXPECT_EQ(t0, (ExactRatio{256 * 256 - sum * sum, 256 * 256}));
  const std::vector<std::int8_t> one(256, 1);
  EXPECT_EQ(tail_mass(fwht<std::int8_t>(one), 0).num, 0);
}

TEST(TailMass, MatchesDirectSum) {
  const auto mu = arith::sieve(10);
  const auto s = fwht<std::int8_t>(mu.values());
  for (unsigned t = 0; t <= 10; ++t) {
    std::int64_t tail = 0;
    for (std::uint64_t m = 0; m < s.size(); ++m)
      if (static_cast<unsigned>(std::popcount(m)) > t) tail += s.numerator(m) * s.numerator(m);
    EXPECT_EQ(tail_mass(s, t), (ExactRatio{tail, s.size() * s.size()}));
  }
}

TEST(MuWalshDecay, ShapeAndWitnesses) {
  const auto mu = arith::sieve(12);
  const auto rows = mu_walsh_decay(mu);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0].max_abs_numerator, std::llabs(oracle::mertens(mu.size() - 1)));
  for (const auto& r : rows) {
    EXPECT_LE(r.max_abs_numerator, static_cast<std::int64_t>(mu.size()));
    EXPECT_EQ(static_cast<unsigned>(std::popcount(r.witness_mask)), r.degree);
    EXPECT_EQ(std::llabs(oracle::walsh_numerator(std::vector<std::int8_t>(mu.values().begin(), mu.values().end()),
                                                 r.witness_mask)),
              r.max_abs_numerator);
  }
}
