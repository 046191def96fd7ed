#include <gtest/gtest.h>

#include <complex>

#include "mobius/arith.hpp"
#include "mobius/errors.hpp"
#include "mobius/parallel.hpp"
#include "oracles.hpp"

using namespace mobius;
using namespace mobius::arith;

TEST(Sieve, SmallValues) {
  const auto mu = sieve(5);
  EXPECT_EQ(mu[0], 0);
  EXPECT_EQ(mu[1], 1);
  EXPECT_EQ(mu[12], 0);
  EXPECT_EQ(mu[30], -1);
  const auto lambda = sieve(5, TableKind::liouville);
  EXPECT_EQ(lambda[0], 0);
  EXPECT_EQ(lambda[1], 1);
  EXPECT_EQ(lambda[12], -1);
}

TEST(Sieve, MatchesTrialDivisionUpTo1e5) {
  const auto mu = sieve(17);
  const auto lambda = sieve(17, TableKind::liouville);
  for (std::uint64_t x = 0; x <= 100000; ++x) {
    ASSERT_EQ(mu[x], oracle::mobius(x)) << x;
    ASSERT_EQ(lambda[x], oracle::liouville(x)) << x;
  }
}

TEST(Sieve, DoublingOddArgumentFlipsSign) {
  const auto mu = sieve(20);
  for (std::uint64_t x = 1; 2 * x < mu.size(); x += 2) ASSERT_EQ(mu[2 * x], -mu[x]) << x;
}

TEST(Sieve, CountsAndMertensAtN16) {
  const auto mu = sieve(4);
  const auto c = mu.counts();
  // zeros at 0, 4, 8, 9, 12
  EXPECT_EQ(c.zero, 5u);
  EXPECT_EQ(mu.total(), oracle::mertens(15));
  EXPECT_EQ(mu.total(), -1);
  EXPECT_EQ(sieve(4, TableKind::liouville).counts().zero, 1u);
}

TEST(Sieve, PrefixAndPartialSums) {
  const auto mu = sieve(12);
  const auto p = mu.prefix(8);
  ASSERT_EQ(p.size(), 256u);
  for (std::uint64_t x = 0; x < 256; ++x) ASSERT_EQ(p[x], mu[x]);
  EXPECT_EQ(mu.partial_sum(1000), oracle::mertens(1000));
}

TEST(Sieve, CapacityErrors) {
  EXPECT_THROW(sieve(0), CapacityError);
  EXPECT_THROW(sieve(31), CapacityError);
  EXPECT_THROW(sieve(10, TableKind::mobius, 8), CapacityError);
}

TEST(Sieve, ThreadCountDoesNotChangeResults) {
  parallel::set_thread_count(1);
  const auto a = sieve(18);
  parallel::set_thread_count(4);
  const auto b = sieve(18);
  parallel::set_thread_count(0);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST(Digit, Convention) {
  EXPECT_EQ(digit(6, 1), 0);
  EXPECT_EQ(digit(6, 2), 1);
  EXPECT_EQ(digit(6, 3), 1);
  for (unsigned i = 1; i <= 10; ++i) EXPECT_EQ(digit(0, i, 10), 0);
  EXPECT_THROW(digit(6, 0), std::out_of_range);
  EXPECT_THROW(digit(6, 4, 3), std::out_of_range);
  EXPECT_THROW(digit(8, 1, 3), std::out_of_range);
}

TEST(ResidueSums, AgreeWithDirectBuckets) {
  const auto mu = sieve(12);
  const auto sums = residue_sums(mu.values(), 5);
  for (std::uint64_t c = 0; c < 32; ++c) {
    std::int64_t s = 0;
    for (std::uint64_t x = c; x < mu.size(); x += 32) s += mu[x];
    ASSERT_EQ(sums[c], s);
  }
}

TEST(DecomposeOdd, Examples) {
  EXPECT_EQ(decompose_odd(5, 3), (OddDecomposition{0, 1}));
  EXPECT_EQ(decompose_odd(7, 3), (OddDecomposition{1, 0}));
  EXPECT_EQ(decompose_odd(1, 3), (OddDecomposition{0, 0}));
  EXPECT_THROW(decompose_odd(4, 5), DomainError);
  EXPECT_THROW(decompose_odd(3, 2), DomainError);
}

TEST(DecomposeOdd, RecomposesEveryOddResidueMod1024) {
  const unsigned t = 10;
  const std::uint64_t m = 1u << t;
  for (std::uint64_t x = 1; x < m; x += 2) {
    const auto d = decompose_odd(x, t);
    ASSERT_LT(d.five_exponent, m / 4);
    std::uint64_t y = 1;
    for (std::uint64_t e = 0; e < d.five_exponent; ++e) y = y * 5 % m;
    if (d.sign_exponent) y = (m - y) % m;
    ASSERT_EQ(y, x);
  }
}

TEST(Characters, PaperValues) {
  EXPECT_EQ(chi8()(3), std::complex<double>(-1, 0));
  EXPECT_EQ(chi8()(5), std::complex<double>(-1, 0));
  EXPECT_EQ(chi8()(7), std::complex<double>(1, 0));
  EXPECT_EQ(chi8()(1), std::complex<double>(1, 0));
  EXPECT_EQ(chi4()(3), std::complex<double>(-1, 0));
  EXPECT_EQ(chi4()(4), std::complex<double>(0, 0));
  EXPECT_EQ((chi4() * chi8()).real_value(3), 1);
}

TEST(Characters, RealPrimitiveList) {
  const auto list = real_primitive_characters();
  ASSERT_EQ(list.size(), 3u);
  for (const auto& chi : list) {
    EXPECT_TRUE(chi.is_real());
    for (std::uint64_t x = 1; x < 64; x += 2) {
      const auto v = chi(x);
      EXPECT_EQ(v.imag(), 0.0);
      EXPECT_EQ(std::abs(v.real()), 1.0);
    }
  }
  EXPECT_EQ(list[0], chi4());
  EXPECT_EQ(list[1], chi8());
  EXPECT_EQ(list[2], chi4() * chi8());
}

TEST(Characters, MultiplicativeExhaustive) {
  for (unsigned t = 1; t <= 10; ++t) {
    const std::uint64_t m = 1ULL << t;
    for (const auto& chi : enumerate_characters(t)) {
      for (std::uint64_t x = 1; x < m; x += 2)
        for (std::uint64_t y = 1; y < m; y += 2) {
          const auto lhs = chi(x * y % m);
          const auto rhs = chi(x) * chi(y);
          ASSERT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12) << chi.name() << " " << x << " " << y;
        }
      if (t >= 7) break;  // the full family is quadratic in 2^t; one per t suffices above
    }
  }
}

TEST(Characters, Orthogonality) {
  for (unsigned t = 1; t <= 8; ++t) {
    const auto chars = enumerate_characters(t);
    ASSERT_EQ(chars.size(), 1u << (t - 1));
    const std::uint64_t m = 1ULL << t;
    for (std::uint64_t x = 1; x < m; x += 2) {
      std::complex<double> s = 0;
      for (const auto& chi : chars) s += chi(x);
      const double expected = x == 1 ? static_cast<double>(m / 2) : 0.0;
      ASSERT_NEAR(s.real(), expected, 1e-9) << t << " " << x;
      ASSERT_NEAR(s.imag(), 0.0, 1e-9);
    }
  }
}

TEST(Characters, EvenArgumentsVanishAndRootsOfUnity) {
  const auto chars = enumerate_characters(6);
  for (const auto& chi : chars) {
    for (std::uint64_t x = 0; x < 200; x += 2) EXPECT_EQ(chi(x), std::complex<double>(0, 0));
    for (std::uint64_t x = 1; x < 200; x += 2) EXPECT_NEAR(std::abs(chi(x)), 1.0, 1e-12);
  }
}

TEST(TwistedMean, PrincipalModTwoAtN16) {
  // mu over odd x < 16: 1 -1 -1 -1 0 -1 -1 +1 = -3 (mu(11) = mu(13) = -1).
  const auto mu = sieve(4);
  std::int64_t s = 0;
  for (std::uint64_t x = 1; x < 16; x += 2) s += oracle::mobius(x);
  const auto r = twisted_mean(mu, principal_character(1));
  ASSERT_TRUE(r.exact.has_value());
  EXPECT_EQ(r.exact->num, s);
  EXPECT_EQ(r.exact->den, 16u);
  EXPECT_EQ(s, -3);
}

TEST(TwistedMean, ComplexCharacterMatchesDirectSum) {
  const auto mu = sieve(14);
  for (const auto& chi : enumerate_characters(6)) {
    std::complex<long double> s = 0;
    for (std::uint64_t x = 0; x < mu.size(); ++x) {
      const auto v = chi(x);
      s += static_cast<long double>(mu[x]) * std::complex<long double>(v.real(), v.imag());
    }
    s /= static_cast<long double>(mu.size());
    const auto r = twisted_mean(mu, chi);
    ASSERT_NEAR(r.mean.real(), static_cast<double>(s.real()), 1e-12) << chi.name();
    ASSERT_NEAR(r.mean.imag(), static_cast<double>(s.imag()), 1e-12) << chi.name();
    EXPECT_EQ(r.exact.has_value(), chi.is_real());
  }
}

TEST(TwistedMean, ZeroTable) {
  MuTable zero(4, TableKind::mobius, std::vector<std::int8_t>(16, 0));
  EXPECT_EQ(twisted_mean(zero, chi8()).mean, std::complex<double>(0, 0));
}
