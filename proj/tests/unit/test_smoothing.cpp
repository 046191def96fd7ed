#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "mobius/errors.hpp"
#include "mobius/smoothing.hpp"

using namespace mobius;
using namespace mobius::smoothing;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kPi = std::numbers::pi;
const double kEpsilons[] = {0.5, 0.25, 0.125};

// int over [a, b] of g(t) e(-r t), split at the given breakpoints.
template <class G>
std::complex<double> fourier_integral(G g, std::int64_t r, std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  double re = 0, im = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] <= cuts[k]) continue;
    re += gauss_kronrod<double, 61>::integrate(
        [&](double t) { return g(t) * std::cos(2 * kPi * r * t); }, cuts[k], cuts[k + 1], 15, 1e-13);
    im += gauss_kronrod<double, 61>::integrate(
        [&](double t) { return -g(t) * std::sin(2 * kPi * r * t); }, cuts[k], cuts[k + 1], 15, 1e-13);
  }
  return {re, im};
}

}  // namespace

TEST(SquareWave, Values) {
  EXPECT_EQ(square_wave(Rational(0)), 1);
  EXPECT_EQ(square_wave(Rational(1, 2)), -1);
  EXPECT_EQ(square_wave(Rational(-1, 4)), -1);
  EXPECT_EQ(square_wave(Rational(5, 4)), 1);
  EXPECT_EQ(square_wave(0.0), 1);
  EXPECT_EQ(square_wave(0.5), -1);
  EXPECT_EQ(square_wave(-0.25), -1);
}

TEST(Smoothed, DomainAndCutoff) {
  EXPECT_THROW(SmoothedSquareWave(0.0), std::domain_error);
  EXPECT_THROW(SmoothedSquareWave(0.6), std::domain_error);
  EXPECT_EQ(SmoothedSquareWave(0.5).cutoff(), 800u);
  EXPECT_EQ(SmoothedSquareWave(0.25).cutoff(), 6400u);
  EXPECT_EQ(SmoothedSquareWave(0.125).cutoff(), 51200u);
}

TEST(Smoothed, PhiHatMatchesQuadrature) {
  for (double eps : kEpsilons) {
    const SmoothedSquareWave w(eps);
    const double s = eps / 24;
    auto phi = [&](double t) { return static_cast<double>(square_wave(t + s)); };
    for (std::int64_t r = -9; r <= 9; ++r) {
      const auto q = fourier_integral(phi, r, {0.0, 0.5 - s, 1.0 - s, 1.0});
      ASSERT_NEAR(std::abs(q - w.phi_hat(r)), 0.0, 1e-10) << eps << " " << r;
    }
    for (std::int64_t r = -9; r <= 9; ++r) {
      const auto q = fourier_integral([](double t) { return static_cast<double>(square_wave(t)); }, r,
                                      {0.0, 0.5, 1.0});
      ASSERT_NEAR(std::abs(q - w.psi_hat(r)), 0.0, 1e-10) << r;
    }
  }
}

TEST(Smoothed, BoxHatMatchesQuadrature) {
  for (double eps : kEpsilons) {
    const SmoothedSquareWave w(eps);
    const double h = eps / 48;
    for (std::int64_t r = -40; r <= 40; r += 3) {
      const auto q = fourier_integral([&](double) { return 24 / eps; }, r, {-h, h});
      ASSERT_NEAR(q.real(), w.box_hat(r), 1e-10) << eps << " " << r;
      ASSERT_NEAR(q.imag(), 0.0, 1e-10);
    }
  }
}

TEST(Smoothed, Psi0ClosedFormIsTheConvolution) {
  for (double eps : kEpsilons) {
    const SmoothedSquareWave w(eps);
    const double s = eps / 24;  // half-width of box * box
    // psi0(t) = int phi(t - u) K(u) du with the triangle K of half-width s.
    for (double t : {0.0, 0.1, 0.49, 0.5 - s, 0.5 - 1.5 * s, 0.5 - 0.5 * s, 0.75, 1 - 1.2 * s, 1 - 0.3 * s}) {
      auto integrand = [&](double u) {
        const double k = (1 - std::abs(u) / s) / s;
        return static_cast<double>(square_wave(t - u + s)) * k;
      };
      std::vector<double> cuts{-s, 0.0, s};
      // jumps of u -> phi(t - u): t - u + s in {1/2, 1} mod 1
      for (double j : {0.5, 1.0, 0.0, 1.5})
        if (const double u = t + s - j; u > -s && u < s) cuts.push_back(u);
      std::sort(cuts.begin(), cuts.end());
      double direct = 0;
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        direct += gauss_kronrod<double, 61>::integrate(integrand, cuts[k], cuts[k + 1], 15, 1e-13);
      ASSERT_NEAR(w.psi0(t), direct, 1e-10) << eps << " " << t;
    }
  }
}

TEST(Smoothed, Psi0HatMatchesQuadratureOfPsi0) {
  for (double eps : kEpsilons) {
    const SmoothedSquareWave w(eps);
    const double s = eps / 24;
    std::vector<double> cuts{0.0, 1.0};
    for (double j : {0.5 - s, 1.0 - s})
      for (double d : {-s, 0.0, s}) cuts.push_back(j + d);
    for (std::int64_t r = -15; r <= 15; ++r) {
      const auto q = fourier_integral([&](double t) { return w.psi0(t); }, r, cuts);
      ASSERT_NEAR(std::abs(q - w.psi0_hat(r)), 0.0, 1e-10) << eps << " " << r;
      ASSERT_NEAR(std::abs(w.psi0_hat(r) - w.phi_hat(r) * w.box_hat(r) * w.box_hat(r)), 0.0, 1e-15);
    }
  }
}

TEST(Smoothed, Psi0EqualsPsiOutsideTransitionIntervals) {
  for (double eps : kEpsilons) {
    const SmoothedSquareWave w(eps);
    const double width = eps / 12;
    for (int j = 0; j < 100000; ++j) {
      const double t = j / 100000.0;
      const double v = w.psi0(t);
      ASSERT_LE(std::abs(v), 1.0 + 1e-12);
      const bool in_i1 = t >= 0.5 - width && t <= 0.5;
      const bool in_i2 = t >= 1 - width;
      if (!in_i1 && !in_i2) ASSERT_DOUBLE_EQ(v, square_wave(t)) << eps << " " << t;
    }
  }
}

TEST(Smoothed, CoefficientShape) {
  for (double eps : kEpsilons) {
    const SmoothedSquareWave w(eps);
    EXPECT_EQ(w.coefficient(0), std::complex<double>(0, 0));
    const auto R = static_cast<std::int64_t>(w.cutoff());
    for (std::int64_t r = -R; r <= R; ++r) {
      const auto a = w.coefficient(r);
      ASSERT_LE(std::abs(a), 1.0);
      const double cap = std::min(1.0, 24 / (eps * kPi * std::abs(static_cast<double>(r))));
      if (r != 0) ASSERT_LE(std::abs(w.psi0_hat(r)), cap * cap * (1 + 1e-12));
      ASSERT_NEAR(std::abs(w.coefficient(-r) - std::conj(a)), 0.0, 1e-10);
    }
    EXPECT_EQ(w.coefficient(R + 1), std::complex<double>(0, 0));
  }
}

TEST(Smoothed, TailBelowEpsOverThree) {
  for (double eps : {0.5, 0.25, 0.125, 0.01, 0.001}) {
    const SmoothedSquareWave w(eps);
    EXPECT_LT(w.tail_bound(), eps / 3) << eps;
  }
  // The bound dominates a long explicit stretch of the tail.
  const SmoothedSquareWave w(0.25);
  const auto R = static_cast<std::int64_t>(w.cutoff());
  double partial = 0;
  for (std::int64_t r = R + 1; r <= R + 2000000; ++r) partial += 2 * std::abs(w.psi0_hat(r));
  EXPECT_LE(partial, w.tail_bound());
}

TEST(Smoothed, SeriesAgreesWithClosedForm) {
  for (double eps : {0.5, 0.25}) {
    const SmoothedSquareWave w(eps);
    for (double t : {0.0, 0.1, 0.25, 0.4999, 0.5, 0.7, 0.99}) {
      const auto v = w.series_at(t);
      EXPECT_LE(std::abs(v.imag()), 1e-10);
      EXPECT_NEAR(v.real(), w.psi0(t) / w.normalisation(), w.closed_form_error() + 1e-12) << t;
    }
  }
}

TEST(Smoothed, GridSupNormAndTriangleChain) {
  for (double eps : kEpsilons) {
    const SmoothedSquareWave w(eps);
    ASSERT_TRUE(w.has_series());
    const auto grid = w.dyadic_grid(17);
    EXPECT_TRUE(grid.series);
    EXPECT_LE(grid.max_imag, 1e-10);
    const double m = static_cast<double>(grid.values.size());
    double tri1 = 0, tri2 = 0;
    for (std::size_t j = 0; j < grid.values.size(); ++j) {
      const double wave = grid.values[j];
      ASSERT_LE(std::abs(wave), 1 + 1e-9) << eps << " " << j;
      const double psi1 = wave * w.normalisation();
      tri2 = std::max(tri2, std::abs(wave - psi1));
      tri1 = std::max(tri1, std::abs(psi1 - w.psi0(j / m)));
    }
    EXPECT_LE(tri2, eps / 3);
    EXPECT_LE(tri1, w.tail_bound() + 1e-9);
    EXPECT_LT(tri1, eps / 3);
    // the grid agrees with pointwise series evaluation
    for (std::size_t j : {0ul, 1ul, 4097ul, 65536ul, 100000ul})
      EXPECT_NEAR(grid.values[j], smoothed_eval(w, j / m), 1e-9);
  }
}

TEST(Smoothed, ClosedFormRouteForTinyEpsilon) {
  const SmoothedSquareWave w(0.005);
  EXPECT_FALSE(w.has_series());
  const auto grid = w.dyadic_grid(10);
  EXPECT_FALSE(grid.series);
  EXPECT_DOUBLE_EQ(grid.error, w.closed_form_error());
  EXPECT_DOUBLE_EQ(smoothed_eval(w, 0.3), w.psi0(0.3) / w.normalisation());
  EXPECT_THROW(w.series_at(0.1), CapacityError);
}

TEST(Closeness, NeededBound) {
  const auto r12 = closeness_check(SmoothedSquareWave(0.5), 12);
  EXPECT_LE(r12.max, 0.5);
  for (double eps : kEpsilons) {
    const SmoothedSquareWave w(eps);
    const auto r = closeness_check(w, 16);
    ASSERT_EQ(r.per_level.size(), 17u);
    EXPECT_LE(r.max, eps);
    // i = 0 is the single point t = 0
    EXPECT_NEAR(r.per_level[0], std::abs(1 - smoothed_eval(w, 0.0)), 1e-9);
    // (bzz): mean |psi - psi0| < eps/3 at every level
    for (double v : r.psi0_per_level) EXPECT_LT(v, eps / 3);
  }
  EXPECT_THROW(closeness_check(SmoothedSquareWave(0.5), 21), CapacityError);
}
