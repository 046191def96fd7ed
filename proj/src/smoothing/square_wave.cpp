#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mobius/dft.hpp"
#include "mobius/errors.hpp"
#include "mobius/smoothing.hpp"

namespace mobius::smoothing {

namespace mp = boost::multiprecision;

int square_wave(const Rational& t) {
  return frac(t) < Rational(1, 2) ? 1 : -1;
}

int square_wave(double t) {
  const double r = t - std::floor(t);
  return r < 0.5 ? 1 : -1;
}

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

// sin(pi u) and cos(pi u) with u reduced mod 2 first.
long double reduced_mod2(long double u) {
  u = std::fmod(u, 2.0L);
  if (u < 0) u += 2.0L;
  return u;
}

}  // namespace

SmoothedSquareWave::SmoothedSquareWave(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::domain_error("SmoothedSquareWave: epsilon must lie in (0, 1/2]");
  }
  const long double r = 100.0L / (static_cast<long double>(epsilon) * epsilon * epsilon);
  if (r > 4.0e18L) throw CapacityError("SmoothedSquareWave: 100/eps^3 exceeds 2^62");
  cutoff_ = static_cast<std::uint64_t>(std::floor(r));
}

std::complex<double> SmoothedSquareWave::psi_hat(std::int64_t r) const {
  if (r % 2 == 0) return {0.0, 0.0};
  return {0.0, -2.0 / (std::numbers::pi * static_cast<double>(r))};
}

std::complex<double> SmoothedSquareWave::phi_hat(std::int64_t r) const {
  if (r % 2 == 0) return {0.0, 0.0};
  // e(r eps/24) = cos(pi u) + i sin(pi u), u = r eps / 12.
  const long double u = reduced_mod2(static_cast<long double>(r) * epsilon_ / 12.0L);
  const std::complex<double> shift(static_cast<double>(std::cos(kPi * u)),
                                   static_cast<double>(std::sin(kPi * u)));
  return shift * psi_hat(r);
}

double SmoothedSquareWave::box_hat(std::int64_t r) const {
  if (r == 0) return 1.0;
  const long double u = static_cast<long double>(r) * epsilon_ / 24.0L;
  const long double s = std::sin(kPi * reduced_mod2(u));
  return static_cast<double>(s / (kPi * u));
}

std::complex<double> SmoothedSquareWave::psi0_hat(std::int64_t r) const {
  const double b = box_hat(r);
  return phi_hat(r) * (b * b);
}

std::complex<double> SmoothedSquareWave::coefficient(std::int64_t r) const {
  const std::uint64_t mag = r < 0 ? static_cast<std::uint64_t>(-r) : static_cast<std::uint64_t>(r);
  if (mag > cutoff_) return {0.0, 0.0};
  return psi0_hat(r) / normalisation();
}

double SmoothedSquareWave::tail_bound() const {
  const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  const double r = static_cast<double>(cutoff_);
  return 1152.0 / (pi3 * epsilon_ * epsilon_ * r * r);
}

double SmoothedSquareWave::psi0(double t) const {
  const double w = epsilon_ / 24.0;
  t -= std::floor(t);
  // CDF of the triangle kernel box*box on [-w, w].
  auto cdf = [w](double u) {
    if (u <= -w) return 0.0;
    if (u >= w) return 1.0;
    if (u < 0) return (u + w) * (u + w) / (2 * w * w);
    return 1.0 - (w - u) * (w - u) / (2 * w * w);
  };
  const double down = t - (0.5 - w);  // phi jumps +1 -> -1 at 1/2 - w
  if (std::abs(down) < w) return 1.0 - 2.0 * cdf(down);
  const double up = t - (1.0 - w);    // and -1 -> +1 at 1 - w
  if (std::abs(up) < w) return -1.0 + 2.0 * cdf(up);
  return square_wave(t + w);
}

std::complex<double> SmoothedSquareWave::series_at(double t) const {
  if (!has_series()) throw CapacityError("series_at: cutoff too large for the series route");
  const auto big_r = static_cast<std::int64_t>(cutoff_);
  std::complex<double> s = 0.0;
  const long double tr = t - std::floor(t);
  for (std::int64_t r = -big_r; r <= big_r; ++r) {
    if (r % 2 == 0) continue;
    const long double u = reduced_mod2(2.0L * r * tr);
    s += coefficient(r) * std::complex<double>(static_cast<double>(std::cos(kPi * u)),
                                               static_cast<double>(std::sin(kPi * u)));
  }
  return s;
}

SmoothedSquareWave::Grid SmoothedSquareWave::dyadic_grid(unsigned bits) const {
  if (bits > 24) throw CapacityError("dyadic_grid: at most 2^24 points");
  const std::uint64_t m = 1ULL << bits;
  Grid grid;
  grid.values.resize(m);
  if (has_series()) {
    grid.series = true;
    std::vector<std::complex<double>> folded(m, 0.0);
    const auto big_r = static_cast<std::int64_t>(cutoff_);
    for (std::int64_t r = -big_r; r <= big_r; ++r) {
      if (r % 2 == 0) continue;
      folded[static_cast<std::uint64_t>(r) & (m - 1)] += coefficient(r);
    }
    const auto synth = dft::synthesize(std::span<const std::complex<double>>(folded));
    for (std::uint64_t j = 0; j < m; ++j) {
      grid.values[j] = synth[j].real();
      grid.max_imag = std::max(grid.max_imag, std::abs(synth[j].imag()));
    }
    return grid;
  }
  for (std::uint64_t j = 0; j < m; ++j) {
    grid.values[j] = psi0(static_cast<double>(j) / static_cast<double>(m)) / normalisation();
  }
  grid.error = closed_form_error();
  return grid;
}

double smoothed_eval(const SmoothedSquareWave& w, double t) {
  if (!w.has_series()) return w.psi0(t) / w.normalisation();
  const auto v = w.series_at(t);
  if (std::abs(v.imag()) > 1e-10) {
    throw InvariantError("smoothed_eval: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

ClosenessReport closeness_check(const SmoothedSquareWave& w, unsigned n) {
  if (n > 20) throw CapacityError("closeness_check: n must be at most 20");
  const auto grid = w.dyadic_grid(n);
  ClosenessReport report;
  report.series = grid.series;
  report.certified_slack = grid.error;
  for (unsigned i = 0; i <= n; ++i) {
    const std::uint64_t count = 1ULL << i;
    double diff = 0.0, diff0 = 0.0;
    for (std::uint64_t j = 0; j < count; ++j) {
      const int psi = square_wave_dyadic(j, i);
      diff += std::abs(psi - grid.values[j << (n - i)]);
      diff0 += std::abs(psi - w.psi0(static_cast<double>(j) / static_cast<double>(count)));
    }
    report.per_level.push_back(diff / static_cast<double>(count));
    report.psi0_per_level.push_back(diff0 / static_cast<double>(count));
    report.max = std::max(report.max, report.per_level.back());
  }
  if (report.max + report.certified_slack > w.epsilon() + 1e-12) {
    throw InvariantError("closeness_check: mean deviation " + std::to_string(report.max) +
                         " exceeds eps = " + std::to_string(w.epsilon()));
  }
  return report;
}

std::string to_string(KataiMode mode) {
  return mode == KataiMode::exhaustive ? "exhaustive" : "sampled";
}

}  // namespace mobius::smoothing
