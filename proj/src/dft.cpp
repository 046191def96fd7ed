#include "mobius/dft.hpp"

#include <cstring>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "mobius/exact.hpp"

namespace mobius {

std::complex<double> unit_phase(std::int64_t p, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("unit_phase: zero modulus");
  auto r = static_cast<std::uint64_t>(p % static_cast<__int128>(m) + (p < 0 ? m : 0)) % m;
  // Exact values on the quarter points; elsewhere long double keeps the
  // rounding of 2*pi*r/m well below double resolution.
  if (r == 0) return {1.0, 0.0};
  if (4 * static_cast<unsigned __int128>(r) == m) return {0.0, 1.0};
  if (2 * static_cast<unsigned __int128>(r) == m) return {-1.0, 0.0};
  if (4 * static_cast<unsigned __int128>(r) == 3 * static_cast<unsigned __int128>(m)) return {0.0, -1.0};
  constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;
  const long double angle = kTwoPi * (static_cast<long double>(r) / static_cast<long double>(m));
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

Rational frac(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

bool is_power_of_two(const BigInt& x) {
  if (x <= 0) return false;
  return (x & (x - 1)) == 0;
}

std::string to_string(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  return num.str() + "/" + den.str();
}

namespace dft {

namespace {
// The FFTW planner is not thread safe.
std::mutex g_plan_mutex;
}  // namespace

std::vector<std::complex<double>> synthesize(std::span<const std::complex<double>> in) {
  const std::size_t m = in.size();
  if (!is_power_of_two(static_cast<std::uint64_t>(m))) {
    throw std::invalid_argument("dft::synthesize: size must be a power of two");
  }
  std::vector<std::complex<double>> out(m);
  if (m == 1) {
    out[0] = in[0];
    return out;
  }
  auto* buf = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  if (!buf) throw std::bad_alloc();
  fftw_plan plan;
  {
    std::lock_guard lock(g_plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(m), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  std::memcpy(buf, in.data(), sizeof(fftw_complex) * m);
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(out.data()), buf, sizeof(fftw_complex) * m);
  {
    std::lock_guard lock(g_plan_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

std::vector<std::complex<double>> synthesize(std::span<const std::int64_t> sums) {
  std::vector<std::complex<double>> in(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) in[i] = static_cast<double>(sums[i]);
  return synthesize(std::span<const std::complex<double>>(in));
}

}  // namespace dft
}  // namespace mobius
