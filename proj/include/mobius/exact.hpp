#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mobius {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// An unreduced fraction num/den. Averages over {0,...,N-1} keep den = N so
// numerators stay comparable across operations.
struct ExactRatio {
  std::int64_t num = 0;
  std::uint64_t den = 1;

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  Rational rational() const { return Rational(num, den); }
  std::string to_string() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Value equality (cross-multiplied), not representation equality.
  friend bool operator==(const ExactRatio& a, const ExactRatio& b) {
    return static_cast<__int128>(a.num) * static_cast<__int128>(b.den) ==
           static_cast<__int128>(b.num) * static_cast<__int128>(a.den);
  }
};

// e(p/m) = exp(2 pi i p/m), with p reduced mod m before the trig call.
std::complex<double> unit_phase(std::int64_t p, std::uint64_t m);

// e(p / 2^bits).
inline std::complex<double> dyadic_phase(std::uint64_t p, unsigned bits) {
  const std::uint64_t mask = bits >= 64 ? ~0ULL : (1ULL << bits) - 1;
  return unit_phase(static_cast<std::int64_t>(p & mask), 1ULL << bits);
}

// Fractional part of a rational, in [0, 1).
Rational frac(const Rational& x);

bool is_power_of_two(const BigInt& x);

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::string to_string(const Rational& x);

}  // namespace mobius
