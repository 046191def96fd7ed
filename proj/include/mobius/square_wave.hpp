#pragma once

#include <cstdint>

#include "mobius/exact.hpp"

namespace mobius::smoothing {

// psi(t) = 1 on [0, 1/2), -1 on [1/2, 1), extended with period 1.
int square_wave(const Rational& t);

// psi(p / 2^bits) without leaving the integers.
inline int square_wave_dyadic(std::uint64_t p, unsigned bits) {
  if (bits == 0) return 1;
  const std::uint64_t r = bits >= 64 ? p : p & ((1ULL << bits) - 1);
  return (r >> (bits - 1)) == 0 ? 1 : -1;
}

// psi at a double t, reduced mod 1. Exact for dyadic t.
int square_wave(double t);

}  // namespace mobius::smoothing
