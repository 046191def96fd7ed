#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace mobius::dft {

// out[j] = sum_c in[c] e(c j / M), M = in.size() (a power of two).
std::vector<std::complex<double>> synthesize(std::span<const std::complex<double>> in);

// out[a] = sum_c sums[c] e(a c / M) for integer inputs.
std::vector<std::complex<double>> synthesize(std::span<const std::int64_t> sums);

}  // namespace mobius::dft
