#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>

#include "mobius/errors.hpp"
#include "mobius/parallel.hpp"
#include "mobius/square_wave.hpp"
#include "mobius/walsh.hpp"

namespace mobius::walsh {

BitIndexSet::BitIndexSet(unsigned n, std::uint64_t mask) : n_(n), mask_(mask) {
  if (n > 63) throw std::out_of_range("BitIndexSet: dimension must be at most 63");
  if ((mask >> n) != 0) {
    throw std::out_of_range("BitIndexSet: index outside [1, " + std::to_string(n) + "]");
  }
}

BitIndexSet BitIndexSet::from_indices(unsigned n, std::span<const unsigned> indices) {
  std::uint64_t mask = 0;
  for (unsigned i : indices) {
    if (i < 1 || i > n) {
      throw std::out_of_range("BitIndexSet: index " + std::to_string(i) + " outside [1, " +
                              std::to_string(n) + "]");
    }
    mask |= 1ULL << (i - 1);
  }
  return BitIndexSet(n, mask);
}

unsigned BitIndexSet::size() const { return static_cast<unsigned>(std::popcount(mask_)); }

bool BitIndexSet::contains(unsigned i) const {
  return i >= 1 && i <= n_ && ((mask_ >> (i - 1)) & 1);
}

std::vector<unsigned> BitIndexSet::indices() const {
  std::vector<unsigned> out;
  for (unsigned i = 1; i <= n_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string BitIndexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (unsigned i : indices()) {
    s += (first ? "" : ",") + std::to_string(i);
    first = false;
  }
  return s + "}";
}

WalshSpectrum::WalshSpectrum(unsigned bits, std::vector<std::int64_t> numerators,
                             std::int64_t value_bound)
    : bits_(bits), numerators_(std::move(numerators)), value_bound_(value_bound) {
  if (numerators_.size() != (1ULL << bits)) {
    throw std::invalid_argument("WalshSpectrum: size must be 2^bits");
  }
}

unsigned __int128 WalshSpectrum::energy() const {
  unsigned __int128 e = 0;
  for (auto v : numerators_) {
    e += static_cast<unsigned __int128>(static_cast<__int128>(v) * v);
  }
  return e;
}

namespace {

unsigned log2_exact(std::uint64_t size) {
  if (!is_power_of_two(size)) {
    throw std::invalid_argument("length " + std::to_string(size) + " is not a power of two");
  }
  return static_cast<unsigned>(std::countr_zero(size));
}

}  // namespace

void butterfly(std::span<std::int64_t> data) {
  const std::uint64_t n = data.size();
  log2_exact(n);
  for (std::uint64_t h = 1; h < n; h <<= 1) {
    const std::uint64_t blocks = n / (2 * h);
    // Blocks of one stage are independent.
    parallel::for_chunks(blocks, [&](unsigned, std::uint64_t b0, std::uint64_t b1) {
      for (std::uint64_t b = b0; b < b1; ++b) {
        std::int64_t* lo = data.data() + b * 2 * h;
        std::int64_t* hi = lo + h;
        for (std::uint64_t j = 0; j < h; ++j) {
          const std::int64_t u = lo[j], v = hi[j];
          lo[j] = u + v;
          hi[j] = u - v;
        }
      }
    }, std::max<std::uint64_t>(1, (1 << 14) / (2 * h)));
  }
}

template <class T>
WalshSpectrum fwht(std::span<const T> values) {
  const unsigned bits = log2_exact(values.size());
  if (bits > kMaxSpectrumBits) {
    throw CapacityError("fwht: n = " + std::to_string(bits) + " exceeds " +
                        std::to_string(kMaxSpectrumBits));
  }
  std::int64_t bound = 0;
  for (auto v : values) {
    const std::int64_t a = v < 0 ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
    if (a < 0) throw CapacityError("fwht: value magnitude overflows");
    bound = std::max(bound, a);
  }
  if (bound > 0 && static_cast<unsigned __int128>(bound) << bits >
                       static_cast<unsigned __int128>(INT64_MAX)) {
    throw CapacityError("fwht: N * max|f| overflows 64-bit numerators");
  }
  std::vector<std::int64_t> data(values.begin(), values.end());
  butterfly(data);
  return WalshSpectrum(bits, std::move(data), bound);
}

template <class T>
ExactRatio walsh_coefficient(std::span<const T> values, const BitIndexSet& s) {
  const unsigned bits = log2_exact(values.size());
  if (s.dimension() != bits) throw std::out_of_range("walsh_coefficient: dimension mismatch");
  const std::uint64_t mask = s.mask();
  std::int64_t acc = 0;
  for (std::uint64_t x = 0; x < values.size(); ++x) {
    const auto v = static_cast<std::int64_t>(values[x]);
    acc += (std::popcount(x & mask) & 1) ? -v : v;
  }
  return {acc, values.size()};
}

template <class T>
ExactRatio walsh_via_psi(std::span<const T> values, const BitIndexSet& s) {
  const unsigned bits = log2_exact(values.size());
  if (s.dimension() != bits) throw std::out_of_range("walsh_via_psi: dimension mismatch");
  const auto members = s.indices();
  std::int64_t acc = 0;
  for (std::uint64_t x = 0; x < values.size(); ++x) {
    int sign = 1;
    for (unsigned i : members) sign *= smoothing::square_wave_dyadic(x, i);
    acc += sign * static_cast<std::int64_t>(values[x]);
  }
  return {acc, values.size()};
}

ExactRatio tail_mass(const WalshSpectrum& spectrum, unsigned t) {
  if (t > spectrum.bits()) throw std::out_of_range("tail_mass: threshold exceeds n");
  unsigned __int128 acc = 0;
  const auto nums = spectrum.numerators();
  for (std::uint64_t mask = 0; mask < nums.size(); ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) > t) {
      acc += static_cast<unsigned __int128>(static_cast<__int128>(nums[mask]) * nums[mask]);
    }
  }
  if (acc > static_cast<unsigned __int128>(INT64_MAX) || 2 * spectrum.bits() > 63) {
    throw CapacityError("tail_mass: exact numerator exceeds 64 bits");
  }
  return {static_cast<std::int64_t>(acc), 1ULL << (2 * spectrum.bits())};
}

std::vector<DegreeMaximum> degree_maxima(const WalshSpectrum& spectrum) {
  std::vector<DegreeMaximum> out(spectrum.bits() + 1);
  for (unsigned k = 0; k <= spectrum.bits(); ++k) out[k].degree = k;
  std::vector<bool> seen(spectrum.bits() + 1, false);
  const auto nums = spectrum.numerators();
  for (std::uint64_t mask = 0; mask < nums.size(); ++mask) {
    const auto k = static_cast<unsigned>(std::popcount(mask));
    const std::int64_t a = std::llabs(nums[mask]);
    if (!seen[k] || a > out[k].max_abs_numerator) {
      out[k].max_abs_numerator = a;
      out[k].witness_mask = mask;
      seen[k] = true;
    }
  }
  return out;
}

std::vector<DegreeMaximum> mu_walsh_decay(const arith::MuTable& table) {
  if (table.bits() > kMaxSpectrumBits) {
    throw CapacityError("mu_walsh_decay: n exceeds " + std::to_string(kMaxSpectrumBits));
  }
  return degree_maxima(fwht(table.values()));
}

template WalshSpectrum fwht<std::int8_t>(std::span<const std::int8_t>);
template WalshSpectrum fwht<std::int64_t>(std::span<const std::int64_t>);
template ExactRatio walsh_coefficient<std::int8_t>(std::span<const std::int8_t>, const BitIndexSet&);
template ExactRatio walsh_coefficient<std::int64_t>(std::span<const std::int64_t>, const BitIndexSet&);
template ExactRatio walsh_via_psi<std::int8_t>(std::span<const std::int8_t>, const BitIndexSet&);
template ExactRatio walsh_via_psi<std::int64_t>(std::span<const std::int64_t>, const BitIndexSet&);

}  // namespace mobius::walsh
