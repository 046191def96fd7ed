#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mobius/arith.hpp"
#include "mobius/exact.hpp"

namespace mobius::walsh {

inline constexpr unsigned kMaxSpectrumBits = 26;

// S subset of {1, ..., n}; bit i-1 of the mask marks membership of i, the
// same convention as arith::digit.
class BitIndexSet {
 public:
  BitIndexSet(unsigned n, std::uint64_t mask);
  static BitIndexSet from_indices(unsigned n, std::span<const unsigned> indices);

  unsigned dimension() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  unsigned size() const;
  bool contains(unsigned i) const;
  // Members in increasing order.
  std::vector<unsigned> indices() const;
  std::string to_string() const;

  friend bool operator==(const BitIndexSet&, const BitIndexSet&) = default;

 private:
  unsigned n_;
  std::uint64_t mask_;
};

// N * f^(S) for every S, i.e. the unnormalised transform
// numerators[S] = sum_x f(x) (-1)^{sum_{i in S} x_i}.
class WalshSpectrum {
 public:
  WalshSpectrum(unsigned bits, std::vector<std::int64_t> numerators, std::int64_t value_bound);

  unsigned bits() const { return bits_; }
  std::uint64_t size() const { return numerators_.size(); }
  std::int64_t value_bound() const { return value_bound_; }
  std::span<const std::int64_t> numerators() const { return numerators_; }
  std::int64_t numerator(std::uint64_t mask) const { return numerators_[mask]; }
  ExactRatio coefficient(std::uint64_t mask) const {
    return {numerators_[mask], size()};
  }

  // sum_S numerators[S]^2 (= N * sum_x f(x)^2 by Parseval).
  unsigned __int128 energy() const;

 private:
  unsigned bits_;
  std::vector<std::int64_t> numerators_;
  std::int64_t value_bound_;
};

// In-place butterfly, O(N log N). Throws std::invalid_argument unless the
// length is a power of two, CapacityError past kMaxSpectrumBits or when
// N * max|f| could overflow 64 bits.
template <class T>
WalshSpectrum fwht(std::span<const T> values);

// Applies the unnormalised butterfly to raw integers (used by the
// involution property: applying it twice multiplies by N).
void butterfly(std::span<std::int64_t> data);

// f^(S) by direct O(N) summation.
template <class T>
ExactRatio walsh_coefficient(std::span<const T> values, const BitIndexSet& s);

// E f(x) prod_{i in S} psi(x / 2^i) with the square wave psi evaluated on
// the exact rational x / 2^i. Equal to walsh_coefficient for every f and S.
template <class T>
ExactRatio walsh_via_psi(std::span<const T> values, const BitIndexSet& s);

// sum_{|S| > t} f^(S)^2 as an exact ratio over N^2.
ExactRatio tail_mass(const WalshSpectrum& spectrum, unsigned t);

struct DegreeMaximum {
  unsigned degree = 0;
  std::int64_t max_abs_numerator = 0;  // over N
  std::uint64_t witness_mask = 0;      // smallest mask attaining the maximum
};

// max_{|S| = k} |f^(S)| for k = 0..n.
std::vector<DegreeMaximum> degree_maxima(const WalshSpectrum& spectrum);

// degree_maxima of the mu (or lambda) table's spectrum.
std::vector<DegreeMaximum> mu_walsh_decay(const arith::MuTable& table);

}  // namespace mobius::walsh
