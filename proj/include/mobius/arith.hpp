#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobius/exact.hpp"

namespace mobius::arith {

enum class TableKind { mobius, liouville };

std::string to_string(TableKind kind);
TableKind parse_table_kind(const std::string& name);

inline constexpr unsigned kDefaultMaxTableBits = 30;

// mu (or lambda) on {0, ..., 2^n - 1}, one signed byte per entry.
// values[0] = 0 for both kinds. Immutable once built.
class MuTable {
 public:
  MuTable(unsigned bits, TableKind kind, std::vector<std::int8_t> values);

  unsigned bits() const { return bits_; }
  std::uint64_t size() const { return values_.size(); }
  TableKind kind() const { return kind_; }
  std::span<const std::int8_t> values() const { return values_; }
  int operator[](std::uint64_t x) const { return values_[x]; }

  // The table restricted to {0, ..., 2^bits - 1}.
  MuTable prefix(unsigned bits) const;

  // sum_{x <= last} values[x]; for mu this is the Mertens function M(last).
  std::int64_t partial_sum(std::uint64_t last) const;
  std::int64_t total() const { return partial_sum(size() - 1); }

  struct Counts {
    std::uint64_t minus = 0, zero = 0, plus = 0;
  };
  Counts counts() const;

 private:
  unsigned bits_;
  TableKind kind_;
  std::vector<std::int8_t> values_;
};

// Sieve of Eratosthenes: each prime p flips the sign of its multiples; for
// mu, multiples of p^2 are zeroed, for lambda every prime power flips again.
// Throws CapacityError unless 1 <= bits <= max_bits.
MuTable sieve(unsigned bits, TableKind kind = TableKind::mobius,
              unsigned max_bits = kDefaultMaxTableBits);

// x_i in x = x_1 + 2 x_2 + ... + 2^{n-1} x_n (1-based, least significant
// first). Throws std::out_of_range unless 1 <= i <= n and x < 2^n.
int digit(std::uint64_t x, unsigned i, unsigned n = 64);

// Integer sums of values over residue classes mod 2^bits:
// sums[c] = sum_{x = c mod 2^bits} values[x].
template <class T>
std::vector<std::int64_t> residue_sums(std::span<const T> values, unsigned bits);

// x = (-1)^sign_exponent * 5^five_exponent (mod 2^t).
struct OddDecomposition {
  unsigned sign_exponent = 0;
  std::uint64_t five_exponent = 0;
  friend bool operator==(const OddDecomposition&, const OddDecomposition&) = default;
};

// Requires 3 <= t <= 62 and x odd (DomainError otherwise). x is reduced
// mod 2^t first. five_exponent < 2^{t-2}.
OddDecomposition decompose_odd(std::uint64_t x, unsigned t);

// A Dirichlet character mod 2^t, stored by its values on the generators:
// chi(-1) = +-1 and chi(5) = e(five_index / 2^{t-2}). For t <= 2 the
// group is generated by -1 alone and five_index must be 0.
class DyadicCharacter {
 public:
  DyadicCharacter(unsigned t, int value_at_minus_one, std::uint64_t five_index = 0);

  unsigned modulus_bits() const { return t_; }
  std::uint64_t modulus() const { return 1ULL << t_; }
  int value_at_minus_one() const { return minus_one_; }
  std::uint64_t five_index() const { return five_index_; }
  std::complex<double> value_at_five() const;

  bool is_principal() const { return minus_one_ == 1 && five_index_ == 0; }
  // chi(5) in {+1, -1}.
  bool is_real() const;

  std::complex<double> operator()(std::uint64_t x) const;
  // Exact value in {-1, 0, 1}; requires is_real().
  int real_value(std::uint64_t x) const;

  // Pointwise product, lifted to the larger modulus.
  DyadicCharacter operator*(const DyadicCharacter& other) const;

  std::string name() const;

  friend bool operator==(const DyadicCharacter&, const DyadicCharacter&) = default;

 private:
  unsigned t_;
  int minus_one_;
  std::uint64_t five_index_;
};

DyadicCharacter principal_character(unsigned t = 1);
DyadicCharacter chi4();
DyadicCharacter chi8();

// All 2^{t-1} characters mod 2^t (t >= 1).
std::vector<DyadicCharacter> enumerate_characters(unsigned t);

// chi_4, chi_8, chi_4 chi_8: the nonprincipal primitive real characters of
// 2-power conductor.
std::vector<DyadicCharacter> real_primitive_characters();

struct TwistedMean {
  std::complex<double> mean;
  // numerator over N, present when chi is real-valued.
  std::optional<ExactRatio> exact;
};

// (1/N) sum_{x<N} values[x] chi(x). Real characters accumulate in integers;
// complex ones multiply exact residue-class sums by chi and sum with
// compensation.
TwistedMean twisted_mean(const MuTable& table, const DyadicCharacter& chi);

}  // namespace mobius::arith
