#include <array>
#include <cmath>
#include <stdexcept>

#include "mobius/arith.hpp"
#include "mobius/errors.hpp"

namespace mobius::arith {

namespace {

constexpr std::uint64_t mask_bits(unsigned t) { return t >= 64 ? ~0ULL : (1ULL << t) - 1; }

constexpr std::uint64_t inverse_of_five() {
  std::uint64_t inv = 5;  // correct mod 2^3; each Newton step doubles the precision
  for (int i = 0; i < 6; ++i) inv *= 2 - 5 * inv;
  return inv;
}
static_assert(inverse_of_five() * 5 == 1);

// Neumaier summation.
struct CompensatedSum {
  std::complex<double> sum{0.0, 0.0}, carry{0.0, 0.0};
  static void add(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) c += (s - t) + x;
    else c += (x - t) + s;
    s = t;
  }
  void add(std::complex<double> x) {
    double sr = sum.real(), si = sum.imag(), cr = carry.real(), ci = carry.imag();
    add(sr, cr, x.real());
    add(si, ci, x.imag());
    sum = {sr, si};
    carry = {cr, ci};
  }
  std::complex<double> value() const { return sum + carry; }
};

}  // namespace

OddDecomposition decompose_odd(std::uint64_t x, unsigned t) {
  if (t < 3 || t > 62) throw DomainError("decompose_odd: t must lie in [3, 62]");
  const std::uint64_t mask = mask_bits(t);
  x &= mask;
  if ((x & 1) == 0) throw DomainError("decompose_odd: x must be odd");
  OddDecomposition d;
  d.sign_exponent = (x & 3) == 3 ? 1 : 0;
  // z = y * 5^{-e}; after step k, z = 1 mod 2^{k+3}.
  std::uint64_t z = d.sign_exponent ? (0 - x) & mask : x;
  std::uint64_t inv_power = inverse_of_five();  // 5^{-2^k}
  for (unsigned k = 0; k + 3 <= t; ++k) {
    const std::uint64_t check = mask_bits(k + 3);
    if ((z & check) != 1) {
      d.five_exponent |= 1ULL << k;
      z = (z * inv_power) & mask;
    }
    inv_power *= inv_power;
  }
  return d;
}

DyadicCharacter::DyadicCharacter(unsigned t, int value_at_minus_one, std::uint64_t five_index)
    : t_(t), minus_one_(value_at_minus_one), five_index_(five_index) {
  if (t < 1 || t > 62) throw DomainError("DyadicCharacter: t must lie in [1, 62]");
  if (value_at_minus_one != 1 && value_at_minus_one != -1) {
    throw DomainError("DyadicCharacter: chi(-1) must be +1 or -1");
  }
  if (t == 1 && value_at_minus_one != 1) {
    throw DomainError("DyadicCharacter: mod 2 only the principal character exists");
  }
  const std::uint64_t order = t >= 3 ? 1ULL << (t - 2) : 1;
  if (five_index >= order) throw DomainError("DyadicCharacter: five_index out of range");
}

std::complex<double> DyadicCharacter::value_at_five() const {
  if (t_ < 3) return {1.0, 0.0};
  return dyadic_phase(five_index_, t_ - 2);
}

bool DyadicCharacter::is_real() const {
  return t_ < 3 || five_index_ == 0 || 2 * five_index_ == (1ULL << (t_ - 2));
}

std::complex<double> DyadicCharacter::operator()(std::uint64_t x) const {
  if ((x & 1) == 0) return {0.0, 0.0};
  if (t_ == 1) return {1.0, 0.0};
  if (t_ == 2) return {(x & 3) == 1 ? 1.0 : static_cast<double>(minus_one_), 0.0};
  const auto d = decompose_odd(x, t_);
  const std::uint64_t phase = (five_index_ * d.five_exponent) & mask_bits(t_ - 2);
  auto v = dyadic_phase(phase, t_ - 2);
  return d.sign_exponent ? v * static_cast<double>(minus_one_) : v;
}

int DyadicCharacter::real_value(std::uint64_t x) const {
  if (!is_real()) throw DomainError("real_value: character is not real-valued");
  if ((x & 1) == 0) return 0;
  if (t_ == 1) return 1;
  if (t_ == 2) return (x & 3) == 1 ? 1 : minus_one_;
  const auto d = decompose_odd(x, t_);
  int v = (five_index_ != 0 && (d.five_exponent & 1)) ? -1 : 1;
  return d.sign_exponent ? v * minus_one_ : v;
}

DyadicCharacter DyadicCharacter::operator*(const DyadicCharacter& other) const {
  const unsigned t = std::max(t_, other.t_);
  auto lift = [t](const DyadicCharacter& c) -> std::uint64_t {
    if (c.t_ < 3) return 0;
    return c.five_index_ << (t - c.t_);
  };
  const std::uint64_t index = t >= 3 ? (lift(*this) + lift(other)) & mask_bits(t - 2) : 0;
  return DyadicCharacter(t, minus_one_ * other.minus_one_, index);
}

std::string DyadicCharacter::name() const {
  if (*this == chi4()) return "chi4";
  if (*this == chi8()) return "chi8";
  if (*this == chi4() * chi8()) return "chi4chi8";
  return "chi[" + std::to_string(modulus()) + ";" + std::to_string(minus_one_) + "," +
         std::to_string(five_index_) + "]";
}

DyadicCharacter principal_character(unsigned t) { return DyadicCharacter(t, 1, 0); }
DyadicCharacter chi4() { return DyadicCharacter(2, -1, 0); }
DyadicCharacter chi8() { return DyadicCharacter(3, 1, 1); }

std::vector<DyadicCharacter> enumerate_characters(unsigned t) {
  if (t < 1 || t > 24) throw CapacityError("enumerate_characters: t must lie in [1, 24]");
  std::vector<DyadicCharacter> out;
  if (t == 1) {
    out.emplace_back(1, 1, 0);
    return out;
  }
  const std::uint64_t order = t >= 3 ? 1ULL << (t - 2) : 1;
  for (int sign : {1, -1}) {
    for (std::uint64_t k = 0; k < order; ++k) out.emplace_back(t, sign, k);
  }
  return out;
}

std::vector<DyadicCharacter> real_primitive_characters() {
  return {chi4(), chi8(), chi4() * chi8()};
}

TwistedMean twisted_mean(const MuTable& table, const DyadicCharacter& chi) {
  const std::uint64_t n = table.size();
  const auto values = table.values();
  TwistedMean out;
  const unsigned t = chi.modulus_bits();
  // Residue-class sums when the modulus fits below N, else per-x.
  const bool bucketed = t <= table.bits() && t <= 26;
  std::vector<std::int64_t> sums;
  if (bucketed) sums = residue_sums(values, t);

  if (chi.is_real()) {
    std::int64_t acc = 0;
    if (bucketed) {
      for (std::uint64_t c = 1; c < sums.size(); c += 2) acc += chi.real_value(c) * sums[c];
    } else {
      for (std::uint64_t x = 1; x < n; x += 2) {
        if (values[x]) acc += chi.real_value(x) * values[x];
      }
    }
    out.exact = ExactRatio{acc, n};
    out.mean = {out.exact->value(), 0.0};
    return out;
  }
  CompensatedSum acc;
  if (bucketed) {
    for (std::uint64_t c = 1; c < sums.size(); c += 2) {
      if (sums[c]) acc.add(chi(c) * static_cast<double>(sums[c]));
    }
  } else {
    for (std::uint64_t x = 1; x < n; x += 2) {
      if (values[x]) acc.add(chi(x) * static_cast<double>(values[x]));
    }
  }
  out.mean = acc.value() / static_cast<double>(n);
  return out;
}

}  // namespace mobius::arith
