#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mobius/dft.hpp"
#include "mobius/errors.hpp"
#include "mobius/expsum.hpp"

namespace mobius::expsum {

namespace mp = boost::multiprecision;

SparseDyadic::SparseDyadic(std::vector<DyadicTerm> terms) : terms_(std::move(terms)) {
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (terms_[j].exponent < 1 || terms_[j].exponent > 126) {
      throw std::invalid_argument("SparseDyadic: exponents must lie in [1, 126]");
    }
    if (j > 0 && terms_[j].exponent <= terms_[j - 1].exponent) {
      throw std::invalid_argument("SparseDyadic: exponents must be strictly increasing");
    }
  }
}

std::int64_t SparseDyadic::max_abs_coefficient() const {
  std::int64_t m = 0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coefficient));
  return m;
}

Rational SparseDyadic::sum() const {
  Rational s = 0;
  for (const auto& t : terms_) {
    s += Rational(BigInt(t.coefficient), BigInt(1) << t.exponent);
  }
  return s;
}

std::string SparseDyadic::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (j) s += ';';
    s += std::to_string(terms_[j].coefficient) + ":" + std::to_string(terms_[j].exponent);
  }
  return s;
}

SparseDyadic SparseDyadic::parse(const std::string& text) {
  std::vector<DyadicTerm> terms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("SparseDyadic::parse: expected r:i, got '" + item + "'");
    }
    terms.push_back({std::stoll(item.substr(0, colon)),
                     static_cast<unsigned>(std::stoul(item.substr(colon + 1)))});
  }
  return SparseDyadic(std::move(terms));
}

Rational sparse_value(const SparseDyadic& theta) { return frac(theta.sum()); }

namespace {

struct Neumaier {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) c += (s - t) + x;
    else c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct ComplexNeumaier {
  Neumaier re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Direct pass: phase index (a x) mod m in integers, fixed 4096-element
// blocks summed with compensation, then block sums combined in order.
template <class T>
std::complex<double> direct_sum(std::span<const T> values, std::uint64_t a, std::uint64_t m) {
  constexpr std::uint64_t kBlock = 4096;
  ComplexNeumaier total;
  for (std::uint64_t b = 0; b < values.size(); b += kBlock) {
    ComplexNeumaier block;
    const std::uint64_t end = std::min<std::uint64_t>(values.size(), b + kBlock);
    for (std::uint64_t x = b; x < end; ++x) {
      if (values[x] == 0) continue;
      const auto p = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(a) * x) % m);
      block.add(unit_phase(static_cast<std::int64_t>(p), m) * static_cast<double>(values[x]));
    }
    total.add(block.value());
  }
  return total.value();
}

}  // namespace

template <class T>
std::complex<double> fourier_coefficient(std::span<const T> values, const Rational& theta) {
  if (values.empty()) throw std::invalid_argument("fourier_coefficient: empty table");
  const Rational r = frac(theta);
  const BigInt num = mp::numerator(r);
  const BigInt den = mp::denominator(r);
  if (den > BigInt(INT64_MAX)) {
    throw CapacityError("fourier_coefficient: denominator exceeds 63 bits");
  }
  const auto m = den.convert_to<std::uint64_t>();
  const auto a = num.convert_to<std::uint64_t>();
  const double n = static_cast<double>(values.size());
  if (is_power_of_two(m)) {
    const auto bits = static_cast<unsigned>(std::countr_zero(m));
    if (m <= values.size() && bits <= 26) {
      return DyadicSums(values, bits).at(static_cast<std::int64_t>(a));
    }
  }
  return direct_sum(values, a, m) / n;
}

template <class T>
DyadicSums::DyadicSums(std::span<const T> values, unsigned bits)
    : bits_(bits), count_(values.size()) {
  if (bits > 26) throw CapacityError("DyadicSums: modulus exceeds 2^26");
  sums_ = arith::residue_sums(values, bits);
}

std::complex<double> DyadicSums::at(std::int64_t a) const {
  const std::uint64_t m = 1ULL << bits_;
  const std::uint64_t ar = static_cast<std::uint64_t>(a) & (m - 1);
  ComplexNeumaier acc;
  for (std::uint64_t c = 0; c < sums_.size(); ++c) {
    if (sums_[c] == 0) continue;
    acc.add(dyadic_phase(ar * c, bits_) * static_cast<double>(sums_[c]));
  }
  return acc.value() / static_cast<double>(count_);
}

std::vector<double> DyadicSums::all_magnitudes() const {
  const auto spectrum = dft::synthesize(std::span<const std::int64_t>(sums_));
  std::vector<double> out(spectrum.size());
  const double n = static_cast<double>(count_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(spectrum[i]) / n;
  return out;
}

DyadicSums DyadicSums::fold(unsigned bits) const {
  if (bits > bits_) throw std::invalid_argument("DyadicSums::fold: cannot refine");
  const std::uint64_t mask = (1ULL << bits) - 1;
  std::vector<std::int64_t> folded(1ULL << bits, 0);
  for (std::uint64_t c = 0; c < sums_.size(); ++c) folded[c & mask] += sums_[c];
  return DyadicSums(bits, count_, std::move(folded));
}

DyadicSums::Peak DyadicSums::peak(const std::function<bool(std::uint64_t)>& allowed) const {
  const auto mags = all_magnitudes();
  double top = -1.0;
  for (std::uint64_t a = 0; a < mags.size(); ++a) {
    if (!allowed || allowed(a)) top = std::max(top, mags[a]);
  }
  Peak best;
  if (top < 0) return best;
  for (std::uint64_t a = 0; a < mags.size(); ++a) {
    if (allowed && !allowed(a)) continue;
    if (mags[a] < top * (1 - 1e-9) - 1e-13) continue;
    const double v = std::abs(at(static_cast<std::int64_t>(a)));
    if (v > best.magnitude * (1 + 1e-12) + 1e-300) {
      best.magnitude = v;
      best.a = a;
    }
  }
  return best;
}

std::vector<ScanRow> mu_dyadic_scan(const arith::MuTable& table, unsigned t_max) {
  if (t_max > kMaxScanBits) {
    throw CapacityError("mu_dyadic_scan: t_max exceeds " + std::to_string(kMaxScanBits));
  }
  const auto values = table.values();
  std::vector<ScanRow> rows(t_max + 1);
  DyadicSums sums(values, t_max);
  for (unsigned t = t_max + 1; t-- > 0;) {
    const auto peak = sums.peak();
    rows[t] = {t, peak.a, peak.magnitude};
    if (t > 0) sums = sums.fold(t - 1);
  }
  return rows;
}

std::vector<double> near_dyadic_check(const arith::MuTable& table, std::int64_t a, unsigned t,
                                      std::span<const Rational> offsets) {
  const Rational limit(BigInt(1) << 10, BigInt(table.size()));
  const Rational center(BigInt(a), BigInt(1) << t);
  std::vector<double> out;
  out.reserve(offsets.size());
  for (const auto& d : offsets) {
    if (mp::abs(d) > limit) {
      throw PreconditionError("near_dyadic_check: offset exceeds 2^10/N");
    }
    out.push_back(std::abs(fourier_coefficient(table.values(), center + d)));
  }
  return out;
}

template std::complex<double> fourier_coefficient<std::int8_t>(std::span<const std::int8_t>, const Rational&);
template std::complex<double> fourier_coefficient<std::int64_t>(std::span<const std::int64_t>, const Rational&);
template DyadicSums::DyadicSums(std::span<const std::int8_t>, unsigned);
template DyadicSums::DyadicSums(std::span<const std::int64_t>, unsigned);

}  // namespace mobius::expsum
