#include <cmath>
#include <stdexcept>

#include "mobius/arith.hpp"
#include "mobius/errors.hpp"
#include "mobius/parallel.hpp"

namespace mobius::arith {

std::string to_string(TableKind kind) {
  return kind == TableKind::mobius ? "mobius" : "liouville";
}

TableKind parse_table_kind(const std::string& name) {
  if (name == "mobius" || name == "mu") return TableKind::mobius;
  if (name == "liouville" || name == "lambda") return TableKind::liouville;
  throw std::invalid_argument("unknown table kind '" + name + "'");
}

MuTable::MuTable(unsigned bits, TableKind kind, std::vector<std::int8_t> values)
    : bits_(bits), kind_(kind), values_(std::move(values)) {
  if (bits >= 63 || values_.size() != (1ULL << bits)) {
    throw std::invalid_argument("MuTable: value count must be 2^bits");
  }
}

MuTable MuTable::prefix(unsigned bits) const {
  if (bits > bits_) throw std::out_of_range("MuTable::prefix: bits exceed table");
  return MuTable(bits, kind_,
                 std::vector<std::int8_t>(values_.begin(), values_.begin() + (1LL << bits)));
}

std::int64_t MuTable::partial_sum(std::uint64_t last) const {
  if (last >= size()) throw std::out_of_range("MuTable::partial_sum: index past table");
  std::int64_t s = 0;
  for (std::uint64_t x = 0; x <= last; ++x) s += values_[x];
  return s;
}

MuTable::Counts MuTable::counts() const {
  Counts c;
  for (auto v : values_) {
    if (v < 0) ++c.minus;
    else if (v == 0) ++c.zero;
    else ++c.plus;
  }
  return c;
}

MuTable sieve(unsigned bits, TableKind kind, unsigned max_bits) {
  if (bits < 1 || bits > max_bits || bits > 40) {
    throw CapacityError("sieve: bit length " + std::to_string(bits) +
                        " outside supported range [1, " + std::to_string(max_bits) + "]");
  }
  const std::uint64_t n = 1ULL << bits;
  std::vector<std::int8_t> v(n, 1);
  v[0] = 0;
  std::vector<bool> composite(n, false);
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1;

  for (std::uint64_t p = 2; p < n; ++p) {
    if (composite[p]) continue;
    if (p <= root) {
      for (std::uint64_t m = p * p; m < n; m += p) composite[m] = true;
    }
    for (std::uint64_t m = p; m < n; m += p) v[m] = static_cast<std::int8_t>(-v[m]);
    if (kind == TableKind::mobius) {
      if (p <= n / p) {
        const std::uint64_t sq = p * p;
        for (std::uint64_t m = sq; m < n; m += sq) v[m] = 0;
      }
    } else {
      // lambda: one more flip per additional power of p dividing m.
      for (std::uint64_t pk = p; pk <= (n - 1) / p;) {
        pk *= p;
        for (std::uint64_t m = pk; m < n; m += pk) v[m] = static_cast<std::int8_t>(-v[m]);
      }
    }
  }
  return MuTable(bits, kind, std::move(v));
}

int digit(std::uint64_t x, unsigned i, unsigned n) {
  if (n == 0 || n > 64) throw std::out_of_range("digit: bit length must be in [1, 64]");
  if (i < 1 || i > n) {
    throw std::out_of_range("digit: index " + std::to_string(i) + " outside [1, " +
                            std::to_string(n) + "]");
  }
  if (n < 64 && (x >> n) != 0) throw std::out_of_range("digit: x >= 2^n");
  return static_cast<int>((x >> (i - 1)) & 1U);
}

template <class T>
std::vector<std::int64_t> residue_sums(std::span<const T> values, unsigned bits) {
  if (bits > 32) throw CapacityError("residue_sums: modulus exceeds 2^32");
  const std::uint64_t m = 1ULL << bits;
  const std::uint64_t mask = m - 1;
  const std::uint64_t count = values.size();
  const unsigned chunks = parallel::chunk_count(count);
  if (chunks <= 1) {
    std::vector<std::int64_t> sums(m, 0);
    for (std::uint64_t x = 0; x < count; ++x) sums[x & mask] += values[x];
    return sums;
  }
  std::vector<std::vector<std::int64_t>> partial(chunks);
  parallel::for_chunks(count, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    auto& sums = partial[c];
    sums.assign(m, 0);
    for (std::uint64_t x = begin; x < end; ++x) sums[x & mask] += values[x];
  });
  for (unsigned c = 1; c < chunks; ++c) {
    for (std::uint64_t r = 0; r < m; ++r) partial[0][r] += partial[c][r];
  }
  return std::move(partial[0]);
}

template std::vector<std::int64_t> residue_sums<std::int8_t>(std::span<const std::int8_t>, unsigned);
template std::vector<std::int64_t> residue_sums<std::int64_t>(std::span<const std::int64_t>, unsigned);

}  // namespace mobius::arith
