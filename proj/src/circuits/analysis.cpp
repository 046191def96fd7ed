#include <algorithm>
#include <bit>
#include <cmath>

#include "mobius/circuits.hpp"
#include "mobius/errors.hpp"
#include "mobius/parallel.hpp"

namespace mobius::circuits {

namespace {

// Digit i (i <= 6) within a 64-aligned block of inputs.
constexpr std::uint64_t kLowDigit[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

using u128 = unsigned __int128;

}  // namespace

std::vector<std::int8_t> truth_table(const Circuit& c, unsigned n) {
  if (n > kMaxTruthTableBits)
    throw CapacityError("truth_table: n exceeds " + std::to_string(kMaxTruthTableBits));
  if (n < c.inputs())
    throw DomainError("truth_table: circuit reads digits beyond n = " + std::to_string(n));
  const std::uint64_t N = 1ULL << n;
  const std::uint64_t words = (N + 63) / 64;
  std::vector<std::int8_t> table(N);
  const auto& nodes = c.nodes();

  parallel::for_chunks(
      words,
      [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> w(nodes.size());
        for (std::uint64_t block = begin; block < end; ++block) {
          const std::uint64_t base = block * 64;
          for (std::size_t v = 0; v < nodes.size(); ++v) {
            const Node& node = nodes[v];
            switch (node.kind) {
              case NodeKind::input:
                w[v] = node.digit <= 6 ? kLowDigit[node.digit - 1]
                                       : (((base >> (node.digit - 1)) & 1) ? ~0ULL : 0ULL);
                break;
              case NodeKind::not_gate: w[v] = ~w[node.inputs[0]]; break;
              case NodeKind::and_gate: {
                std::uint64_t acc = ~0ULL;
                for (auto u : node.inputs) acc &= w[u];
                w[v] = acc;
                break;
              }
              case NodeKind::or_gate: {
                std::uint64_t acc = 0;
                for (auto u : node.inputs) acc |= w[u];
                w[v] = acc;
                break;
              }
            }
          }
          const std::uint64_t out = w[c.output()];
          const std::uint64_t count = std::min<std::uint64_t>(64, N - base);
          for (std::uint64_t j = 0; j < count; ++j) table[base + j] = ((out >> j) & 1) ? 1 : -1;
        }
      },
      256);
  return table;
}

bool classify_ac0(const Circuit& c, unsigned d) {
  const auto m = c.normalized();
  if (m.depth > d) return false;
  // n^d saturating at 2^64.
  u128 limit = 1;
  for (unsigned i = 0; i < d && limit <= ~0ULL; ++i) limit *= c.inputs();
  return static_cast<u128>(m.size) <= limit;
}

bool LmnReport::all_satisfied() const {
  for (const auto& r : rows)
    if (!r.satisfied) return false;
  return true;
}

LmnReport lmn_check(const Circuit& c, unsigned d_declared) {
  const unsigned n = c.inputs();
  if (n > kMaxLmnBits) throw CapacityError("lmn_check: n exceeds " + std::to_string(kMaxLmnBits));
  const auto table = truth_table(c, n);
  const auto spectrum = walsh::fwht<std::int8_t>(table);
  const auto m = c.normalized();

  LmnReport report;
  report.size = m.size;
  report.raw_depth = c.depth();
  report.depth = std::max(1u, std::max(m.depth, d_declared));
  const long double d = report.depth;
  for (unsigned t = 1; t <= n; ++t) {
    LmnRow row;
    row.t = t;
    row.tail = walsh::tail_mass(spectrum, t);
    const long double bound =
        2.0L * static_cast<long double>(report.size) *
        std::exp2(-std::pow(static_cast<long double>(t), 1.0L / d) / 20.0L);
    row.bound = static_cast<double>(bound);
    row.satisfied = static_cast<long double>(row.tail.num) <= bound * row.tail.den;
    report.rows.push_back(row);
  }
  return report;
}

unsigned sixth_root_ceil(unsigned n) {
  unsigned t = 0;
  while (true) {
    u128 p = 1;
    for (int i = 0; i < 6; ++i) p *= t;
    if (p >= n) return t;
    ++t;
  }
}

CorrelationReport correlation_from_spectra(const walsh::WalshSpectrum& mu_spectrum,
                                           std::span<const std::int8_t> mu_values,
                                           std::span<const std::int8_t> f_values,
                                           const walsh::WalshSpectrum& f_spectrum) {
  const unsigned n = mu_spectrum.bits();
  if (f_spectrum.bits() != n || mu_values.size() != mu_spectrum.size() ||
      f_values.size() != f_spectrum.size())
    throw DomainError("correlation: table dimensions differ");
  const std::uint64_t N = mu_spectrum.size();

  std::int64_t A = 0;
  for (std::uint64_t x = 0; x < N; ++x) A += mu_values[x] * f_values[x];

  CorrelationReport r;
  r.n = n;
  r.mean = {A, N};

  // sum_S muhat_num F^_num = N * sum_x mu F.
  __int128 inner = 0;
  const auto mu = mu_spectrum.numerators();
  const auto fs = f_spectrum.numerators();
  for (std::uint64_t s = 0; s < N; ++s) inner += static_cast<__int128>(mu[s]) * fs[s];
  r.parseval_holds = inner == static_cast<__int128>(A) * static_cast<__int128>(N);

  // Everything scaled by N^2: |A| N <= L + sqrt(T_mu T_F).
  const unsigned t = sixth_root_ceil(n);
  r.chain_t = t;
  u128 low = 0, tail_mu = 0, tail_f = 0;
  for (std::uint64_t s = 0; s < N; ++s) {
    const auto a = static_cast<u128>(mu[s] < 0 ? -mu[s] : mu[s]);
    const auto b = static_cast<u128>(fs[s] < 0 ? -fs[s] : fs[s]);
    if (static_cast<unsigned>(std::popcount(s)) <= t) {
      low += a * b;
    } else {
      tail_mu += a * a;
      tail_f += b * b;
    }
  }
  const u128 lhs = static_cast<u128>(A < 0 ? -A : A) * N;
  if (lhs <= low) {
    r.chain_holds = true;
  } else {
    const u128 gap = lhs - low;
    // tail_mu, tail_f <= N^2 each, so the product fits for n <= 31.
    r.chain_holds = gap * gap <= tail_mu * tail_f;
  }
  const long double n2 = static_cast<long double>(N) * N;
  r.chain_lhs = static_cast<double>(static_cast<long double>(lhs) / n2);
  r.chain_rhs = static_cast<double>(
      (static_cast<long double>(low) +
       std::sqrt(static_cast<long double>(tail_mu)) * std::sqrt(static_cast<long double>(tail_f))) /
      n2);
  return r;
}

CorrelationReport mobius_correlation(const Circuit& c, const arith::MuTable& table,
                                     std::string id) {
  if (table.bits() != c.inputs())
    throw DomainError("mobius_correlation: table has " + std::to_string(table.bits()) +
                      " bits, circuit reads " + std::to_string(c.inputs()));
  const auto f = truth_table(c, c.inputs());
  const auto mu_spectrum = walsh::fwht<std::int8_t>(table.values());
  const auto f_spectrum = walsh::fwht<std::int8_t>(f);
  auto r = correlation_from_spectra(mu_spectrum, table.values(), f, f_spectrum);
  r.id = std::move(id);
  const auto m = c.normalized();
  r.size = m.size;
  r.depth = m.depth;
  r.raw_depth = c.depth();
  r.raw_size = c.size();
  const double d = std::max(1u, m.depth);
  r.d_log_n = d * std::log(static_cast<double>(r.n));
  r.n_root = std::pow(static_cast<double>(r.n), 1.0 / (6.0 * d));
  return r;
}

}  // namespace mobius::circuits
