#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "mobius/errors.hpp"
#include "mobius/smoothing.hpp"

namespace mobius::smoothing {

namespace {

using expsum::DyadicTerm;
using expsum::SparseDyadic;

// Residues a mod 2^{i_k} reachable as sum_j r_j 2^{i_k - i_j} with odd
// |r_j| <= R. All such a are odd. For one term this is the odd residues in
// [-R', R'] (R' the largest odd <= R); for two terms, the odd residues in
// the arcs [u 2^d - R', u 2^d + R'] over odd u mod 2^{i_1}.
std::vector<bool> reachable_residues(std::span<const unsigned> exps, std::uint64_t cutoff) {
  const unsigned top = exps.back();
  const std::uint64_t m = 1ULL << top;
  const std::uint64_t r_odd = cutoff % 2 ? cutoff : cutoff - 1;
  std::vector<bool> out(m, false);
  if (r_odd + 1 >= m) {
    for (std::uint64_t a = 1; a < m; a += 2) out[a] = true;
    return out;
  }
  std::vector<std::int64_t> cover(m + 1, 0);
  auto mark_arc = [&](std::uint64_t centre) {
    // [centre - r_odd, centre + r_odd] mod m, length 2 r_odd + 1 < 2m.
    const std::uint64_t lo = (centre + m - r_odd) & (m - 1);
    const std::uint64_t len = 2 * r_odd + 1;
    if (len >= m) {
      cover[0] += 1;
      cover[m] -= 1;
      return;
    }
    if (lo + len <= m) {
      cover[lo] += 1;
      cover[lo + len] -= 1;
    } else {
      cover[lo] += 1;
      cover[m] -= 1;
      cover[0] += 1;
      cover[lo + len - m] -= 1;
    }
  };
  if (exps.size() == 1) {
    mark_arc(0);
  } else {
    const unsigned first = exps[0];
    const unsigned shift = top - first;
    const std::uint64_t m1 = 1ULL << first;
    for (std::uint64_t u = 1; u < m1; u += 2) {
      const std::uint64_t centred = u <= m1 / 2 ? u : m1 - u;
      if (centred > r_odd) continue;
      mark_arc((u << shift) & (m - 1));
    }
  }
  std::int64_t running = 0;
  for (std::uint64_t a = 0; a < m; ++a) {
    running += cover[a];
    out[a] = running > 0 && (a & 1);
  }
  return out;
}

std::int64_t centred(std::uint64_t x, std::uint64_t m) {
  x &= m - 1;
  return x <= m / 2 ? static_cast<std::int64_t>(x) : static_cast<std::int64_t>(x) - static_cast<std::int64_t>(m);
}

// Minimal-|r| representation of a reachable residue a mod 2^{i_k}: smallest
// |r_1| first (positive before negative), then the centred r_2.
SparseDyadic canonical_theta(std::uint64_t a, std::span<const unsigned> exps, std::uint64_t cutoff) {
  const unsigned top = exps.back();
  const std::uint64_t m = 1ULL << top;
  if (exps.size() == 1) return SparseDyadic({{centred(a, m), top}});
  const unsigned first = exps[0];
  const unsigned shift = top - first;
  const std::uint64_t m1 = 1ULL << first;
  const auto limit = static_cast<std::int64_t>(std::min<std::uint64_t>(cutoff, m1));
  for (std::int64_t mag = 1; mag <= limit; mag += 2) {
    for (std::int64_t r1 : {mag, -mag}) {
      const std::uint64_t rest = (a - (static_cast<std::uint64_t>(r1) << shift)) & (m - 1);
      const std::int64_t r2 = centred(rest, m);
      if ((r2 & 1) && static_cast<std::uint64_t>(std::llabs(r2)) <= cutoff) {
        return SparseDyadic({{r1, first}, {r2, top}});
      }
    }
  }
  throw InvariantError("katai_reduce: residue " + std::to_string(a) + " is not reachable");
}

std::uint64_t residue_of(const SparseDyadic& theta, unsigned top) {
  const std::uint64_t m = 1ULL << top;
  std::uint64_t a = 0;
  for (const auto& t : theta.terms()) {
    a += static_cast<std::uint64_t>(t.coefficient) << (top - t.exponent);
  }
  return a & (m - 1);
}

// Draws odd r in [-R', R'] with probability proportional to |a_r|:
// log-uniform proposal P(r) = ln((r+2)/r)/ln(R'+2), accepted with
// probability box^(r)^2 ln 3 / (r ln(1 + 2/r)) <= 1.
std::int64_t sample_coefficient_index(const SmoothedSquareWave& w, std::mt19937_64& rng) {
  const std::uint64_t r_odd = w.cutoff() % 2 ? w.cutoff() : w.cutoff() - 1;
  const double log_top = std::log(static_cast<double>(r_odd) + 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    const double y = std::exp(unit(rng) * log_top);
    auto r = static_cast<std::uint64_t>(y);
    if (r % 2 == 0) r -= 1;
    if (r < 1 || r > r_odd) continue;
    const double rd = static_cast<double>(r);
    const double b = w.box_hat(static_cast<std::int64_t>(r));
    const double accept = b * b * std::log(3.0) / (rd * std::log1p(2.0 / rd));
    if (unit(rng) < accept) {
      const auto signed_r = static_cast<std::int64_t>(r);
      return unit(rng) < 0.5 ? signed_r : -signed_r;
    }
  }
}

}  // namespace

template <class T>
KataiResult katai_reduce(std::span<const T> values, const walsh::BitIndexSet& s,
                         const KataiOptions& options) {
  const std::uint64_t count = values.size();
  if (!is_power_of_two(count)) throw std::invalid_argument("katai_reduce: length must be 2^n");
  const auto n = static_cast<unsigned>(std::countr_zero(count));
  if (s.dimension() != n) throw std::out_of_range("katai_reduce: set dimension mismatch");
  for (auto v : values) {
    if (v < -1 || v > 1) throw DomainError("katai_reduce: values must lie in [-1, 1]");
  }
  const auto exps = s.indices();
  const std::size_t k = exps.size();
  if (k == 0) throw PreconditionError("katai_reduce: S must be nonempty");

  KataiResult res;
  res.set = s;
  res.mode = options.mode;
  const ExactRatio coeff = walsh::walsh_coefficient(values, s);
  res.delta = {std::llabs(coeff.num), coeff.den};
  if (res.delta.num == 0) throw PreconditionError("katai_reduce: f^(S) = 0");
  const double delta = res.delta.value();
  const double kd = static_cast<double>(k);
  res.epsilon = delta / (2.0 * kd);
  res.bound = std::pow(delta / (10.0 * kd), 4.0 * kd);
  res.smoothed_floor = delta - kd * res.epsilon;

  const unsigned top = exps.back();
  if (options.mode == KataiMode::exhaustive) {
    if (k > 2) throw CapacityError("katai_reduce: exhaustive mode supports |S| <= 2");
    if (top > kMaxExhaustiveBits) {
      throw CapacityError("katai_reduce: 2^max(S) candidates exceed the exhaustive limit");
    }
  }
  const SmoothedSquareWave wave(res.epsilon);
  res.cutoff = wave.cutoff();

  // |E f(x) prod_{i in S} wave(x / 2^i)| >= delta - k eps.
  {
    const auto grid = wave.dyadic_grid(top);
    double acc = 0.0;
    for (std::uint64_t x = 0; x < count; ++x) {
      if (values[x] == 0) continue;
      double prod = static_cast<double>(values[x]);
      for (unsigned i : exps) {
        prod *= grid.values[(x & ((1ULL << i) - 1)) << (top - i)];
      }
      acc += prod;
    }
    res.smoothed_product = std::abs(acc / static_cast<double>(count));
    const double eta = grid.error;
    res.smoothed_error = kd * eta * std::pow(1.0 + eta, kd - 1.0) + 1e-12;
    if (res.smoothed_product + res.smoothed_error < res.smoothed_floor) {
      throw InvariantError("katai_reduce: smoothed product " + std::to_string(res.smoothed_product) +
                           " below delta - k eps = " + std::to_string(res.smoothed_floor));
    }
  }

  const expsum::DyadicSums sums(values, top);
  if (options.mode == KataiMode::exhaustive) {
    const auto reachable = reachable_residues(exps, res.cutoff);
    for (bool b : reachable) res.candidates += b;
    const auto peak = sums.peak([&](std::uint64_t a) { return static_cast<bool>(reachable[a]); });
    res.theta = canonical_theta(peak.a, exps, res.cutoff);
    res.value_abs = peak.magnitude;
  } else {
    std::mt19937_64 rng(options.seed);
    std::unordered_map<std::uint64_t, double> cache;
    double best = -1.0;
    std::uint64_t best_a = 0;
    for (std::uint64_t draw = 0; draw < options.samples; ++draw) {
      std::vector<DyadicTerm> terms;
      for (unsigned i : exps) terms.push_back({sample_coefficient_index(wave, rng), i});
      SparseDyadic theta(std::move(terms));
      const std::uint64_t a = residue_of(theta, top);
      auto it = cache.find(a);
      if (it == cache.end()) {
        it = cache.emplace(a, std::abs(sums.at(static_cast<std::int64_t>(a)))).first;
      }
      if (it->second > best * (1 + 1e-12) || (it->second >= best * (1 - 1e-12) && a < best_a)) {
        best = it->second;
        best_a = a;
        res.theta = std::move(theta);
      }
    }
    res.candidates = cache.size();
    res.value_abs = best;
  }
  res.theta_value = expsum::sparse_value(res.theta);

  if (options.mode == KataiMode::exhaustive && !(res.value_abs >= res.bound)) {
    throw InvariantError("katai_reduce: |f^(theta)| = " + std::to_string(res.value_abs) +
                         " below (delta/10k)^{4k} = " + std::to_string(res.bound));
  }
  return res;
}

template KataiResult katai_reduce<std::int8_t>(std::span<const std::int8_t>, const walsh::BitIndexSet&,
                                               const KataiOptions&);
template KataiResult katai_reduce<std::int64_t>(std::span<const std::int64_t>, const walsh::BitIndexSet&,
                                                const KataiOptions&);

}  // namespace mobius::smoothing
