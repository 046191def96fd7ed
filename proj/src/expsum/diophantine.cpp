#include <stdexcept>

#include "mobius/errors.hpp"
#include "mobius/expsum.hpp"

namespace mobius::expsum {

namespace mp = boost::multiprecision;

namespace {

BigInt floor_of(const Rational& x) {
  const BigInt num = mp::numerator(x);
  const BigInt den = mp::denominator(x);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt pow_big(BigInt base, std::size_t e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

RationalApprox best_rational_approx(const Rational& theta, std::uint64_t Q) {
  if (Q < 1) throw PreconditionError("best_rational_approx: Q must be at least 1");
  const BigInt bound(Q);
  // Convergents p_k/q_k of the continued fraction of theta.
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = floor_of(theta), q = 1;
  Rational x = theta;
  while (true) {
    const BigInt whole = floor_of(x);
    if (x == Rational(whole)) break;
    x = 1 / (x - Rational(whole));
    const BigInt next = floor_of(x);
    const BigInt p_next = next * p + p_prev;
    const BigInt q_next = next * q + q_prev;
    if (q_next > bound) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  Rational err = theta - Rational(p, q);
  if (err < 0) err = -err;
  return {p, q, err};
}

bool satisfies_dirichlet_bound(const Rational& theta, const RationalApprox& approx,
                               std::uint64_t Q) {
  Rational err = theta - Rational(approx.a, approx.q);
  if (err < 0) err = -err;
  return err == approx.error && approx.q >= 1 && approx.q <= BigInt(Q) &&
         err * Rational(approx.q) * Rational(BigInt(Q) + 1) <= 1;
}

bool lemma_hypothesis(std::size_t k, std::uint64_t Q, unsigned n) {
  if (k == 0) throw std::invalid_argument("lemma_hypothesis: k must be positive");
  const BigInt rhs = pow_big(BigInt(4) * BigInt(Q) * BigInt(Q), 2 * k);
  return (BigInt(1) << n) > rhs;
}

GapApprox gap_approximation(const SparseDyadic& theta, std::uint64_t Q, unsigned n) {
  const std::size_t k = theta.size();
  if (k == 0) throw PreconditionError("gap_approximation: theta has no terms");
  if (theta.max_exponent() > n) throw PreconditionError("gap_approximation: i_k exceeds n");
  const auto terms = theta.terms();
  auto exponent = [&](std::size_t j) -> unsigned {
    if (j == 0) return 0;
    if (j == k + 1) return n;
    return terms[j - 1].exponent;
  };
  GapApprox out;
  unsigned best_gap = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    const unsigned gap = exponent(j + 1) - exponent(j);
    if (j == 0 || gap > best_gap) {
      best_gap = gap;
      out.gap_index = j;
    }
  }
  const std::size_t j = out.gap_index;
  out.q_exponent = exponent(j);
  out.a_prime = 0;
  for (std::size_t l = 1; l <= j; ++l) {
    out.a_prime += BigInt(terms[l - 1].coefficient) << (out.q_exponent - terms[l - 1].exponent);
  }
  Rational rest = 0;
  for (std::size_t l = j + 1; l <= k; ++l) {
    rest += Rational(BigInt(terms[l - 1].coefficient), BigInt(1) << terms[l - 1].exponent);
  }
  out.error = rest < 0 ? Rational(-rest) : rest;
  // error <= 2^{-n/2k} 2Q/q'  <=>  (error q')^{2k} 2^n <= (2Q)^{2k}.
  const Rational scaled = out.error * Rational(BigInt(1) << out.q_exponent);
  const BigInt num = mp::numerator(scaled), den = mp::denominator(scaled);
  const BigInt lhs = pow_big(num, 2 * k) << n;
  const BigInt rhs = pow_big(BigInt(2) * BigInt(Q) * den, 2 * k);
  out.error_bound_holds = lhs <= rhs;
  return out;
}

LemmaReport dio_lemma(const SparseDyadic& theta, std::uint64_t Q, unsigned n) {
  const std::size_t k = theta.size();
  if (k == 0) throw PreconditionError("dio_lemma: theta has no terms");
  if (static_cast<std::uint64_t>(theta.max_abs_coefficient()) > Q) {
    throw PreconditionError("dio_lemma: some |r_j| exceeds Q");
  }
  if (theta.max_exponent() > n) throw PreconditionError("dio_lemma: i_k exceeds n");
  if (!lemma_hypothesis(k, Q, n)) {
    throw PreconditionError("dio_lemma: hypothesis 2^{n/2k} > 4Q^2 fails");
  }
  LemmaReport report;
  report.gap = gap_approximation(theta, Q, n);
  if (!report.gap.error_bound_holds) {
    throw InvariantError("dio_lemma: |theta - a'/q'| exceeds 2^{-n/2k} 2Q/q' for " +
                         theta.to_string());
  }
  const Rational value = sparse_value(theta);
  report.best = best_rational_approx(value, Q);
  report.best_within_tolerance = report.best.error <= Rational(BigInt(Q), BigInt(1) << n);
  report.best_is_power_of_two = is_power_of_two(report.best.q);
  const Rational diff = Rational(report.best.a, report.best.q) -
                        Rational(report.gap.a_prime, BigInt(1) << report.gap.q_exponent);
  report.best_matches_gap = frac(diff) == 0;
  if (report.best_within_tolerance && !(report.best_is_power_of_two && report.best_matches_gap)) {
    throw InvariantError("dio_lemma: best approximation " + to_string(Rational(report.best.a, report.best.q)) +
                         " of " + theta.to_string() + " does not reduce to a'/q'");
  }
  return report;
}

}  // namespace mobius::expsum
