#include "mobius/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mobius/errors.hpp"
#include "mobius/walsh.hpp"

namespace mobius::pipeline {

namespace {

// Runs one stage; invariant failures are re-thrown tagged with the stage.
template <class F>
void stage(Report& report, const std::string& name, F&& body) {
  Stage s{name, false, ""};
  try {
    s.detail = body();
  } catch (const InvariantError& e) {
    throw InvariantError(name + ": " + e.what());
  }
  s.ok = true;
  report.stages.push_back(std::move(s));
}

unsigned log2_exact(const BigInt& q) {
  if (!is_power_of_two(q)) throw InvariantError("denominator " + q.str() + " is not a power of two");
  return static_cast<unsigned>(boost::multiprecision::msb(q));
}

}  // namespace

bool Report::ok() const {
  for (const auto& s : stages)
    if (!s.ok) return false;
  return !stages.empty();
}

Report run(const arith::MuTable& table, unsigned k) {
  const unsigned n = table.bits();
  if (n > kMaxPipelineBits)
    throw PreconditionError("pipeline: n exceeds " + std::to_string(kMaxPipelineBits));
  if (k < 1 || k > 2) throw PreconditionError("pipeline: k must be 1 or 2");
  if (k > n) throw PreconditionError("pipeline: k exceeds n");

  Report report;
  report.n = n;
  report.k = k;
  walsh::BitIndexSet worst(n, 0);

  stage(report, "walsh-decay", [&] {
    const auto maxima = walsh::mu_walsh_decay(table);
    const auto& row = maxima.at(k);
    if (row.max_abs_numerator == 0) throw InvariantError("every coefficient of degree k vanishes");
    worst = walsh::BitIndexSet(n, row.witness_mask);
    std::ostringstream out;
    out << "S=" << worst.to_string() << " |mu^(S)|=" << row.max_abs_numerator << "/" << table.size();
    return out.str();
  });

  stage(report, "katai", [&] {
    report.katai = smoothing::katai_reduce<std::int8_t>(table.values(), worst);
    if (report.katai.value_abs < report.katai.bound)
      throw InvariantError("|mu^(theta)| below (delta/10k)^{4k}");
    std::ostringstream out;
    out << "theta=" << report.katai.theta.to_string() << " |mu^(theta)|=" << report.katai.value_abs
        << " bound=" << report.katai.bound;
    return out.str();
  });

  const auto& theta = report.katai.theta;
  const Rational theta_value = expsum::sparse_value(theta);
  report.q_bound = static_cast<std::uint64_t>(std::max<std::int64_t>(1, theta.max_abs_coefficient()));

  stage(report, "approximation", [&] {
    report.best = expsum::best_rational_approx(theta_value, report.q_bound);
    if (!expsum::satisfies_dirichlet_bound(theta_value, report.best, report.q_bound))
      throw InvariantError("Dirichlet bound fails");
    std::ostringstream out;
    out << "Q=" << report.q_bound << " a/q=" << report.best.a << "/" << report.best.q
        << " error=" << to_string(report.best.error);
    return out.str();
  });

  stage(report, "lemma", [&] {
    report.hypothesis = expsum::lemma_hypothesis(theta.size(), report.q_bound, n);
    std::ostringstream out;
    out << "hypothesis 2^{n/2k} > 4Q^2: " << (report.hypothesis ? "holds" : "fails (reported)");
    if (report.hypothesis) {
      report.lemma = expsum::dio_lemma(theta, report.q_bound, n);
      report.gap = report.lemma->gap;
      out << "; best denominator is a power of two";
    } else {
      report.gap = expsum::gap_approximation(theta, report.q_bound, n);
    }
    out << "; q'=2^" << report.gap.q_exponent << " a'=" << report.gap.a_prime
        << " gap bound " << (report.gap.error_bound_holds ? "holds" : "fails");
    return out.str();
  });

  stage(report, "dyadic-scan", [&] {
    const Rational point(report.gap.a_prime, BigInt(1) << report.gap.q_exponent);
    report.dyadic_point = frac(point);
    report.dyadic_bits = log2_exact(denominator(report.dyadic_point));
    report.dyadic_value =
        std::abs(expsum::fourier_coefficient<std::int8_t>(table.values(), report.dyadic_point));
    report.theta_bits = log2_exact(denominator(theta_value));
    const auto rows =
        expsum::mu_dyadic_scan(table, std::max(report.dyadic_bits, report.theta_bits));
    report.scan_max = rows[report.dyadic_bits].max_abs;
    report.theta_scan_max = rows[report.theta_bits].max_abs;
    if (report.dyadic_value > report.scan_max * (1 + 1e-12) + 1e-15)
      throw InvariantError("|mu^(a'/q')| exceeds the scan maximum at its level");
    if (report.katai.value_abs > report.theta_scan_max * (1 + 1e-12) + 1e-15)
      throw InvariantError("|mu^(theta)| exceeds the scan maximum at its level");
    std::ostringstream out;
    out << "a'/q'=" << to_string(report.dyadic_point) << " |mu^|=" << report.dyadic_value
        << " scan max at 2^" << report.dyadic_bits << "=" << report.scan_max
        << "; theta level 2^" << report.theta_bits << " scan max=" << report.theta_scan_max;
    return out.str();
  });

  return report;
}

}  // namespace mobius::pipeline
