#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobius/arith.hpp"
#include "mobius/expsum.hpp"
#include "mobius/smoothing.hpp"

namespace mobius::pipeline {

struct Stage {
  std::string name;
  bool ok = false;
  std::string detail;
};

// The proof skeleton for "large Walsh coefficient => large coefficient at a
// dyadic point" executed on the mu table: worst S of degree k, reduction to
// a sparse dyadic theta, rational approximation with Q = max |r_j|, the
// diophantine lemma (or its gap step when the hypothesis fails, which is
// reported rather than asserted), and |mu^| at the resulting dyadic point
// against the dyadic scan.
struct Report {
  unsigned n = 0;
  unsigned k = 0;
  std::vector<Stage> stages;

  smoothing::KataiResult katai;
  std::uint64_t q_bound = 0;  // Q
  expsum::RationalApprox best;
  bool hypothesis = false;
  expsum::GapApprox gap;
  std::optional<expsum::LemmaReport> lemma;
  Rational dyadic_point;       // a'/q' mod 1, reduced
  unsigned dyadic_bits = 0;    // log2 of its denominator
  double dyadic_value = 0.0;   // |mu^(a'/q')|
  double scan_max = 0.0;       // max_a |mu^(a/2^dyadic_bits)|
  unsigned theta_bits = 0;     // log2 of theta's reduced denominator
  double theta_scan_max = 0.0; // max_a |mu^(a/2^theta_bits)|

  bool ok() const;
};

inline constexpr unsigned kMaxPipelineBits = 20;

// Requires n <= 20 and 1 <= k <= 2 (PreconditionError). An invariant
// failure in any stage throws InvariantError prefixed with the stage name.
Report run(const arith::MuTable& table, unsigned k);

}  // namespace mobius::pipeline
