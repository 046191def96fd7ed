#pragma once

#include <complex>
#include <functional>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobius/arith.hpp"
#include "mobius/exact.hpp"

namespace mobius::expsum {

struct DyadicTerm {
  std::int64_t coefficient = 0;
  unsigned exponent = 0;
  friend bool operator==(const DyadicTerm&, const DyadicTerm&) = default;
};

// theta = r_1/2^{i_1} + ... + r_k/2^{i_k}, 1 <= i_1 < ... < i_k.
class SparseDyadic {
 public:
  SparseDyadic() = default;
  explicit SparseDyadic(std::vector<DyadicTerm> terms);

  std::span<const DyadicTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  unsigned max_exponent() const { return terms_.empty() ? 0 : terms_.back().exponent; }
  std::int64_t max_abs_coefficient() const;

  // The plain sum, not reduced mod 1.
  Rational sum() const;
  // "r1:i1;r2:i2", the CSV cell format.
  std::string to_string() const;
  static SparseDyadic parse(const std::string& text);

  friend bool operator==(const SparseDyadic&, const SparseDyadic&) = default;

 private:
  std::vector<DyadicTerm> terms_;
};

// theta mod 1 as a reduced fraction in [0, 1).
Rational sparse_value(const SparseDyadic& theta);

// (1/N) sum_x f(x) e(theta x) for exact rational theta. Dyadic denominators
// go through exact residue-class sums; others through a direct pass with
// exact phase reduction (a x mod m) and blockwise compensated summation.
template <class T>
std::complex<double> fourier_coefficient(std::span<const T> values, const Rational& theta);

// Integer residue-class sums mod 2^bits, reusable across many theta = a/2^bits.
class DyadicSums {
 public:
  template <class T>
  DyadicSums(std::span<const T> values, unsigned bits);

  unsigned bits() const { return bits_; }
  std::uint64_t count() const { return count_; }
  std::span<const std::int64_t> sums() const { return sums_; }

  // (1/N) sum_c sums[c] e(a c / 2^bits), one exact-angle multiply per class.
  std::complex<double> at(std::int64_t a) const;
  // |value| for every a in [0, 2^bits), via one inverse FFT.
  std::vector<double> all_magnitudes() const;

  // The same sums reduced mod 2^bits (bits <= this->bits()).
  DyadicSums fold(unsigned bits) const;

  struct Peak {
    std::uint64_t a = 0;
    double magnitude = -1.0;
  };
  // Largest |value| over a in [0, 2^bits) with allowed(a) (every a when
  // empty). The FFT shortlists; candidates are re-evaluated with at().
  // Ties within 1e-12 relative go to the smaller a.
  Peak peak(const std::function<bool(std::uint64_t)>& allowed = {}) const;

 private:
  DyadicSums(unsigned bits, std::uint64_t count, std::vector<std::int64_t> sums)
      : bits_(bits), count_(count), sums_(std::move(sums)) {}

  unsigned bits_;
  std::uint64_t count_;
  std::vector<std::int64_t> sums_;
};

struct RationalApprox {
  BigInt a;
  BigInt q;
  Rational error;  // |theta - a/q|
};

// Among 1 <= q <= Q, the a/q minimising |q theta - a| (ties: smaller q, then
// smaller a): the last continued-fraction convergent with denominator <= Q.
// Satisfies |theta - a/q| <= 1/(q (Q+1)). Throws PreconditionError if Q < 1.
RationalApprox best_rational_approx(const Rational& theta, std::uint64_t Q);

// Dirichlet's bound q |q theta - a| <= q/(Q+1), checked exactly.
bool satisfies_dirichlet_bound(const Rational& theta, const RationalApprox& approx,
                               std::uint64_t Q);

// 2^{n/2k} > 4 Q^2, decided exactly as 2^n > (4 Q^2)^{2k}.
bool lemma_hypothesis(std::size_t k, std::uint64_t Q, unsigned n);

// The pigeonhole step: with i_0 = 0, i_{k+1} = n, the largest gap
// i_{j+1} - i_j (smallest j on ties) gives q' = 2^{i_j} and
// a' = r_1 2^{i_j - i_1} + ... + r_j with |theta - a'/q'| <= 2^{-n/2k} 2Q/q'.
struct GapApprox {
  std::size_t gap_index = 0;  // j
  unsigned q_exponent = 0;    // i_j
  BigInt a_prime;
  Rational error;             // |theta - a'/q'|, theta unreduced
  bool error_bound_holds = false;
};

GapApprox gap_approximation(const SparseDyadic& theta, std::uint64_t Q, unsigned n);

struct LemmaReport {
  GapApprox gap;
  RationalApprox best;
  bool best_within_tolerance = false;  // |theta - a/q| <= Q/2^n
  bool best_is_power_of_two = false;
  bool best_matches_gap = false;       // a/q = a'/q' mod 1
};

// The sparse dyadic diophantine lemma. Throws PreconditionError if some
// |r_j| > Q, i_k > n, or the hypothesis 2^{n/2k} > 4Q^2 fails; throws
// InvariantError if the error bound or the power-of-two conclusion fails.
LemmaReport dio_lemma(const SparseDyadic& theta, std::uint64_t Q, unsigned n);

struct ScanRow {
  unsigned t = 0;
  std::uint64_t a_witness = 0;
  double max_abs = 0.0;
};

inline constexpr unsigned kMaxScanBits = 20;

// max_a |f^(a/2^t)| for t = 0..t_max. One bucketing pass at 2^{t_max},
// folded down per t, then one inverse FFT per t; the witness value is
// recomputed by exact-angle evaluation.
std::vector<ScanRow> mu_dyadic_scan(const arith::MuTable& table, unsigned t_max);

// |f^(a/2^t + d)| for each offset d. Offsets must satisfy |d| <= 2^10/N.
std::vector<double> near_dyadic_check(const arith::MuTable& table, std::int64_t a, unsigned t,
                                      std::span<const Rational> offsets);

}  // namespace mobius::expsum
