#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobius/exact.hpp"
#include "mobius/expsum.hpp"
#include "mobius/square_wave.hpp"
#include "mobius/walsh.hpp"

namespace mobius::smoothing {

// The smoothed square wave
//
//   phi(t)  = psi(t + eps/24)
//   box     = (24/eps) 1_[-eps/48, eps/48]
//   psi0    = phi * box * box
//   psi1(t) = sum_{|r| <= R} psi0^(r) e(rt),   R = floor(100/eps^3)
//   wave    = psi1 / (1 + eps/3)
//
// Coefficients use g^(r) = int_0^1 g(t) e(-rt) dt, which gives
//   psi^(r) = -2i/(pi r) for odd r, 0 for even r,
//   phi^(r) = e(r eps/24) psi^(r),
//   box^(r) = sin(pi r eps/24) / (pi r eps/24),
//   psi0^(r) = phi^(r) box^(r)^2.
//
// Two evaluation routes: the truncated series (coefficients folded onto a
// dyadic grid and synthesised by one FFT), available while R is at most
// kMaxSeriesCutoff, and the closed form psi0(t)/(1 + eps/3), which is off
// by at most closed_form_error() everywhere.
class SmoothedSquareWave {
 public:
  static constexpr std::uint64_t kMaxSeriesCutoff = 1ULL << 21;

  // Throws std::domain_error unless 0 < eps <= 1/2.
  explicit SmoothedSquareWave(double epsilon);

  double epsilon() const { return epsilon_; }
  std::uint64_t cutoff() const { return cutoff_; }  // R
  double normalisation() const { return 1.0 + epsilon_ / 3.0; }
  bool has_series() const { return cutoff_ <= kMaxSeriesCutoff; }

  std::complex<double> psi_hat(std::int64_t r) const;
  std::complex<double> phi_hat(std::int64_t r) const;
  double box_hat(std::int64_t r) const;
  std::complex<double> psi0_hat(std::int64_t r) const;
  // a_r = psi0^(r)/(1 + eps/3) for |r| <= R, else 0.
  std::complex<double> coefficient(std::int64_t r) const;

  // Rigorous upper bound on sum_{|r| > R} |psi0^(r)|, from
  // |psi0^(r)| <= 2*576 / (pi^3 eps^2 |r|^3) and sum_{r > R} r^-3 <= 1/(2R^2).
  double tail_bound() const;
  double closed_form_error() const { return tail_bound() / normalisation(); }

  // psi0 at t: the triangle-kernel smoothing of phi's two jumps.
  double psi0(double t) const;

  // Series value at one point (O(R)); requires has_series().
  std::complex<double> series_at(double t) const;

  struct Grid {
    std::vector<double> values;  // wave(j / 2^bits)
    double max_imag = 0.0;       // imaginary residue of the series route
    double error = 0.0;          // certified |computed - true|
    bool series = false;
  };
  // wave(j / 2^bits) for all j < 2^bits.
  Grid dyadic_grid(unsigned bits) const;

 private:
  double epsilon_;
  std::uint64_t cutoff_;
};

// Value of the smoothed wave at t: series when available, else closed form.
double smoothed_eval(const SmoothedSquareWave& w, double t);

struct ClosenessReport {
  // mean_{x < 2^n} |psi(x/2^i) - wave(x/2^i)| for i = 0..n
  std::vector<double> per_level;
  // mean_{x < 2^n} |psi(x/2^i) - psi0(x/2^i)| for i = 0..n
  std::vector<double> psi0_per_level;
  double max = 0.0;
  double certified_slack = 0.0;  // added to max when the closed form is used
  bool series = false;
};

// Exact enumeration over residues mod 2^i for each i <= n (n <= 20). Throws
// InvariantError if any level exceeds eps.
ClosenessReport closeness_check(const SmoothedSquareWave& w, unsigned n);

enum class KataiMode { exhaustive, sampled };

struct KataiOptions {
  KataiMode mode = KataiMode::exhaustive;
  std::uint64_t samples = 2000;  // sampled mode
  std::uint64_t seed = 1;
};

inline constexpr unsigned kMaxExhaustiveBits = 22;

struct KataiResult {
  walsh::BitIndexSet set{0, 0};
  ExactRatio delta;                 // |f^(S)|
  double epsilon = 0.0;             // delta / 2k
  std::uint64_t cutoff = 0;         // R
  expsum::SparseDyadic theta;
  Rational theta_value;             // theta mod 1
  double value_abs = 0.0;           // |f^(theta)|
  double bound = 0.0;               // (delta/10k)^{4k}
  double smoothed_product = 0.0;    // |E f prod wave(x/2^i)|
  double smoothed_floor = 0.0;      // delta - k eps
  double smoothed_error = 0.0;      // certified error of smoothed_product
  std::uint64_t candidates = 0;     // distinct theta evaluated
  KataiMode mode = KataiMode::exhaustive;
};

// Reduces a large Walsh coefficient at S to a large classical Fourier
// coefficient at a sparse dyadic theta = sum_j r_j / 2^{i_j} with odd
// |r_j| <= R (the support of the wave's expansion).
//
// Exhaustive mode (|S| <= 2) enumerates every theta mod 1 such tuples reach:
// the residues a mod 2^{i_k}, at most 2^kMaxExhaustiveBits of them. It
// throws InvariantError if the result falls below (delta/10k)^{4k} or the
// smoothed product falls below delta - k eps. Sampled mode draws r_j with
// probability proportional to |a_{r_j}| and keeps the best.
template <class T>
KataiResult katai_reduce(std::span<const T> values, const walsh::BitIndexSet& s,
                         const KataiOptions& options = {});

std::string to_string(KataiMode mode);

}  // namespace mobius::smoothing
