#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mobius/arith.hpp"
#include "mobius/exact.hpp"
#include "mobius/walsh.hpp"

namespace mobius::circuits {

enum class NodeKind { input, and_gate, or_gate, not_gate };

// Structural violation in a circuit; node() indexes the offending node as
// passed to the constructor.
class CircuitError : public std::invalid_argument {
 public:
  CircuitError(std::size_t node, const std::string& message)
      : std::invalid_argument(message), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

struct Node {
  std::string name;
  NodeKind kind = NodeKind::input;
  unsigned digit = 0;                 // input nodes: 1-based digit index
  std::vector<std::uint32_t> inputs;  // gate operands (node indices)
};

// A validated boolean circuit over the digits x_1..x_n. Nodes are stored in
// a topological order (operands before users). true maps to +1, false to -1.
class Circuit {
 public:
  // Validates: digits in [1, n], NOT has one operand, AND/OR at least one,
  // operand indices in range, no cycles, output in range. Nodes may be
  // given in any order; they are re-sorted topologically. Throws
  // std::invalid_argument naming the first violation.
  Circuit(unsigned n, std::vector<Node> nodes, std::uint32_t output);

  unsigned inputs() const { return n_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::uint32_t output() const { return output_; }

  // Gates (AND/OR/NOT), input nodes excluded.
  std::size_t size() const;
  // Longest input-to-output path counted in gates.
  unsigned depth() const;
  // Nodes from which the output is reachable.
  std::vector<bool> reachable() const;

  // Metrics after pushing NOTs to the inputs (De Morgan) and dropping them:
  // the AND/OR gates of the negation normal form reachable from the output.
  struct Metrics {
    std::size_t size = 0;
    unsigned depth = 0;
  };
  Metrics normalized() const;

  int eval(std::uint64_t x) const;

  std::string to_netlist() const;

 private:
  unsigned n_;
  std::vector<Node> nodes_;
  std::uint32_t output_;
};

// Netlist format, one statement per line:
//   <id> = INPUT <digit> | AND <id>... | OR <id>... | NOT <id>
//   OUTPUT <id>
// '#' starts a comment; ids may be used before their definition. n is the
// number of digits (the largest INPUT digit when omitted). Errors are
// ParseError with the offending line.
Circuit parse_circuit(std::string_view text, std::optional<unsigned> n = std::nullopt);

inline constexpr unsigned kMaxTruthTableBits = 24;

// F(x) for all x < 2^n, 64 inputs per word-parallel pass.
std::vector<std::int8_t> truth_table(const Circuit& c, unsigned n);

// depth <= d and size <= n^d, on the negation-normalized circuit.
bool classify_ac0(const Circuit& c, unsigned d);

struct LmnRow {
  unsigned t = 0;
  ExactRatio tail;  // sum_{|S| > t} F^(S)^2
  double bound = 0; // 2 M 2^{-t^{1/d}/20}
  bool satisfied = false;
};

struct LmnReport {
  std::size_t size = 0;    // M (normalized)
  unsigned depth = 0;      // d = max(normalized depth, declared), at least 1
  unsigned raw_depth = 0;
  std::vector<LmnRow> rows;  // t = 1..n
  bool all_satisfied() const;
};

inline constexpr unsigned kMaxLmnBits = 22;

LmnReport lmn_check(const Circuit& c, unsigned d_declared);

struct CorrelationReport {
  unsigned n = 0;
  std::string id;
  ExactRatio mean;            // E mu F over N
  std::size_t size = 0;       // M (normalized)
  unsigned depth = 0;         // normalized depth
  unsigned raw_depth = 0;
  std::size_t raw_size = 0;
  // |E mu F| <= sum_{|S|<=t} |mu^(S)||F^(S)| + sqrt(tail_mu(t)) sqrt(tail_F(t)),
  // t = ceil(n^{1/6}), decided exactly.
  unsigned chain_t = 0;
  double chain_lhs = 0.0;
  double chain_rhs = 0.0;
  bool chain_holds = false;
  // Parseval: sum_S mu^(S) F^(S) = E mu F, exactly.
  bool parseval_holds = false;
  // d log n and n^{1/6d}, the inputs of the decay rate e^{d log n - c n^{1/6d}}.
  double d_log_n = 0.0;
  double n_root = 0.0;
};

// Requires table.bits() == circuit inputs (DomainError otherwise).
CorrelationReport mobius_correlation(const Circuit& c, const arith::MuTable& table,
                                     std::string id = "");

// Same report from precomputed tables and spectra (mu's spectrum is shared
// across a corpus).
CorrelationReport correlation_from_spectra(const walsh::WalshSpectrum& mu_spectrum,
                                           std::span<const std::int8_t> mu_values,
                                           std::span<const std::int8_t> f_values,
                                           const walsh::WalshSpectrum& f_spectrum);

// ceil(n^{1/6}) computed in integers.
unsigned sixth_root_ceil(unsigned n);

// Experiment corpus.
struct Family {
  enum class Kind { and_tree, or_tree, random_dnf, digit_comparator, constant_true, walsh_character };
  Kind kind = Kind::and_tree;
  unsigned width = 3;          // random_dnf: literals per term
  unsigned terms = 10;         // random_dnf: term count
  std::uint64_t seed = 1;      // random_dnf
  double threshold = 0.5;      // digit_comparator: F = +1 iff x < ceil(threshold N)
  unsigned digit = 1;          // walsh_character: F(x) = (-1)^{x_digit}

  std::string name() const;
  // "and_tree", "or_tree", "random_dnf:w:m:seed", "digit_comparator:0.5",
  // "constant_true", "walsh_character:i".
  static Family parse(const std::string& spec);
};

// Deterministic given the family (including seed). Throws
// std::invalid_argument for parameters invalid for n.
Circuit generate(const Family& family, unsigned n);

// count random DNFs of the given width; member i has 1 + i mod max_terms
// terms and seed base_seed + i.
std::vector<Family> dnf_corpus(unsigned count, std::uint64_t base_seed, unsigned width = 3,
                               unsigned max_terms = 30);

}  // namespace mobius::circuits
