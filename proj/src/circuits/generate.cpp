#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <type_traits>

#include "mobius/circuits.hpp"

namespace mobius::circuits {

namespace {

// Builds nodes with shared input and negated-input nodes.
class Builder {
 public:
  explicit Builder(unsigned n) : n_(n), positive_(n + 1, kNone), negative_(n + 1, kNone) {}

  std::uint32_t literal(unsigned digit, bool positive) {
    auto& slot = positive ? positive_[digit] : negative_[digit];
    if (slot != kNone) return slot;
    if (positive) {
      slot = add({"x" + std::to_string(digit), NodeKind::input, digit, {}});
    } else {
      const auto x = literal(digit, true);
      slot = add({"nx" + std::to_string(digit), NodeKind::not_gate, 0, {x}});
    }
    return slot;
  }

  std::uint32_t gate(NodeKind kind, std::vector<std::uint32_t> operands) {
    const char* prefix = kind == NodeKind::and_gate ? "a" : "o";
    return add({prefix + std::to_string(gates_++), kind, 0, std::move(operands)});
  }

  Circuit finish(std::uint32_t output) { return Circuit(n_, std::move(nodes_), output); }

 private:
  static constexpr std::uint32_t kNone = ~0u;

  std::uint32_t add(Node node) {
    nodes_.push_back(std::move(node));
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  unsigned n_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> positive_, negative_;
  unsigned gates_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string part; std::getline(in, part, sep);) out.push_back(part);
  return out;
}

template <class T>
T number(const std::string& s) {
  std::size_t used = 0;
  T v{};
  try {
    if constexpr (std::is_floating_point_v<T>) {
      v = std::stod(s, &used);
    } else {
      v = static_cast<T>(std::stoull(s, &used));
    }
  } catch (const std::invalid_argument&) {
    used = std::string::npos;
  }
  if (used != s.size() || s.empty() || s[0] == '-')
    throw std::invalid_argument("family: bad number '" + s + "'");
  return v;
}

}  // namespace

std::string Family::name() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::and_tree: return "and_tree";
    case Kind::or_tree: return "or_tree";
    case Kind::constant_true: return "constant_true";
    case Kind::random_dnf: out << "random_dnf:" << width << ':' << terms << ':' << seed; break;
    case Kind::digit_comparator: out << "digit_comparator:" << threshold; break;
    case Kind::walsh_character: out << "walsh_character:" << digit; break;
  }
  return out.str();
}

Family Family::parse(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw std::invalid_argument("family: empty name");
  Family f;
  const auto& head = parts[0];
  auto arity = [&](std::size_t expected) {
    if (parts.size() != expected)
      throw std::invalid_argument("family '" + head + "': expected " +
                                  std::to_string(expected - 1) + " parameter(s)");
  };
  try {
    if (head == "and_tree") {
      arity(1);
      f.kind = Kind::and_tree;
    } else if (head == "or_tree") {
      arity(1);
      f.kind = Kind::or_tree;
    } else if (head == "constant_true") {
      arity(1);
      f.kind = Kind::constant_true;
    } else if (head == "random_dnf") {
      arity(4);
      f.kind = Kind::random_dnf;
      f.width = number<unsigned>(parts[1]);
      f.terms = number<unsigned>(parts[2]);
      f.seed = number<std::uint64_t>(parts[3]);
    } else if (head == "digit_comparator") {
      arity(2);
      f.kind = Kind::digit_comparator;
      f.threshold = number<double>(parts[1]);
    } else if (head == "walsh_character") {
      arity(2);
      f.kind = Kind::walsh_character;
      f.digit = number<unsigned>(parts[1]);
    } else {
      throw std::invalid_argument("unknown family '" + head + "'");
    }
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("family '" + spec + "': parameter out of range");
  }
  return f;
}

Circuit generate(const Family& family, unsigned n) {
  if (n == 0 || n > 64) throw std::invalid_argument("generate: n must be in [1, 64]");
  Builder b(n);
  using Kind = Family::Kind;
  switch (family.kind) {
    case Kind::and_tree:
    case Kind::or_tree: {
      std::vector<std::uint32_t> xs;
      for (unsigned i = 1; i <= n; ++i) xs.push_back(b.literal(i, true));
      return b.finish(b.gate(family.kind == Kind::and_tree ? NodeKind::and_gate : NodeKind::or_gate,
                             std::move(xs)));
    }
    case Kind::constant_true: {
      const auto x = b.literal(1, true);
      const auto nx = b.literal(1, false);
      return b.finish(b.gate(NodeKind::or_gate, {x, nx}));
    }
    case Kind::walsh_character: {
      if (family.digit < 1 || family.digit > n)
        throw std::invalid_argument("walsh_character: digit outside [1, n]");
      return b.finish(b.literal(family.digit, false));
    }
    case Kind::random_dnf: {
      if (family.width < 1 || family.width > n)
        throw std::invalid_argument("random_dnf: width must be in [1, n]");
      if (family.terms < 1) throw std::invalid_argument("random_dnf: needs at least one term");
      // Raw engine output only, so the corpus is identical across standard libraries.
      std::mt19937_64 rng(family.seed);
      std::vector<unsigned> digits(n);
      std::vector<std::uint32_t> terms;
      for (unsigned m = 0; m < family.terms; ++m) {
        std::iota(digits.begin(), digits.end(), 1u);
        std::vector<std::uint32_t> lits;
        for (unsigned j = 0; j < family.width; ++j) {
          const auto pick = j + rng() % (n - j);
          std::swap(digits[j], digits[pick]);
          lits.push_back(b.literal(digits[j], (rng() & 1) != 0));
        }
        terms.push_back(b.gate(NodeKind::and_gate, std::move(lits)));
      }
      return b.finish(b.gate(NodeKind::or_gate, std::move(terms)));
    }
    case Kind::digit_comparator: {
      if (!(family.threshold >= 0.0 && family.threshold <= 1.0))
        throw std::invalid_argument("digit_comparator: threshold must be in [0, 1]");
      if (n > 62) throw std::invalid_argument("digit_comparator: n must be at most 62");
      const std::uint64_t N = 1ULL << n;
      const auto T = static_cast<std::uint64_t>(
          std::ceil(static_cast<long double>(family.threshold) * static_cast<long double>(N)));
      if (T >= N) {
        const auto x = b.literal(1, true);
        const auto nx = b.literal(1, false);
        return b.finish(b.gate(NodeKind::or_gate, {x, nx}));
      }
      if (T == 0) {
        const auto x = b.literal(1, true);
        const auto nx = b.literal(1, false);
        return b.finish(b.gate(NodeKind::and_gate, {x, nx}));
      }
      // x < T iff at the highest digit where they differ, x has 0 and T has 1.
      std::vector<std::uint32_t> terms;
      for (unsigned i = 1; i <= n; ++i) {
        if (((T >> (i - 1)) & 1) == 0) continue;
        std::vector<std::uint32_t> lits{b.literal(i, false)};
        for (unsigned j = i + 1; j <= n; ++j) lits.push_back(b.literal(j, ((T >> (j - 1)) & 1) != 0));
        terms.push_back(b.gate(NodeKind::and_gate, std::move(lits)));
      }
      return b.finish(b.gate(NodeKind::or_gate, std::move(terms)));
    }
  }
  throw std::invalid_argument("generate: unknown family");
}

std::vector<Family> dnf_corpus(unsigned count, std::uint64_t base_seed, unsigned width,
                               unsigned max_terms) {
  if (max_terms == 0) throw std::invalid_argument("dnf_corpus: max_terms must be positive");
  std::vector<Family> out;
  for (unsigned i = 0; i < count; ++i) {
    Family f;
    f.kind = Family::Kind::random_dnf;
    f.width = width;
    f.terms = 1 + i % max_terms;
    f.seed = base_seed + i;
    out.push_back(f);
  }
  return out;
}

}  // namespace mobius::circuits
