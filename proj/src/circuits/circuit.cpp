#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

#include "mobius/circuits.hpp"

namespace mobius::circuits {

namespace {

const char* keyword(NodeKind kind) {
  switch (kind) {
    case NodeKind::input: return "INPUT";
    case NodeKind::and_gate: return "AND";
    case NodeKind::or_gate: return "OR";
    case NodeKind::not_gate: return "NOT";
  }
  return "?";
}

}  // namespace

Circuit::Circuit(unsigned n, std::vector<Node> nodes, std::uint32_t output) : n_(n) {
  if (n == 0 || n > 64) throw std::invalid_argument("circuit: digit count must be in [1, 64]");
  if (nodes.empty()) throw std::invalid_argument("circuit: no nodes");
  if (output >= nodes.size()) throw std::invalid_argument("circuit: output index out of range");

  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const Node& node = nodes[v];
    const std::string label = "node '" + node.name + "'";
    switch (node.kind) {
      case NodeKind::input:
        if (node.digit < 1 || node.digit > n)
          throw CircuitError(v, label + ": digit " + std::to_string(node.digit) +
                                    " outside [1, " + std::to_string(n) + "]");
        if (!node.inputs.empty()) throw CircuitError(v, label + ": INPUT takes no operands");
        break;
      case NodeKind::not_gate:
        if (node.inputs.size() != 1)
          throw CircuitError(v, label + ": NOT needs exactly one operand");
        break;
      case NodeKind::and_gate:
      case NodeKind::or_gate:
        if (node.inputs.empty())
          throw CircuitError(v, label + ": " + keyword(node.kind) + " needs an operand");
        break;
    }
    for (std::uint32_t u : node.inputs)
      if (u >= nodes.size()) throw CircuitError(v, label + ": operand index out of range");
  }

  // Iterative DFS post-order; a grey operand closes a cycle.
  enum : std::uint8_t { white, grey, black };
  std::vector<std::uint8_t> colour(nodes.size(), white);
  std::vector<std::uint32_t> order;
  order.reserve(nodes.size());
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::uint32_t root = 0; root < nodes.size(); ++root) {
    if (colour[root] != white) continue;
    stack.emplace_back(root, 0);
    colour[root] = grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < nodes[v].inputs.size()) {
        const std::uint32_t u = nodes[v].inputs[next++];
        if (colour[u] == grey)
          throw CircuitError(v, "cycle: back-edge '" + nodes[v].name + "' -> '" +
                                    nodes[u].name + "'");
        if (colour[u] == white) {
          colour[u] = grey;
          stack.emplace_back(u, 0);
        }
      } else {
        colour[v] = black;
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  std::vector<std::uint32_t> position(nodes.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  nodes_.reserve(nodes.size());
  for (std::uint32_t v : order) {
    Node node = std::move(nodes[v]);
    for (auto& u : node.inputs) u = position[u];
    nodes_.push_back(std::move(node));
  }
  output_ = position[output];
}

std::size_t Circuit::size() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& v) {
    return v.kind != NodeKind::input;
  }));
}

unsigned Circuit::depth() const {
  std::vector<unsigned> d(nodes_.size(), 0);
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].kind == NodeKind::input) continue;
    unsigned m = 0;
    for (auto u : nodes_[v].inputs) m = std::max(m, d[u]);
    d[v] = m + 1;
  }
  return d[output_];
}

std::vector<bool> Circuit::reachable() const {
  std::vector<bool> seen(nodes_.size(), false);
  seen[output_] = true;
  for (std::size_t v = nodes_.size(); v-- > 0;) {
    if (!seen[v]) continue;
    for (auto u : nodes_[v].inputs) seen[u] = true;
  }
  return seen;
}

// A (node, polarity) pair of the original circuit becomes an NNF gate when
// the node is AND/OR; NOT only flips polarity and inputs become literals.
Circuit::Metrics Circuit::normalized() const {
  const std::size_t count = nodes_.size();
  std::vector<std::array<unsigned, 2>> d(count, {0, 0});
  for (std::size_t v = 0; v < count; ++v) {
    const Node& node = nodes_[v];
    for (int p = 0; p < 2; ++p) {
      switch (node.kind) {
        case NodeKind::input: d[v][p] = 0; break;
        case NodeKind::not_gate: d[v][p] = d[node.inputs[0]][1 - p]; break;
        default: {
          unsigned m = 0;
          for (auto u : node.inputs) m = std::max(m, d[u][p]);
          d[v][p] = m + 1;
        }
      }
    }
  }

  std::vector<std::array<bool, 2>> seen(count, {false, false});
  seen[output_][0] = true;
  std::size_t gates = 0;
  for (std::size_t v = count; v-- > 0;) {
    const Node& node = nodes_[v];
    for (int p = 0; p < 2; ++p) {
      if (!seen[v][p]) continue;
      if (node.kind == NodeKind::not_gate) {
        seen[node.inputs[0]][1 - p] = true;
      } else if (node.kind != NodeKind::input) {
        ++gates;
        for (auto u : node.inputs) seen[u][p] = true;
      }
    }
  }
  return {gates, d[output_][0]};
}

int Circuit::eval(std::uint64_t x) const {
  std::vector<bool> value(nodes_.size());
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    const Node& node = nodes_[v];
    switch (node.kind) {
      case NodeKind::input: value[v] = (x >> (node.digit - 1)) & 1; break;
      case NodeKind::not_gate: value[v] = !value[node.inputs[0]]; break;
      case NodeKind::and_gate:
        value[v] = std::all_of(node.inputs.begin(), node.inputs.end(),
                               [&](std::uint32_t u) { return bool(value[u]); });
        break;
      case NodeKind::or_gate:
        value[v] = std::any_of(node.inputs.begin(), node.inputs.end(),
                               [&](std::uint32_t u) { return bool(value[u]); });
        break;
    }
  }
  return value[output_] ? 1 : -1;
}

std::string Circuit::to_netlist() const {
  std::ostringstream out;
  for (const Node& node : nodes_) {
    out << node.name << " = " << keyword(node.kind);
    if (node.kind == NodeKind::input) out << ' ' << node.digit;
    for (auto u : node.inputs) out << ' ' << nodes_[u].name;
    out << '\n';
  }
  out << "OUTPUT " << nodes_[output_].name << '\n';
  return out.str();
}

}  // namespace mobius::circuits
