#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_map>

#include "mobius/circuits.hpp"
#include "mobius/errors.hpp"

namespace mobius::circuits {

namespace {

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

std::vector<std::string> tokens(std::string_view statement) {
  std::string spaced;
  for (char ch : statement) {
    if (ch == '=') {
      spaced += " = ";
    } else {
      spaced += ch;
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

struct Pending {
  Node node;
  std::vector<std::string> operands;
  std::size_t line = 0;
};

}  // namespace

Circuit parse_circuit(std::string_view text, std::optional<unsigned> n) {
  std::vector<Pending> defs;
  std::unordered_map<std::string, std::uint32_t> ids;
  std::optional<std::string> output;
  std::size_t output_line = 0;
  unsigned max_digit = 0;

  std::size_t line_no = 0;
  std::size_t last_statement = 1;  // where a missing OUTPUT is reported
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t from = 0;
    while (from <= line.size()) {
      std::size_t semi = line.find(';', from);
      if (semi == std::string_view::npos) semi = line.size();
      const auto tok = tokens(line.substr(from, semi - from));
      from = semi + 1;
      if (tok.empty()) continue;

      last_statement = line_no;
      if (upper(tok[0]) == "OUTPUT") {
        if (tok.size() != 2) throw ParseError(line_no, "OUTPUT takes exactly one id");
        if (output) throw ParseError(line_no, "second OUTPUT statement");
        output = tok[1];
        output_line = line_no;
        continue;
      }
      if (tok.size() < 3 || tok[1] != "=")
        throw ParseError(line_no, "expected '<id> = <GATE> ...' or 'OUTPUT <id>'");
      const std::string& id = tok[0];
      if (ids.contains(id)) throw ParseError(line_no, "duplicate id '" + id + "'");

      Pending p;
      p.line = line_no;
      p.node.name = id;
      const std::string op = upper(tok[2]);
      std::vector<std::string> args(tok.begin() + 3, tok.end());
      if (op == "INPUT") {
        p.node.kind = NodeKind::input;
        if (args.size() != 1) throw ParseError(line_no, "INPUT takes one digit index");
        unsigned digit = 0;
        const auto& a = args[0];
        auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), digit);
        if (ec != std::errc() || ptr != a.data() + a.size())
          throw ParseError(line_no, "bad digit index '" + a + "'");
        if (digit < 1 || digit > 64 || (n && digit > *n))
          throw ParseError(line_no, "digit " + a + " out of range");
        p.node.digit = digit;
        max_digit = std::max(max_digit, digit);
      } else if (op == "NOT") {
        p.node.kind = NodeKind::not_gate;
        if (args.size() != 1) throw ParseError(line_no, "NOT takes exactly one operand");
        p.operands = std::move(args);
      } else if (op == "AND" || op == "OR") {
        p.node.kind = op == "AND" ? NodeKind::and_gate : NodeKind::or_gate;
        if (args.empty()) throw ParseError(line_no, op + " needs at least one operand");
        p.operands = std::move(args);
      } else {
        throw ParseError(line_no, "unknown gate '" + tok[2] + "'");
      }
      ids.emplace(id, static_cast<std::uint32_t>(defs.size()));
      defs.push_back(std::move(p));
    }
    if (end == text.size()) break;
  }

  if (!output) throw ParseError(last_statement, "missing OUTPUT statement");
  auto out_it = ids.find(*output);
  if (out_it == ids.end()) throw ParseError(output_line, "unknown id '" + *output + "'");

  for (auto& p : defs) {
    for (const auto& name : p.operands) {
      auto it = ids.find(name);
      if (it == ids.end()) throw ParseError(p.line, "unknown id '" + name + "'");
      p.node.inputs.push_back(it->second);
    }
  }

  const unsigned digits = n.value_or(std::max(1u, max_digit));
  std::vector<Node> nodes;
  nodes.reserve(defs.size());
  for (auto& p : defs) nodes.push_back(std::move(p.node));
  try {
    return Circuit(digits, std::move(nodes), out_it->second);
  } catch (const CircuitError& e) {
    throw ParseError(defs[e.node()].line, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(output_line, e.what());
  }
}

}  // namespace mobius::circuits
