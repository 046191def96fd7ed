// mobius: experiment harness. Every subcommand writes CSV (or JSON with
// --json) to --out or stdout, and exits 1 when an asserted invariant fails.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mobius/arith.hpp"
#include "mobius/circuits.hpp"
#include "mobius/errors.hpp"
#include "mobius/expsum.hpp"
#include "mobius/parallel.hpp"
#include "mobius/pipeline.hpp"
#include "mobius/report.hpp"
#include "mobius/smoothing.hpp"
#include "mobius/walsh.hpp"

namespace {

using namespace mobius;

struct Common {
  std::string out;
  bool json = false;
  unsigned threads = 0;
};

void emit(const std::vector<Table>& tables, const Common& common) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!common.out.empty()) {
    file.open(common.out);
    if (!file) throw std::runtime_error("cannot open " + common.out);
    os = &file;
  }
  if (common.json) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& t : tables) doc[t.schema()] = t.to_json();
    *os << doc.dump(2) << '\n';
  } else {
    for (const auto& t : tables) t.write_csv(*os);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "mu" / "mobius" / "liouville" / "walsh_character:i"
std::vector<std::int8_t> function_table(const std::string& f, unsigned n) {
  if (f.starts_with("walsh_character:")) {
    const unsigned i = static_cast<unsigned>(std::stoul(f.substr(16)));
    if (i < 1 || i > n) throw std::invalid_argument("walsh_character: digit outside [1, n]");
    std::vector<std::int8_t> v(std::uint64_t{1} << n);
    for (std::uint64_t x = 0; x < v.size(); ++x) v[x] = arith::digit(x, i) ? -1 : 1;
    return v;
  }
  const auto kind = arith::parse_table_kind(f == "mu" ? "mobius" : f);
  const auto table = arith::sieve(n, kind);
  return {table.values().begin(), table.values().end()};
}

std::vector<unsigned> parse_indices(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');)
    if (!part.empty()) out.push_back(static_cast<unsigned>(std::stoul(part)));
  return out;
}

struct CircuitSource {
  std::string netlist;
  std::string family;
  unsigned count = 1;
  std::uint64_t seed = 1;
};

// (label, circuit) pairs from a netlist file, one family, or the DNF corpus.
std::vector<std::pair<std::string, circuits::Circuit>> load_circuits(const CircuitSource& src,
                                                                     unsigned n) {
  std::vector<std::pair<std::string, circuits::Circuit>> out;
  if (!src.netlist.empty()) {
    try {
      out.emplace_back(src.netlist, circuits::parse_circuit(read_file(src.netlist), n));
    } catch (const ParseError& e) {
      throw std::runtime_error(src.netlist + ":" + std::to_string(e.line()) + ": " +
                               std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
    return out;
  }
  std::vector<circuits::Family> families;
  if (src.family.empty() || src.family == "dnf_corpus") {
    families = circuits::dnf_corpus(src.count, src.seed);
  } else {
    auto base = circuits::Family::parse(src.family);
    for (unsigned i = 0; i < src.count; ++i) {
      auto f = base;
      if (f.kind == circuits::Family::Kind::random_dnf) f.seed = base.seed + i;
      families.push_back(f);
      if (f.kind != circuits::Family::Kind::random_dnf) break;
    }
  }
  for (const auto& f : families) out.emplace_back(f.name(), circuits::generate(f, n));
  return out;
}

int cmd_sieve(unsigned n, const std::string& kind_name, const std::string& dump, const Common& c) {
  const auto kind = arith::parse_table_kind(kind_name);
  const auto table = arith::sieve(n, kind);
  const auto counts = table.counts();
  Table t("sieve", {"n", "kind", "N", "minus", "zero", "plus", "mertens"});
  t.add(n, arith::to_string(kind), table.size(), counts.minus, counts.zero, counts.plus,
        table.total());
  emit({t}, c);
  if (!dump.empty()) {
    std::ofstream bin(dump, std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open " + dump);
    bin.write(reinterpret_cast<const char*>(table.values().data()),
              static_cast<std::streamsize>(table.size()));
  }
  return 0;
}

int cmd_walsh_decay(const std::vector<unsigned>& ns, const std::string& kind_name, const Common& c) {
  const auto kind = arith::parse_table_kind(kind_name);
  Table t("walsh", {"n", "k", "max_abs_coeff_numerator", "N", "witness_S_mask"});
  for (unsigned n : ns) {
    const auto table = arith::sieve(n, kind);
    for (const auto& row : walsh::mu_walsh_decay(table))
      t.add(n, row.degree, row.max_abs_numerator, table.size(), row.witness_mask);
  }
  emit({t}, c);
  return 0;
}

int cmd_expsum_scan(unsigned n, unsigned tmax, const std::string& kind_name, const Common& c) {
  const auto table = arith::sieve(n, arith::parse_table_kind(kind_name));
  Table t("scan", {"n", "t", "a_witness", "max_abs_value"});
  for (const auto& row : expsum::mu_dyadic_scan(table, tmax)) t.add(n, row.t, row.a_witness, row.max_abs);
  emit({t}, c);
  return 0;
}

int cmd_katai(unsigned n, const std::string& f, const std::string& set, const std::string& mode,
              std::uint64_t seed, std::uint64_t samples, const Common& c) {
  const auto values = function_table(f, n);
  const auto indices = parse_indices(set);
  const auto s = walsh::BitIndexSet::from_indices(n, indices);
  smoothing::KataiOptions options;
  if (mode == "exhaustive") {
    options.mode = smoothing::KataiMode::exhaustive;
  } else if (mode == "sampled") {
    options.mode = smoothing::KataiMode::sampled;
  } else {
    throw std::invalid_argument("unknown mode '" + mode + "'");
  }
  options.seed = seed;
  options.samples = samples;
  const auto r = smoothing::katai_reduce<std::int8_t>(values, s, options);
  Table t("katai",
          {"S_mask", "delta_num", "delta_den", "epsilon", "theta_terms", "value_abs", "bound_abs"});
  t.add(s.mask(), r.delta.num < 0 ? -r.delta.num : r.delta.num, r.delta.den, r.epsilon,
        r.theta.to_string(), r.value_abs, r.bound);
  emit({t}, c);
  return r.value_abs >= r.bound ? 0 : 1;
}

int cmd_circuit(unsigned n, unsigned d, const std::string& kind_name, const CircuitSource& src,
                const Common& c) {
  const auto table = arith::sieve(n, arith::parse_table_kind(kind_name));
  const auto mu_spectrum = walsh::fwht<std::int8_t>(table.values());
  Table t("circuit", {"family", "n", "d", "M", "mean_num", "mean_den"});
  bool ok = true;
  for (const auto& [label, circuit] : load_circuits(src, n)) {
    const auto f = circuits::truth_table(circuit, n);
    const auto f_spectrum = walsh::fwht<std::int8_t>(f);
    const auto r = circuits::correlation_from_spectra(mu_spectrum, table.values(), f, f_spectrum);
    const auto m = circuit.normalized();
    if (!r.parseval_holds || !r.chain_holds) {
      std::cerr << label << ": " << (r.parseval_holds ? "decomposition chain" : "Parseval")
                << " fails\n";
      ok = false;
    }
    t.add(label, n, std::max(1u, std::max(m.depth, d)), m.size, r.mean.num, r.mean.den);
  }
  emit({t}, c);
  return ok ? 0 : 1;
}

int cmd_lmn(unsigned n, unsigned d, const CircuitSource& src, const Common& c) {
  Table t("lmn", {"family", "n", "d", "M", "t", "tail_num", "tail_den", "bound", "satisfied"});
  bool ok = true;
  for (const auto& [label, circuit] : load_circuits(src, n)) {
    const auto r = circuits::lmn_check(circuit, d);
    for (const auto& row : r.rows)
      t.add(label, n, r.depth, r.size, row.t, row.tail.num, row.tail.den, row.bound, row.satisfied);
    if (!r.all_satisfied()) {
      std::cerr << label << ": LMN tail bound violated\n";
      ok = false;
    }
  }
  emit({t}, c);
  return ok ? 0 : 1;
}

int cmd_pipeline(unsigned n, unsigned k, const Common& c) {
  const auto table = arith::sieve(n, arith::TableKind::mobius);
  const auto r = pipeline::run(table, k);
  Table stages("pipeline", {"n", "k", "stage", "ok", "detail"});
  for (const auto& s : r.stages) stages.add(n, k, s.name, s.ok, s.detail);
  Table lemma("lemma", {"k", "terms", "q_prime", "error_numer", "error_denom"});
  const BigInt q_prime = BigInt(1) << r.gap.q_exponent;
  lemma.add(k, r.katai.theta.to_string(), q_prime.str(), numerator(r.gap.error).str(),
            denominator(r.gap.error).str());
  emit({stages, lemma}, c);
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobius function vs bounded-depth circuits: experiment harness"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output file (default stdout)");
    sub->add_flag("--json", common.json, "Emit JSON instead of CSV");
    sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
  };

  unsigned n = 16;
  std::vector<unsigned> ns{16, 20, 24};
  std::string kind = "mobius";
  std::string dump;
  unsigned tmax = 0;
  unsigned d = 0;
  unsigned k = 1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 2000;
  std::string f = "mu", set, mode = "exhaustive";
  CircuitSource src;

  auto* sieve = app.add_subcommand("sieve", "Sieve mu or lambda; print value counts and Mertens(N-1)");
  sieve->add_option("--n", n, "Bit length")->required();
  sieve->add_option("--kind", kind, "mobius | liouville");
  sieve->add_option("--dump", dump, "Write the table as raw signed bytes");
  add_common(sieve);

  auto* decay = app.add_subcommand("walsh-decay", "Per-degree maxima of |mu^(S)|");
  decay->add_option("--n", ns, "Bit lengths")->delimiter(',');
  decay->add_option("--kind", kind, "mobius | liouville");
  add_common(decay);

  auto* scan = app.add_subcommand("expsum-scan", "max_a |mu^(a/2^t)| for t <= tmax");
  scan->add_option("--n", n, "Bit length")->required();
  scan->add_option("--tmax", tmax, "Largest t (default min(n, 20))");
  scan->add_option("--kind", kind, "mobius | liouville");
  add_common(scan);

  auto* katai = app.add_subcommand("katai", "Reduce a Walsh coefficient to a dyadic Fourier coefficient");
  katai->add_option("--n", n, "Bit length")->required();
  katai->add_option("--f", f, "mu | liouville | walsh_character:i");
  katai->add_option("--set", set, "S as comma-separated digit indices")->required();
  katai->add_option("--mode", mode, "exhaustive | sampled");
  katai->add_option("--seed", seed, "Sampling seed");
  katai->add_option("--samples", samples, "Sampled mode draws");
  add_common(katai);

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--netlist", src.netlist, "Netlist file");
    sub->add_option("--family", src.family,
                    "and_tree | or_tree | constant_true | random_dnf:w:m:seed | "
                    "digit_comparator:thr | walsh_character:i | dnf_corpus");
    sub->add_option("--count", src.count, "Corpus size (random families)");
    sub->add_option("--seed", src.seed, "Corpus base seed");
    sub->add_option("--d", d, "Declared depth");
  };
  auto* circuit = app.add_subcommand("circuit", "E mu F for circuits, with the decomposition check");
  circuit->add_option("--n", n, "Bit length")->required();
  circuit->add_option("--kind", kind, "mobius | liouville");
  add_source(circuit);
  add_common(circuit);

  auto* lmn = app.add_subcommand("lmn", "LMN tail bound on circuits");
  lmn->add_option("--n", n, "Bit length")->required();
  add_source(lmn);
  src.count = 1;
  add_common(lmn);

  auto* pipe = app.add_subcommand("pipeline", "Walsh decay -> Katai -> approximation -> lemma -> scan");
  pipe->add_option("--n", n, "Bit length (<= 20)");
  pipe->add_option("--k", k, "Degree (1 or 2)");
  add_common(pipe);

  CLI11_PARSE(app, argc, argv);

  try {
    parallel::set_thread_count(common.threads);
    if (app.got_subcommand(sieve)) return cmd_sieve(n, kind, dump, common);
    if (app.got_subcommand(decay)) return cmd_walsh_decay(ns, kind, common);
    if (app.got_subcommand(scan))
      return cmd_expsum_scan(n, tmax ? tmax : std::min(n, expsum::kMaxScanBits), kind, common);
    if (app.got_subcommand(katai)) return cmd_katai(n, f, set, mode, seed, samples, common);
    if (app.got_subcommand(circuit)) return cmd_circuit(n, d, kind, src, common);
    if (app.got_subcommand(lmn)) {
      if (src.family.empty() && src.netlist.empty() && lmn->count("--count") == 0) src.count = 50;
      return cmd_lmn(n, d, src, common);
    }
    if (app.got_subcommand(pipe)) return cmd_pipeline(n, k, common);
  } catch (const InvariantError& e) {
    std::cerr << "invariant failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
