#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <bit>

#include "mobius/arith.hpp"
#include "mobius/circuits.hpp"
#include "mobius/errors.hpp"
#include "mobius/expsum.hpp"
#include "mobius/parallel.hpp"
#include "mobius/pipeline.hpp"
#include "mobius/smoothing.hpp"
#include "mobius/walsh.hpp"

namespace py = pybind11;
using namespace mobius;

namespace {

// Leaked on purpose: must outlive interpreter finalisation.
const py::object& fraction_class() {
  static auto* cls = new py::object(py::module_::import("fractions").attr("Fraction"));
  return *cls;
}

py::object fraction(const Rational& r) {
  return fraction_class()(py::int_(py::str(numerator(r).str())), py::int_(py::str(denominator(r).str())));
}

py::object fraction(const ExactRatio& r) {
  return fraction(Rational(r.num, r.den));
}

py::object big(const BigInt& v) { return py::int_(py::str(v.str())); }

Rational to_rational(const py::object& value) {
  py::object f = fraction_class()(value);
  return Rational(BigInt(py::str(f.attr("numerator")).cast<std::string>()),
                  BigInt(py::str(f.attr("denominator")).cast<std::string>()));
}

std::vector<std::int8_t> as_table(const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& a) {
  return {a.data(), a.data() + a.size()};
}

py::array_t<std::int8_t> to_numpy(std::span<const std::int8_t> v) {
  return py::array_t<std::int8_t>(static_cast<py::ssize_t>(v.size()), v.data());
}

expsum::SparseDyadic to_sparse(const std::vector<std::pair<std::int64_t, unsigned>>& terms) {
  std::vector<expsum::DyadicTerm> t;
  for (auto [r, i] : terms) t.push_back({r, i});
  return expsum::SparseDyadic(std::move(t));
}

}  // namespace

PYBIND11_MODULE(mobius_circuits, m) {
  m.doc() = "Mobius function, Walsh spectra, dyadic exponential sums and AC0 circuits";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("set_thread_count", &parallel::set_thread_count, py::arg("threads"));

  // arith
  m.def(
      "sieve",
      [](unsigned n, const std::string& kind) {
        return to_numpy(arith::sieve(n, arith::parse_table_kind(kind)).values());
      },
      py::arg("n"), py::arg("kind") = "mobius", "mu or lambda on [0, 2^n) as int8");
  m.def("digit", &arith::digit, py::arg("x"), py::arg("i"), py::arg("n") = 64);
  m.def(
      "decompose_odd",
      [](std::uint64_t x, unsigned t) {
        const auto d = arith::decompose_odd(x, t);
        return py::make_tuple(d.sign_exponent, d.five_exponent);
      },
      py::arg("x"), py::arg("t"));

  py::class_<arith::DyadicCharacter>(m, "DyadicCharacter")
      .def(py::init<unsigned, int, std::uint64_t>(), py::arg("t"), py::arg("value_at_minus_one"),
           py::arg("five_index") = 0)
      .def("__call__", &arith::DyadicCharacter::operator())
      .def("__mul__", &arith::DyadicCharacter::operator*)
      .def_property_readonly("t", &arith::DyadicCharacter::modulus_bits)
      .def_property_readonly("is_real", &arith::DyadicCharacter::is_real)
      .def_property_readonly("name", &arith::DyadicCharacter::name)
      .def("__repr__", &arith::DyadicCharacter::name);
  m.def("chi4", &arith::chi4);
  m.def("chi8", &arith::chi8);
  m.def("principal_character", &arith::principal_character, py::arg("t") = 1);
  m.def("enumerate_characters", &arith::enumerate_characters, py::arg("t"));
  m.def("real_primitive_characters", &arith::real_primitive_characters);
  m.def(
      "twisted_mean",
      [](unsigned n, const arith::DyadicCharacter& chi, const std::string& kind) {
        const auto table = arith::sieve(n, arith::parse_table_kind(kind));
        const auto r = arith::twisted_mean(table, chi);
        if (r.exact) return py::object(fraction(*r.exact));
        return py::object(py::cast(r.mean));
      },
      py::arg("n"), py::arg("chi"), py::arg("kind") = "mobius",
      "E mu chi over [0, 2^n): a Fraction for real chi, else complex");

  // walsh
  m.def(
      "fwht",
      [](const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& values) {
        const auto v = as_table(values);
        const auto s = walsh::fwht<std::int8_t>(v);
        return py::array_t<std::int64_t>(static_cast<py::ssize_t>(s.size()), s.numerators().data());
      },
      py::arg("values"), "Unnormalised Walsh numerators N f^(S), indexed by mask");
  m.def(
      "walsh_coefficient",
      [](const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& values,
         std::uint64_t mask) {
        const auto v = as_table(values);
        const unsigned n = static_cast<unsigned>(std::countr_zero(v.size()));
        return fraction(walsh::walsh_coefficient<std::int8_t>(v, walsh::BitIndexSet(n, mask)));
      },
      py::arg("values"), py::arg("mask"));
  m.def(
      "walsh_via_psi",
      [](const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& values,
         std::uint64_t mask) {
        const auto v = as_table(values);
        const unsigned n = static_cast<unsigned>(std::countr_zero(v.size()));
        return fraction(walsh::walsh_via_psi<std::int8_t>(v, walsh::BitIndexSet(n, mask)));
      },
      py::arg("values"), py::arg("mask"));
  m.def(
      "mu_walsh_decay",
      [](unsigned n, const std::string& kind) {
        std::vector<py::tuple> rows;
        for (const auto& r : walsh::mu_walsh_decay(arith::sieve(n, arith::parse_table_kind(kind))))
          rows.push_back(py::make_tuple(r.degree, r.max_abs_numerator, r.witness_mask));
        return rows;
      },
      py::arg("n"), py::arg("kind") = "mobius", "(k, max |N mu^(S)| over |S| = k, witness mask)");

  // expsum
  m.def(
      "fourier_coefficient",
      [](const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& values,
         const py::object& theta) {
        const auto v = as_table(values);
        return expsum::fourier_coefficient<std::int8_t>(v, to_rational(theta));
      },
      py::arg("values"), py::arg("theta"), "(1/N) sum f(x) e(theta x) for rational theta");
  m.def(
      "best_rational_approx",
      [](const py::object& theta, std::uint64_t Q) {
        const auto r = expsum::best_rational_approx(to_rational(theta), Q);
        return py::make_tuple(big(r.a), big(r.q));
      },
      py::arg("theta"), py::arg("Q"));
  m.def(
      "dio_lemma",
      [](const std::vector<std::pair<std::int64_t, unsigned>>& terms, std::uint64_t Q, unsigned n) {
        const auto r = expsum::dio_lemma(to_sparse(terms), Q, n);
        py::dict d;
        d["q_prime_exponent"] = r.gap.q_exponent;
        d["a_prime"] = big(r.gap.a_prime);
        d["error"] = fraction(r.gap.error);
        d["best"] = py::make_tuple(big(r.best.a), big(r.best.q));
        d["best_is_power_of_two"] = r.best_is_power_of_two;
        return d;
      },
      py::arg("terms"), py::arg("Q"), py::arg("n"), "terms: [(r_j, i_j), ...]");
  m.def("lemma_hypothesis", &expsum::lemma_hypothesis, py::arg("k"), py::arg("Q"), py::arg("n"));
  m.def(
      "mu_dyadic_scan",
      [](unsigned n, unsigned t_max) {
        std::vector<py::tuple> rows;
        for (const auto& r : expsum::mu_dyadic_scan(arith::sieve(n), t_max))
          rows.push_back(py::make_tuple(r.t, r.a_witness, r.max_abs));
        return rows;
      },
      py::arg("n"), py::arg("t_max"));

  // smoothing
  py::class_<smoothing::SmoothedSquareWave>(m, "SmoothedSquareWave")
      .def(py::init<double>(), py::arg("epsilon"))
      .def_property_readonly("cutoff", &smoothing::SmoothedSquareWave::cutoff)
      .def("coefficient", &smoothing::SmoothedSquareWave::coefficient)
      .def("psi0_hat", &smoothing::SmoothedSquareWave::psi0_hat)
      .def("psi0", &smoothing::SmoothedSquareWave::psi0)
      .def("tail_bound", &smoothing::SmoothedSquareWave::tail_bound)
      .def("__call__", [](const smoothing::SmoothedSquareWave& w, double t) {
        return smoothing::smoothed_eval(w, t);
      });
  m.def(
      "closeness_check",
      [](double epsilon, unsigned n) {
        return smoothing::closeness_check(smoothing::SmoothedSquareWave(epsilon), n).per_level;
      },
      py::arg("epsilon"), py::arg("n"));
  m.def(
      "katai_reduce",
      [](const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& values,
         const std::vector<unsigned>& indices, const std::string& mode, std::uint64_t samples,
         std::uint64_t seed) {
        const auto v = as_table(values);
        const unsigned n = static_cast<unsigned>(std::countr_zero(v.size()));
        smoothing::KataiOptions o;
        o.mode = mode == "sampled" ? smoothing::KataiMode::sampled : smoothing::KataiMode::exhaustive;
        o.samples = samples;
        o.seed = seed;
        const auto r = smoothing::katai_reduce<std::int8_t>(
            v, walsh::BitIndexSet::from_indices(n, indices), o);
        py::dict d;
        d["delta"] = fraction(r.delta);
        d["theta"] = fraction(r.theta_value);
        d["terms"] = r.theta.to_string();
        d["value_abs"] = r.value_abs;
        d["bound"] = r.bound;
        return d;
      },
      py::arg("values"), py::arg("indices"), py::arg("mode") = "exhaustive",
      py::arg("samples") = 2000, py::arg("seed") = 1);

  // circuits
  py::class_<circuits::Circuit>(m, "Circuit")
      .def_property_readonly("inputs", &circuits::Circuit::inputs)
      .def_property_readonly("size", &circuits::Circuit::size)
      .def_property_readonly("depth", &circuits::Circuit::depth)
      .def("normalized",
           [](const circuits::Circuit& c) {
             const auto m = c.normalized();
             return py::make_tuple(m.size, m.depth);
           })
      .def("eval", &circuits::Circuit::eval)
      .def("truth_table",
           [](const circuits::Circuit& c, std::optional<unsigned> n) {
             return to_numpy(circuits::truth_table(c, n.value_or(c.inputs())));
           },
           py::arg("n") = py::none())
      .def("to_netlist", &circuits::Circuit::to_netlist);
  m.def("parse_circuit", &circuits::parse_circuit, py::arg("text"), py::arg("n") = py::none());
  m.def(
      "generate",
      [](const std::string& family, unsigned n) {
        return circuits::generate(circuits::Family::parse(family), n);
      },
      py::arg("family"), py::arg("n"));
  m.def("classify_ac0", &circuits::classify_ac0, py::arg("circuit"), py::arg("d"));
  m.def(
      "lmn_check",
      [](const circuits::Circuit& c, unsigned d) {
        const auto r = circuits::lmn_check(c, d);
        std::vector<py::tuple> rows;
        for (const auto& row : r.rows)
          rows.push_back(py::make_tuple(row.t, fraction(row.tail), row.bound, row.satisfied));
        return rows;
      },
      py::arg("circuit"), py::arg("d") = 0, "(t, tail, bound, satisfied) per t");
  m.def(
      "mobius_correlation",
      [](const circuits::Circuit& c) {
        const auto r = circuits::mobius_correlation(c, arith::sieve(c.inputs()));
        py::dict d;
        d["mean"] = fraction(r.mean);
        d["chain_holds"] = r.chain_holds;
        d["parseval_holds"] = r.parseval_holds;
        d["chain_lhs"] = r.chain_lhs;
        d["chain_rhs"] = r.chain_rhs;
        return d;
      },
      py::arg("circuit"));

  m.def(
      "pipeline",
      [](unsigned n, unsigned k) {
        const auto r = pipeline::run(arith::sieve(n), k);
        std::vector<py::tuple> rows;
        for (const auto& s : r.stages) rows.push_back(py::make_tuple(s.name, s.ok, s.detail));
        return rows;
      },
      py::arg("n") = 16, py::arg("k") = 1, "(stage, ok, detail) per stage");
}
