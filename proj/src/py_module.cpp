#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ordcensus/config.hpp"
#include "ordcensus/selftest.hpp"

namespace py = pybind11;
using namespace ordc;

namespace {

py::int_ to_py(u128 v) {
    return py::reinterpret_steal<py::int_>(
        PyLong_FromString(to_string(v).c_str(), nullptr, 10));
}

py::list factors_to_py(const FactoredInteger& f) {
    py::list out;
    for (const auto& fp : f.factors)
        out.append(py::make_tuple(to_py(fp.prime), fp.exponent));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "order and equidistribution censuses over finite fields";

    m.def("set_factor_seed", &set_factor_seed, py::arg("seed"));

    m.def(
        "factor",
        [](const std::string& n) {
            u128 v = 0;
            for (char ch : n) {
                if (ch < '0' || ch > '9')
                    throw std::invalid_argument("factor: expected digits");
                v = v * 10 + u128(ch - '0');
            }
            return factors_to_py(factor_integer(v));
        },
        py::arg("n"), "prime-power factorization of a decimal string");

    m.def(
        "factor_int",
        [](u64 n) { return factors_to_py(factor_integer(n)); }, py::arg("n"));

    m.def(
        "cyclotomic_eval",
        [](unsigned d, u64 p) { return to_py(cyclotomic_eval(d, p)); },
        py::arg("d"), py::arg("p"));

    m.def(
        "ell_of_q",
        [](u64 q, unsigned H) { return to_py(ell_of_q(q, FactorialCap(H))); },
        py::arg("q"), py::arg("H"));

    m.def(
        "factor_mod_p",
        [](const std::vector<long long>& coeffs, u64 p) {
            py::list out;
            for (const auto& [g, mult] : factor_mod_p(poly_reduce(coeffs, p)))
                out.append(py::make_tuple(g.c, mult));
            return out;
        },
        py::arg("coeffs"), py::arg("p"),
        "irreducible factors mod p as (coeff list lowest-first, multiplicity)");

    m.def(
        "classify_prime",
        [](const std::vector<long long>& coeffs, u64 p) {
            AlgebraicNumberSpec spec(coeffs);
            PrimeSplitting s = classify_prime(spec, p);
            py::dict d;
            d["p"] = s.p;
            d["degrees"] = s.degrees;
            d["ramified"] = s.ramified;
            d["excluded"] = s.excluded;
            return d;
        },
        py::arg("coeffs"), py::arg("p"));

    m.def(
        "order_record",
        [](const std::vector<long long>& coeffs, u64 p,
           unsigned d) -> py::object {
            AlgebraicNumberSpec spec(coeffs);
            auto rec = order_record(spec, p, d);
            if (!rec) return py::none();
            py::dict out;
            out["p"] = rec->p;
            out["d"] = rec->d;
            out["ord"] = to_py(rec->ord);
            out["index"] = to_py(rec->index);
            return out;
        },
        py::arg("coeffs"), py::arg("p"), py::arg("d"));

    m.def(
        "period_mod_p",
        [](const std::vector<long long>& char_coeffs,
           const std::vector<std::pair<long long, long long>>& initial, u64 p) {
            std::vector<Rational> init;
            for (auto [n, d] : initial) init.push_back(make_rational(n, d));
            return to_py(period_mod_p(RecurrenceSpec(char_coeffs, init), p));
        },
        py::arg("char_coeffs"), py::arg("initial"), py::arg("p"),
        "initial values as (num, den) pairs");

    m.def(
        "residue_histogram",
        [](const std::vector<long long>& char_coeffs,
           const std::vector<std::pair<long long, long long>>& initial, u64 p) {
            std::vector<Rational> init;
            for (auto [n, d] : initial) init.push_back(make_rational(n, d));
            EquidistReport rep =
                residue_histogram(RecurrenceSpec(char_coeffs, init), p);
            py::dict out;
            out["p"] = rep.p;
            out["T"] = to_py(rep.T);
            out["counts"] = rep.counts;
            out["max_dev_num"] = to_py(rep.max_dev_num);
            out["k"] = rep.k;
            out["within_bound"] = rep.within_bound();
            return out;
        },
        py::arg("char_coeffs"), py::arg("initial"), py::arg("p"));

    m.def(
        "order_census",
        [](const std::vector<long long>& coeffs, unsigned d, u64 x,
           const std::vector<std::pair<long long, long long>>& h_grid,
           unsigned workers) {
            OrderCensusConfig cfg;
            cfg.spec_coeffs = coeffs;
            cfg.d = d;
            cfg.x = x;
            if (h_grid.empty()) {
                cfg.h_grid = default_h_grid();
            } else {
                for (auto [n, den] : h_grid)
                    cfg.h_grid.push_back(make_rational(n, den));
            }
            OrderCensusResult res = run_order_census(cfg, workers);
            py::dict out;
            out["law"] = res.table.law == OrderLaw::two_p_plus_one ? "2p+2"
                                                                   : "group";
            out["s_count"] = res.table.s_count;
            out["pass_counts"] = res.table.pass_counts;
            py::list fr;
            for (u64 c : res.table.pass_counts)
                fr.append(format_fraction(c, res.table.s_count));
            out["fractions"] = fr;
            return out;
        },
        py::arg("coeffs"), py::arg("d"), py::arg("x"),
        py::arg("h_grid") = std::vector<std::pair<long long, long long>>{},
        py::arg("workers") = 1);

    m.def(
        "rough_census",
        [](const std::array<long long, 3>& P, double epsilon, double c, u64 x,
           bool over_primes, unsigned workers) {
            RoughCensus r =
                run_rough_census(P, epsilon, c, x, over_primes, workers);
            return py::make_tuple(r.hits, r.total);
        },
        py::arg("P"), py::arg("epsilon"), py::arg("c"), py::arg("x"),
        py::arg("over_primes") = true, py::arg("workers") = 1);

    m.def(
        "global_lemma_check",
        [](long long a, u64 x, unsigned workers) {
            GlobalLemmaResult g = run_global_lemma_check(a, x, workers);
            return py::make_tuple(g.violations, g.total);
        },
        py::arg("a"), py::arg("x"), py::arg("workers") = 1);

    m.def("format_fraction", [](u64 num, u64 den) {
        return format_fraction(num, den);
    });

    m.def("selftest", []() {
        std::ostringstream ss;
        bool ok = run_selftest(ss);
        return py::make_tuple(ok, ss.str());
    });
}
