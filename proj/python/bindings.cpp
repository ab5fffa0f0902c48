#include "mirror/deodhar.hpp"
#include "mirror/solver.hpp"
#include "mirror/suites.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mirror;

namespace {

SuiteConfig config_from(const std::string& suite, const py::dict& opts) {
    SuiteConfig cfg;
    cfg.suite = parse_suite(suite);
    for (auto [key, value] : opts) {
        const std::string k = py::str(key);
        if (k == "action") cfg.action = value.cast<std::string>();
        else if (k == "rank") cfg.rank = value.cast<int>();
        else if (k == "fixed") cfg.fixed = value.cast<std::vector<int>>();
        else if (k == "q") cfg.q = value.cast<std::vector<std::string>>();
        else if (k == "lambda") cfg.lambda = value.cast<std::vector<std::string>>();
        else if (k == "samples") cfg.samples = value.cast<std::size_t>();
        else if (k == "seed") cfg.seed = value.cast<std::uint64_t>();
        else if (k == "tol") cfg.tol = value.cast<double>();
        else if (k == "residual_tol") cfg.residual_tol = value.cast<double>();
        else if (k == "dedup_radius") cfg.dedup_radius = value.cast<double>();
        else if (k == "degenerate_sv") cfg.degenerate_sv = value.cast<double>();
        else if (k == "starts") cfg.starts = value.cast<std::size_t>();
        else if (k == "threads") cfg.threads = value.cast<unsigned>();
        else if (k == "method") cfg.method = value.cast<std::string>();
        else if (k == "mode") cfg.mode = parse_mode(value.cast<std::string>());
        else if (k == "word") cfg.word = value.cast<std::vector<int>>();
        else if (k == "v") cfg.v = value.cast<std::vector<int>>();
        else if (k == "primes") cfg.primes = value.cast<std::vector<int>>();
        else if (k == "max_codim") cfg.max_codim = value.cast<int>();
        else throw ConfigError("unknown option " + k);
    }
    return cfg;
}

py::list solve_fiber(int rank, std::vector<int> fixed, std::vector<Complex> q, std::vector<Complex> lambda, std::uint64_t seed,
                     unsigned threads) {
    FiberSpec f;
    f.P = Parabolic::make(rank, std::move(fixed));
    f.q = std::move(q);
    f.lambda = std::move(lambda);
    f.validate();
    SolverConfig sc;
    sc.seed = seed;
    sc.threads = threads;
    SolveResult r;
    {
        py::gil_scoped_release nogil;
        r = solve_critical(f, sc);
    }
    py::list out;
    for (const auto& rec : r.records) {
        py::dict d;
        d["value"] = rec.value;
        d["degenerate"] = rec.degenerate;
        d["grad_residual"] = rec.grad_residual;
        d["hessian_min_sv"] = rec.hessian_min_sv;
        d["conserved"] = rec.conserved;
        d["q_extracted"] = rec.q_extracted;
        d["stabilizer_ok"] = rec.stabilizer_ok;
        d["chart"] = rec.chart;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Critical points and structural checks for mirror models of type A flag varieties";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

    m.def(
        "run_suite",
        [](const std::string& suite, const py::kwargs& opts) {
            const SuiteConfig cfg = config_from(suite, opts);
            ReportDocument doc;
            {
                py::gil_scoped_release nogil;
                doc = run_suite(cfg);
            }
            return py::make_tuple(serialize(doc), exit_code_for(doc));
        },
        py::arg("suite"), "Run a suite; returns (report JSON text, exit code).");

    m.def("solve", &solve_fiber, py::arg("rank"), py::arg("fixed") = std::vector<int>{}, py::arg("q") = std::vector<Complex>{},
          py::arg("lam") = std::vector<Complex>{}, py::arg("seed") = 42, py::arg("threads") = 1);

    m.def(
        "expected_count", [](int rank, std::vector<int> fixed) { return expected_critical_count(Parabolic::make(rank, std::move(fixed))); },
        py::arg("rank"), py::arg("fixed") = std::vector<int>{});

    m.def(
        "longest_word", [](int rank) { return longest_word(CartanSpec::type_A(rank)); }, py::arg("rank"));

    m.def(
        "reduced_words",
        [](int rank, const Word& w) {
            std::vector<Word> out;
            for (const auto& i : reduced_words(CartanSpec::type_A(rank), w)) out.push_back(i.letters);
            return out;
        },
        py::arg("rank"), py::arg("word"));

    m.def(
        "stratum_count",
        [](int rank, const Word& i, const Word& v, std::uint64_t p) {
            return stratum_count_formula(WeylWord::make(CartanSpec::type_A(rank), i), v, p);
        },
        py::arg("rank"), py::arg("word"), py::arg("v"), py::arg("p"));

    m.def(
        "cell_count",
        [](int rank, const Word& v, const Word& w, std::int64_t p) { return cell_intersection_count(CartanSpec::type_A(rank), v, w, p); },
        py::arg("rank"), py::arg("v"), py::arg("w"), py::arg("p"));
}
