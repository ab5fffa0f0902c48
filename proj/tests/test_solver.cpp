#include "mirror/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mirror;

namespace {

FiberSpec fiber(const Parabolic& P, std::vector<Complex> q, std::vector<Complex> lambda = {}) {
    FiberSpec f;
    f.P = P;
    f.q = std::move(q);
    f.lambda = std::move(lambda);
    f.validate();
    return f;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double r = a.size() == b.size() ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return r;
}

double matrix_diff(const Matrix<Complex>& a, const Matrix<Complex>& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("rank one closed forms") {
    const SolveResult r = solve_critical(fiber(Parabolic::borel(1), {1.0}));
    REQUIRE(r.records.size() == 2);
    CHECK(std::abs(r.records[0].value - Complex(-2.0)) < 1e-10);
    CHECK(std::abs(r.records[1].value - Complex(2.0)) < 1e-10);
    CHECK(max_diff(r.records[0].coords, {-1.0, -1.0}) < 1e-10);
    CHECK(max_diff(r.records[1].coords, {1.0, 1.0}) < 1e-10);

    const SolveResult e = solve_critical(fiber(Parabolic::borel(1), {1.0}, {1.0, -1.0}));
    REQUIRE(e.records.size() == 2);
    std::vector<double> sc;
    for (const auto& rec : e.records) {
        CHECK(std::abs(rec.coords[0].imag()) < 1e-10);
        sc.push_back(rec.coords[0].real());
    }
    std::sort(sc.begin(), sc.end());
    CHECK(sc[0] == doctest::Approx(-1.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sc[1] == doctest::Approx(-1.0 + std::sqrt(2.0)).epsilon(1e-12));
    for (const auto& rec : e.records) {
        CHECK(max_diff(rec.conserved, {0.0, -1.0}) < 1e-10);
        CHECK(std::abs(rec.toda(0, 1) + 1.0) < 1e-10);
    }
}

TEST_CASE("rank one values scale with the square root of q") {
    for (Complex q : {Complex(2.0), Complex(-1.0), Complex(3.0, 4.0)}) {
        const SolveResult r = solve_critical(fiber(Parabolic::borel(1), {q}));
        REQUIRE(r.records.size() == 2);
        const Complex root = 2.0 * std::sqrt(q);
        for (const auto& rec : r.records) CHECK(std::min(std::abs(rec.value - root), std::abs(rec.value + root)) < 1e-10);
        CHECK(std::abs(r.records[0].value + r.records[1].value) < 1e-10);
    }
}

TEST_CASE("full flags of C^3: six points, all checks pass, both solvers agree") {
    const FiberSpec f = fiber(Parabolic::borel(2), {Complex(0.8, 0.3), Complex(-1.1, 0.6)}, {Complex(0.25), Complex(0.5), Complex(-0.75)});
    SolverConfig quiver;
    quiver.method = SolverConfig::Method::Quiver;
    SolverConfig chart;
    chart.method = SolverConfig::Method::Chart;
    const SolveResult a = solve_critical(f, quiver), b = solve_critical(f, chart);
    REQUIRE(a.records.size() == 6);
    REQUIRE(b.records.size() == 6);
    const auto target = toda_target(f.lambda);
    for (std::size_t k = 0; k < 6; ++k) {
        const auto& r = a.records[k];
        CHECK_FALSE(r.degenerate);
        CHECK(r.stabilizer_ok);
        CHECK(r.locus.ok);
        CHECK(max_diff(r.q_extracted, f.q) < 1e-10);
        CHECK(max_diff(r.conserved, target) < 1e-8);
        CHECK(r.off_pattern < 1e-8);
        CHECK(std::abs(r.value - b.records[k].value) < 1e-8);
        CHECK(matrix_diff(r.b, b.records[k].b) < 1e-8);
    }
}

TEST_CASE("projective plane has three points") {
    const FiberSpec f = fiber(Parabolic::make(2, {2}), {Complex(1.3, -0.4)});
    const SolveResult r = solve_critical(f);
    REQUIRE(r.records.size() == 3);
    for (const auto& rec : r.records) {
        CHECK(rec.stabilizer_ok);
        CHECK(rec.locus.ok);
        CHECK(max_diff(rec.q_extracted, f.q) < 1e-10);
    }
    // values are 3 q^{1/3} times the cube roots of unity
    const Complex c = 3.0 * std::pow(f.q[0], 1.0 / 3.0);
    for (const auto& rec : r.records) {
        double best = INFINITY;
        for (int k = 0; k < 3; ++k) best = std::min(best, std::abs(rec.value - c * std::polar(1.0, 2 * std::numbers::pi * k / 3)));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("solver output is deterministic and independent of the thread count") {
    const FiberSpec f = fiber(Parabolic::borel(2), {Complex(1.2), Complex(0.7, 0.2)});
    SolverConfig one, two;
    two.threads = 2;
    const SolveResult a = solve_critical(f, one), b = solve_critical(f, one), c = solve_critical(f, two);
    REQUIRE(a.records.size() == b.records.size());
    REQUIRE(a.records.size() == c.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        CHECK(a.records[k].coords == b.records[k].coords);
        CHECK(a.records[k].coords == c.records[k].coords);
        CHECK(a.records[k].value == c.records[k].value);
    }
}

TEST_CASE("three characterizations agree at critical and perturbed points") {
    const FiberSpec f = fiber(Parabolic::borel(2), {Complex(0.9, 0.4), Complex(1.5)});
    const SolveResult r = solve_critical(f);
    REQUIRE(r.records.size() == 6);
    for (const auto& rec : r.records) {
        const ThreeWayVerdict v = three_way_check(f, rec.b, 1e-8);
        CHECK(v.gradient);
        CHECK(v.agree());
        std::vector<Complex> z = affine_coordinates(f, rec.b);
        CHECK(matrix_diff(affine_point(f, z), rec.b) < 1e-9);
        for (auto& x : z) x += Complex(0.1, -0.05);
        const ThreeWayVerdict off = three_way_check(f, affine_point(f, z), 1e-8);
        CHECK_FALSE(off.gradient);
        CHECK(off.agree());
        CHECK(std::max(off.locus.upper_residual, off.locus.q_residual) > 1e-3);
    }
}

TEST_CASE("gradient does not depend on the branch of the logarithm") {
    const FiberSpec f = fiber(Parabolic::borel(2), {Complex(0.9, 0.4), Complex(1.5)}, {Complex(0.5), Complex(-0.25), Complex(-0.25)});
    const Word w0{1, 2, 1};
    const std::vector<Complex> logs{Complex(0.2, 0.1), Complex(-0.3, 0.4), Complex(0.1, -0.2)};
    const ChartEvaluation base = evaluate_chart(f, w0, logs);
    for (std::size_t k = 0; k < logs.size(); ++k) {
        std::vector<Complex> shifted = logs;
        shifted[k] += Complex(0.0, 2 * std::numbers::pi);
        const ChartEvaluation ev = evaluate_chart(f, w0, shifted);
        CHECK(max_diff(ev.gradient, base.gradient) < 1e-10);
        CHECK(matrix_diff(ev.b, base.b) < 1e-10);
    }
}

TEST_CASE("quantum parameters transform with the symmetry map") {
    const FiberSpec f = fiber(Parabolic::make(2, {2}), {Complex(1.4, 0.5)});
    const Matrix<Complex> M = f_matrix<Complex>(2, {});
    for (const auto& rec : solve_critical(f).records) {
        const auto fz = factorize_borel(rec.b, f.P, false);
        const auto img = symmetry_map(f.P, fz.t, rec.b);
        CHECK(stabilizer_check(img.b, M, 1e-8).ok);
        const auto fi = factorize_borel(img.b, img.Q, false);
        const auto q = quantum_params(fi, M);
        const auto free = img.Q.free_indices();
        for (std::size_t j = 0; j < free.size(); ++j) {
            const std::size_t i = static_cast<std::size_t>(free[j]);
            const Complex alpha = img.t(i - 1, i - 1) / img.t(i, i);
            CHECK(std::abs(q[j] - alpha) < 1e-9 * std::max(1.0, std::abs(alpha)));
        }
    }
}

TEST_CASE("invalid fibers") {
    FiberSpec f;
    f.P = Parabolic::borel(2);
    f.q = {1.0};
    CHECK_THROWS_AS(f.validate(), ConfigError);
    f.q = {1.0, 0.0};
    CHECK_THROWS_AS(f.validate(), ConfigError);
    f.q = {1.0, 1.0};
    f.lambda = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(f.validate(), ConfigError);
}
