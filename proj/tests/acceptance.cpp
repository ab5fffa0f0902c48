// Acceptance criteria 1-11. One line per criterion; exit status 0 iff all pass.

#include "oracles.hpp"

#include "mirror/braid.hpp"
#include "mirror/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace mirror;

namespace {

constexpr double kValueTol = 1e-10;      // P1 critical values
constexpr double kCharPolyTol = 1e-8;    // conserved quantities
constexpr double kStabilizerTol = 1e-8;
constexpr double kQTol = 1e-10;
constexpr double kThreeWayTol = 1e-8;
constexpr double kLimitP1 = 1.0, kLimitFl3 = 30.0, kLimitEquiv = 60.0, kLimitCompare = 30.0, kLimitBraid = 60.0;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body, double limit = 0.0) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << "exception: " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit > 0.0 && secs > limit) {
        o.ok = false;
        o.detail << "time limit " << limit << " s exceeded; ";
    }
    if (!o.ok) ++failures;
    std::printf("criterion %2d %s: %s (%.2f s) %s\n", id, o.ok ? "PASS" : "FAIL", title.c_str(), secs, o.detail.str().c_str());
    std::fflush(stdout);
}

FiberSpec make_fiber(const Parabolic& P, std::vector<Complex> q, std::vector<Complex> lambda = {}) {
    FiberSpec f;
    f.P = P;
    f.q = std::move(q);
    f.lambda = std::move(lambda);
    f.validate();
    return f;
}

std::vector<Complex> random_q(std::size_t count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> logmod(std::log(0.5), std::log(2.0)), arg(-std::numbers::pi, std::numbers::pi);
    std::vector<Complex> q;
    for (std::size_t k = 0; k < count; ++k) q.push_back(std::polar(std::exp(logmod(rng)), arg(rng)));
    return q;
}

// Rational lambda with |lambda_i| <= 1 and zero sum, by rejection on the last entry.
std::vector<Rational> random_lambda(std::size_t n1, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-64, 64);
    for (;;) {
        std::vector<Rational> l(n1);
        Rational s(0);
        for (std::size_t i = 0; i + 1 < n1; ++i) {
            l[i] = Rational(num(rng), 64);
            l[i].canonicalize();
            s += l[i];
        }
        l[n1 - 1] = -s;
        if (abs(l[n1 - 1]) <= 1) return l;
    }
}

std::vector<Complex> to_complex(const std::vector<Rational>& v) {
    std::vector<Complex> out;
    for (const auto& x : v) out.emplace_back(x.get_d(), 0.0);
    return out;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double r = a.size() == b.size() ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return r;
}

std::vector<Rational> signed_sample(std::size_t count, std::uint64_t seed, std::uint64_t k, int bits = 12) {
    std::vector<Rational> t = random_positive_sample(count, seed, k, bits);
    for (std::size_t v = 0; v < t.size(); v += 2) t[v] = -t[v];
    return t;
}

std::vector<Word> element_words(int n) {
    std::vector<Word> out;
    for (const oracle::Perm& p : oracle::all_perms(n)) out.push_back(*oracle::reduced_words_of(n, p).begin());
    return out;
}

void check_fiber_records(Outcome& o, const FiberSpec& f, const SolveResult& r, const std::vector<Complex>& target) {
    const std::size_t expected = f.P.fixed.empty() ? 6 : 0;
    if (expected) o.require(r.records.size() == expected, "point count " + std::to_string(r.records.size()));
    for (const auto& rec : r.records) {
        o.require(!rec.degenerate, "degenerate point");
        o.require(max_diff(rec.conserved, target) < kCharPolyTol, "characteristic polynomial");
    }
}

}  // namespace

int main() {
    std::printf("acceptance: tolerances value %.0e, char poly %.0e, stabilizer %.0e, q %.0e, three-way %.0e\n", kValueTol, kCharPolyTol,
                kStabilizerTol, kQTol, kThreeWayTol);

    report(1, "P1 critical values are +-2 sqrt(q)", [](Outcome& o) {
        for (Complex q : {Complex(1.0), Complex(2.0), Complex(-1.0), Complex(3.0, 4.0)}) {
            const SolveResult r = solve_critical(make_fiber(Parabolic::borel(1), {q}));
            o.require(r.records.size() == 2, "two records");
            const Complex root = 2.0 * std::sqrt(q);
            for (const auto& rec : r.records)
                o.require(std::min(std::abs(rec.value - root), std::abs(rec.value + root)) < kValueTol, "value");
            if (r.records.size() == 2) o.require(std::abs(r.records[0].value + r.records[1].value) < kValueTol, "opposite values");
        }
    }, kLimitP1);

    report(2, "Fl3: 20 fibers, 6 nondegenerate points, nilpotent Toda image", [](Outcome& o) {
        std::mt19937_64 rng(2024);
        const std::vector<Complex> zero(3, Complex(0.0));
        for (int k = 0; k < 20; ++k) {
            const FiberSpec f = make_fiber(Parabolic::borel(2), random_q(2, rng));
            check_fiber_records(o, f, solve_critical(f), zero);
        }
    }, kLimitFl3);

    report(3, "equivariant Fl3: 10 fibers, char poly prod (x + lambda_i)", [](Outcome& o) {
        std::mt19937_64 rng(3033);
        for (int k = 0; k < 10; ++k) {
            const std::vector<Rational> lam = random_lambda(3, rng);
            const FiberSpec f = make_fiber(Parabolic::borel(2), random_q(2, rng), to_complex(lam));
            std::vector<Complex> target;
            for (const auto& c : toda_target(lam)) target.emplace_back(c.get_d(), 0.0);
            check_fiber_records(o, f, solve_critical(f), target);
        }
    }, kLimitEquiv);

    report(4, "P2 has 3 points, Gr(2,4) has 6; stabilizer and q extraction", [](Outcome& o) {
        struct Case {
            Parabolic P;
            std::vector<Complex> q;
            std::size_t count;
        };
        for (const Case& c : {Case{Parabolic::make(2, {2}), {Complex(1.3, -0.4)}, 3}, Case{Parabolic::make(3, {1, 3}), {Complex(0.9, 0.7)}, 6}}) {
            const FiberSpec f = make_fiber(c.P, c.q);
            const SolveResult r = solve_critical(f);
            o.require(r.records.size() == c.count, c.P.label() + " count " + std::to_string(r.records.size()));
            const Matrix<Complex> M = f_matrix<Complex>(c.P.n, {});
            for (const auto& rec : r.records) {
                o.require(stabilizer_check(rec.b, M, kStabilizerTol).ok, "stabilizer");
                o.require(max_diff(rec.q_extracted, f.q) < kQTol * std::max(1.0, std::abs(f.q[0])), "q extraction");
            }
        }
    });

    report(5, "comparison map: lower triangular, phase difference exactly 0", [](Outcome& o) {
        for (int n : {1, 2, 3}) {
            const Quiver Q(n);
            for (std::uint64_t k = 0; k < 100; ++k) {
                const auto sigma = point_from_vertices(Q, signed_sample(Q.vertices().size(), 5, k));
                const Matrix<Rational> b = beta_with_torus(Q, sigma, tau(Q, sigma));
                o.require(b.is_lower_triangular(), "lower triangular");
                o.require(phase_FP(b, Parabolic::borel(n)) - phase(sigma) == 0, "phase");
            }
        }
    }, kLimitCompare);

    report(6, "braid catalogue: exact identities, Jacobian ratio +-1 with the listed signs", [](Outcome& o) {
        o.require(transform_catalogue().size() == 16, "16 transforms");
        for (const CoordTransform& tr : transform_catalogue()) {
            const MatrixRep rep = rep_for(tr.rep);
            const int sign = oracle::negative_transforms().count(tr.id) ? -1 : 1;
            for (std::uint64_t k = 0; k < 50; ++k) {
                const auto t = random_positive_sample(tr.arity, 6, k);
                o.require(verify_identity(tr, rep, t), tr.name() + " identity");
                o.require(jacobian_check(tr, t).ratio == sign, tr.name() + " Jacobian");
            }
        }
    }, kLimitBraid);

    report(7, "highest-weight minors equal the closed form", [](Outcome& o) {
        for (int n : {1, 2, 3}) {
            const Quiver Q(n);
            for (std::uint64_t k = 0; k < 50; ++k) {
                const auto t = signed_sample(Q.vertices().size(), 7, k);
                const Matrix<Rational> b = b_of_vertices(Q, t);
                for (int j = 1; j <= n; ++j)
                    o.require(oracle::det_by_permutations(b.block(0, 0, static_cast<std::size_t>(j), static_cast<std::size_t>(j))) ==
                                  minor_closed_form(Q, t, j),
                              "minor");
            }
        }
    });

    report(8, "equivariant comparison residual is exactly 0", [](Outcome& o) {
        for (int n : {1, 2, 3}) {
            const Quiver Q(n);
            std::mt19937_64 rng(static_cast<std::uint64_t>(800 + n));
            for (std::uint64_t k = 0; k < 50; ++k) {
                std::vector<Rational> logs = signed_sample(Q.vertices().size(), 8, 3 * k, 10);
                Rational diag(0);
                for (int i = 2; i <= n + 1; ++i) diag += logs[Q.vertex(i, i)];
                logs[Q.vertex(1, 1)] = -diag;
                std::vector<Rational> x = signed_sample(Q.vertices().size(), 8, 3 * k + 1, 10);
                Rational prod(1);
                for (int i = 2; i <= n + 1; ++i) prod *= x[Q.vertex(i, i)];
                x[Q.vertex(1, 1)] = 1 / prod;
                o.require(equiv_compare_residual(Q, logs, random_lambda(static_cast<std::size_t>(n + 1), rng), x).total() == 0, "residual");
            }
        }
    });

    report(9, "symmetry map: exact anti-symmetry and involution", [](Outcome& o) {
        for (int n : {1, 2, 3}) {
            std::vector<int> fixed;
            for (int i = 2; i <= n; ++i) fixed.push_back(i);
            for (const Parabolic& P : {Parabolic::borel(n), Parabolic::make(n, fixed)}) {
                const FiberChart fc = FiberChart::make(P, longest_word(CartanSpec::type_A(n)));
                for (std::uint64_t k = 0; k < 20; ++k) {
                    const auto diag = torus_from_q(P, random_positive_sample(P.free_indices().size(), 9, 2 * k, 10));
                    const Matrix<Rational> b = fiber_point(fc, random_positive_sample(fc.dimension(), 9, 2 * k + 1, 10), diag);
                    const Matrix<Rational> t = Matrix<Rational>::diagonal(diag);
                    const auto img = symmetry_map(P, t, b);
                    o.require(phase_FP(b, P) + phase_FP(img.b, img.Q) == 0, "anti-symmetry");
                    const auto back = symmetry_map(img.Q, img.t, img.b);
                    o.require(back.Q == P && back.b == b && projectively_equal(back.t, t), "involution");
                }
            }
        }
    });

    report(10, "Deodhar: distinguished enumeration and point counts in A2, A3", [](Outcome& o) {
        std::size_t pairs = 0, counts = 0;
        for (int n : {2, 3}) {
            const CartanSpec spec = CartanSpec::type_A(n);
            const Word w0 = longest_word(spec);
            const oracle::Perm pw = oracle::perm_of(n, w0);
            std::map<std::pair<Word, std::int64_t>, std::uint64_t> brute;
            for (const WeylWord& i : reduced_words(spec, w0)) {
                for (const Word& v : element_words(n)) {
                    ++pairs;
                    std::set<std::vector<int>> got, want;
                    for (const auto& s : distinguished_subexpressions(v, i)) got.insert(s.positions);
                    for (const auto& c : oracle::distinguished(n, i.letters, oracle::perm_of(n, v))) want.insert(c.positions);
                    o.require(got == want, "enumeration " + word_to_string(i.letters) + " v=" + word_to_string(v));
                    if (oracle::length(pw) - static_cast<int>(v.size()) > 4) continue;
                    for (std::int64_t p : {5, 7, 11}) {
                        const auto key = std::make_pair(v, p);
                        if (!brute.count(key)) brute[key] = cell_intersection_count(spec, v, w0, p);
                        const std::uint64_t formula = stratum_count_formula(i, v, static_cast<std::uint64_t>(p));
                        o.require(formula == brute[key], "count formula vs enumeration");
                        o.require(formula == static_cast<std::uint64_t>(oracle::r_polynomial(oracle::perm_of(n, v), pw, p)), "count vs R-polynomial");
                        ++counts;
                    }
                }
            }
        }
        o.detail << pairs << " (v, i) pairs, " << counts << " counts; ";
    });

    report(11, "gradient, stabilizer and critical-locus verdicts agree", [](Outcome& o) {
        std::mt19937_64 rng(1111);
        std::uniform_real_distribution<double> mag(0.05, 0.5), arg(-std::numbers::pi, std::numbers::pi);
        std::size_t critical = 0, perturbed = 0;
        const std::vector<FiberSpec> fibers{make_fiber(Parabolic::borel(1), {Complex(1.7, 0.2)}),
                                            make_fiber(Parabolic::borel(2), random_q(2, rng)),
                                            make_fiber(Parabolic::borel(2), random_q(2, rng), {Complex(0.5), Complex(-0.25), Complex(-0.25)}),
                                            make_fiber(Parabolic::make(2, {2}), random_q(1, rng))};
        for (const FiberSpec& f : fibers) {
            const SolveResult r = solve_critical(f);
            o.require(!r.records.empty(), "records");
            for (const auto& rec : r.records) {
                const ThreeWayVerdict v = three_way_check(f, rec.b, kThreeWayTol);
                o.require(v.gradient && v.agree(), "critical point verdicts");
                ++critical;
            }
            for (std::size_t j = 0; j < 50 && !r.records.empty(); ++j) {
                std::vector<Complex> z = affine_coordinates(f, r.records[j % r.records.size()].b);
                for (auto& x : z) x += std::polar(mag(rng), arg(rng));
                Matrix<Complex> b;
                try {
                    b = affine_point(f, z);
                } catch (const SingularInput&) {
                    continue;
                }
                const ThreeWayVerdict v = three_way_check(f, b, kThreeWayTol);
                o.require(!v.gradient && v.agree(), "perturbed point verdicts");
                ++perturbed;
            }
        }
        o.detail << critical << " critical, " << perturbed << " perturbed; ";
    });

    std::printf("acceptance: %d failing criteria\n", failures);
    return failures == 0 ? 0 : 1;
}
