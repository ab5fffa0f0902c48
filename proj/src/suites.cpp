#include "mirror/suites.hpp"

#include "mirror/braid.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace mirror {

namespace {

using Clock = std::chrono::steady_clock;

template <class Body>
ReportRow run_row(std::string name, Json inputs, bool exact, Body body) {
    ReportRow row;
    row.name = std::move(name);
    row.inputs = std::move(inputs);
    row.exact = exact;
    const auto t0 = Clock::now();
    try {
        body(row);
    } catch (const SingularInput& e) {
        row.status = Status::Fail;
        row.detail["error"] = e.what();
    } catch (const DomainError& e) {
        row.status = Status::Fail;
        row.detail["error"] = e.what();
    }
    row.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return row;
}

Status verdict(bool ok) { return ok ? Status::Pass : Status::Fail; }

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double r = 0.0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return a.size() == b.size() ? r : INFINITY;
}

double max_abs(const std::vector<Complex>& v) {
    double r = 0.0;
    for (const auto& x : v) r = std::max(r, std::abs(x));
    return r;
}

// Nonzero rationals with random signs.
std::vector<Rational> signed_sample(std::size_t count, std::uint64_t seed, std::uint64_t index, int bits) {
    const std::vector<Rational> raw = random_positive_sample(2 * count, seed, index, bits);
    std::vector<Rational> out;
    for (std::size_t k = 0; k < count; ++k) {
        const bool negative = mpz_odd_p(raw[count + k].get_num().get_mpz_t()) != 0;
        out.push_back(negative ? Rational(-raw[k]) : raw[k]);
    }
    return out;
}

// Rationals in [-1, 1] with denominators up to 2^bits, summing to zero.
std::vector<Rational> traceless_sample(std::size_t count, std::uint64_t seed, std::uint64_t index) {
    std::vector<Rational> s = signed_sample(count, seed, index, 8);
    Rational total(0);
    for (auto& x : s) {
        if (abs(x) > 1) x = 1 / x;
        total += x;
    }
    const Rational shift = total / Rational(static_cast<long>(count));
    for (auto& x : s) x -= shift;
    for (const auto& x : s)
        if (abs(x) > 1) return traceless_sample(count, seed, index + 0x9e3779b97f4a7c15ULL);
    return s;
}

std::vector<Complex> to_complex(const std::vector<Rational>& v) {
    std::vector<Complex> out;
    for (const auto& x : v) out.emplace_back(x.get_d(), 0.0);
    return out;
}

Parabolic parabolic_from(const SuiteConfig& cfg, int rank) {
    for (int i : cfg.fixed)
        if (i < 1 || i > rank) throw ConfigError("fixed index " + std::to_string(i) + " is outside 1.." + std::to_string(rank));
    std::set<int> uniq(cfg.fixed.begin(), cfg.fixed.end());
    if (uniq.size() != cfg.fixed.size()) throw ConfigError("fixed indices repeat");
    return Parabolic::make(rank, cfg.fixed);
}

bool exact_mode(const SuiteConfig& cfg, bool default_exact) {
    if (cfg.mode == SuiteConfig::Mode::Auto) return default_exact;
    return cfg.mode == SuiteConfig::Mode::Exact;
}

double check_tol(const SuiteConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

std::vector<Complex> parse_values(const std::vector<std::string>& text, bool exact, const std::string& what) {
    std::vector<Complex> out;
    for (const auto& s : text) {
        if (exact) {
            Rational r;
            try {
                r = parse_rational(s);
            } catch (const ConfigError&) {
                throw ConfigError("exact mode needs rational " + what + ", got '" + s + "'");
            }
            out.emplace_back(r.get_d(), 0.0);
        } else {
            out.push_back(parse_complex(s));
        }
    }
    return out;
}

SolverConfig solver_config(const SuiteConfig& cfg) {
    SolverConfig sc;
    sc.seed = cfg.seed;
    sc.starts = cfg.starts;
    sc.threads = cfg.threads;
    if (cfg.residual_tol) sc.residual_tol = *cfg.residual_tol;
    if (cfg.dedup_radius) sc.dedup_radius = *cfg.dedup_radius;
    if (cfg.degenerate_sv) sc.degenerate_sv = *cfg.degenerate_sv;
    if (cfg.tol) sc.check_tol = *cfg.tol;
    if (cfg.method == "auto") sc.method = SolverConfig::Method::Auto;
    else if (cfg.method == "quiver") sc.method = SolverConfig::Method::Quiver;
    else if (cfg.method == "chart") sc.method = SolverConfig::Method::Chart;
    else throw ConfigError("unknown solver method '" + cfg.method + "' (auto, quiver, chart)");
    return sc;
}

Json diagnostics_json(const SolveDiagnostics& d) {
    return Json{{"starts", d.starts}, {"converged", d.converged}, {"failed", d.failed},
                {"duplicates", d.duplicates}, {"degenerate", d.degenerate}, {"method", d.method}};
}

// Record-level verdicts shared by the solve and peterson suites.
struct RecordChecks {
    double q_error = 0.0;
    std::optional<double> toda_error;
    bool q_ok = false, toda_ok = true;
};

constexpr double kQTolerance = 1e-10;

RecordChecks check_record(const CriticalRecord& r, const FiberSpec& f, double tol) {
    RecordChecks c;
    c.q_error = max_abs_diff(r.q_extracted, f.q) / std::max(1.0, max_abs(f.q));
    c.q_ok = c.q_error <= kQTolerance;
    if (f.P.fixed.empty()) {
        const std::vector<Complex> target = toda_target(f.lambda_or_zero());
        const double scale = std::max(1.0, max_abs(target));
        c.toda_error = max_abs_diff(r.conserved, target) / scale;
        c.toda_ok = *c.toda_error <= tol;
    }
    return c;
}

// ---- solve ------------------------------------------------------------------

ReportDocument suite_solve(const SuiteConfig& cfg) {
    if (cfg.rank < 1) throw ConfigError("solve needs --rank >= 1");
    const bool exact = exact_mode(cfg, false);
    FiberSpec f;
    f.P = parabolic_from(cfg, cfg.rank);
    f.q = parse_values(cfg.q, exact, "q");
    f.lambda = parse_values(cfg.lambda, exact, "lambda");
    f.validate();
    const SolverConfig sc = solver_config(cfg);
    const double tol = sc.check_tol;

    ReportDocument doc;
    SolveResult res;
    doc.rows.push_back(run_row("solve", Json{{"parabolic", f.P.label()}}, false, [&](ReportRow& row) {
        res = solve_critical(f, sc);
        row.status = verdict(!res.records.empty());
        row.detail = Json{{"records", res.records.size()}, {"expected", expected_critical_count(f.P)}};
    }));
    doc.diagnostics = diagnostics_json(res.diagnostics);
    for (std::size_t k = 0; k < res.records.size(); ++k) {
        const CriticalRecord& r = res.records[k];
        doc.rows.push_back(run_row("critical_point/" + std::to_string(k), Json{{"index", k}}, false, [&](ReportRow& row) {
            const RecordChecks c = check_record(r, f, tol);
            row.residual = r.grad_residual;
            const bool ok = r.stabilizer_ok && r.locus.ok && c.q_ok && c.toda_ok;
            row.status = r.degenerate ? Status::Degenerate : verdict(ok);
            row.detail = Json{{"value", to_json(r.value)},
                              {"stabilizer_residual", format_real(r.stabilizer_residual)},
                              {"critical_locus_ok", r.locus.ok},
                              {"q_error", format_real(c.q_error)},
                              {"toda_error", c.toda_error ? Json(format_real(*c.toda_error)) : Json(nullptr)}};
        }));
        doc.records.push_back(record_to_json(r));
        doc.critical.push_back(r);
    }
    return doc;
}

// ---- braid ------------------------------------------------------------------

ReportDocument suite_braid(const SuiteConfig& cfg) {
    if (!exact_mode(cfg, true)) throw ConfigError("the braid suite runs in exact mode only");
    const std::size_t samples = cfg.samples ? cfg.samples : 50;
    ReportDocument doc;
    for (const CoordTransform& tr : transform_catalogue()) {
        doc.rows.push_back(run_row("transform/" + tr.name(), Json{{"transform", tr.name()}, {"samples", samples}}, true, [&](ReportRow& row) {
            const MatrixRep rep = rep_for(tr.rep);
            const std::uint64_t s = stream_seed(cfg.seed, "braid/" + tr.name());
            std::size_t identity_failures = 0, jacobian_failures = 0;
            for (std::size_t k = 0; k < samples; ++k) {
                const std::vector<Rational> t = random_positive_sample(tr.arity, s, k);
                if (!verify_identity(tr, rep, t)) ++identity_failures;
                const JacobianResult j = jacobian_check(tr, t);
                if (abs(j.ratio) != 1 || j.sign != tr.sign) ++jacobian_failures;
            }
            row.status = verdict(identity_failures == 0 && jacobian_failures == 0);
            row.detail = Json{{"rep", rep.name},
                              {"identity_rows", tr.rows.size()},
                              {"identity_failures", identity_failures},
                              {"jacobian_failures", jacobian_failures},
                              {"sign", tr.sign},
                              {"bond_order", tr.bond_order}};
        }));
    }
    for (const MatrixRep& rep : {rep_for(RepKind::A2), rep_for(RepKind::B2), rep_for(RepKind::G2)}) {
        doc.rows.push_back(run_row("representation/" + rep.name, Json{{"rep", rep.name}}, true, [&](ReportRow& row) {
            const ValidationReport v = validate_rep(rep, cfg.seed);
            row.status = verdict(v.ok);
            row.detail = Json{{"checks", v.checks.size()}, {"failures", v.failures}};
        }));
    }
    return doc;
}

// ---- compare ----------------------------------------------------------------

std::vector<Rational> quiver_point(const Quiver& Q, std::uint64_t seed, std::uint64_t index) {
    return signed_sample(Q.vertices().size(), seed, index, 12);
}

template <class T>
T conv(const Rational& x) { return from_rational<T>(x); }

template <class T>
std::vector<T> conv(const std::vector<Rational>& v) {
    std::vector<T> out;
    for (const auto& x : v) out.push_back(from_rational<T>(x));
    return out;
}

template <class T>
double deviation(const T& a, const T& b) {
    if constexpr (ScalarTraits<T>::exact) return a == b ? 0.0 : 1.0;
    else return magnitude(T(a - b)) / std::max(1.0, std::max(magnitude(a), magnitude(b)));
}

template <class T>
void compare_rows(ReportDocument& doc, const SuiteConfig& cfg, int n, bool samples_given, double tol) {
    constexpr bool exact = ScalarTraits<T>::exact;
    const Quiver Q(n);
    const Parabolic B = Parabolic::borel(n);
    auto count = [&](std::size_t fallback) { return samples_given ? cfg.samples : fallback; };
    auto finish = [&](ReportRow& row, double worst, std::size_t failures) {
        if (!exact) row.residual = worst;
        row.status = verdict(failures == 0);
        row.detail["failures"] = failures;
    };
    const std::string tag = "/n" + std::to_string(n);

    const std::size_t nb = count(100);
    doc.rows.push_back(run_row("beta_lower" + tag, Json{{"n", n}, {"samples", nb}}, exact, [&](ReportRow& row) {
        const std::uint64_t s = stream_seed(cfg.seed, "compare/quiver" + tag);
        double worst = 0.0;
        std::size_t failures = 0;
        for (std::size_t k = 0; k < nb; ++k) {
            const std::vector<T> sigma = point_from_vertices(Q, conv<T>(quiver_point(Q, s, k)));
            const Matrix<T> b = beta_with_torus(Q, sigma, tau(Q, sigma));
            double above = 0.0;
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = i + 1; j < b.cols(); ++j) above = std::max(above, magnitude(b(i, j)));
            const double rel = above / std::max(1.0, b.max_abs());
            worst = std::max(worst, rel);
            if (exact ? above != 0.0 : rel > tol) ++failures;
        }
        finish(row, worst, failures);
    }));
    doc.rows.push_back(run_row("phase" + tag, Json{{"n", n}, {"samples", nb}}, exact, [&](ReportRow& row) {
        const std::uint64_t s = stream_seed(cfg.seed, "compare/quiver" + tag);
        double worst = 0.0;
        std::size_t failures = 0;
        for (std::size_t k = 0; k < nb; ++k) {
            const std::vector<T> sigma = point_from_vertices(Q, conv<T>(quiver_point(Q, s, k)));
            const Matrix<T> b = beta_with_torus(Q, sigma, tau(Q, sigma));
            const double d = deviation(phase_FP(b, B), phase(sigma));
            worst = std::max(worst, d);
            if (exact ? d != 0.0 : d > tol) ++failures;
        }
        finish(row, worst, failures);
    }));

    const std::size_t nm = count(50);
    doc.rows.push_back(run_row("minors" + tag, Json{{"n", n}, {"samples", nm}}, exact, [&](ReportRow& row) {
        const std::uint64_t s = stream_seed(cfg.seed, "compare/minors" + tag);
        double worst = 0.0;
        std::size_t failures = 0;
        for (std::size_t k = 0; k < nm; ++k) {
            const std::vector<T> t = conv<T>(quiver_point(Q, s, k));
            for (int j = 1; j <= n; ++j) {
                const double d = deviation(highest_weight_coefficient(Q, t, j), minor_closed_form(Q, t, j));
                worst = std::max(worst, d);
                if (exact ? d != 0.0 : d > tol) ++failures;
            }
        }
        finish(row, worst, failures);
    }));

    doc.rows.push_back(run_row("equivariant" + tag, Json{{"n", n}, {"samples", nm}}, true, [&](ReportRow& row) {
        if (!exact) {
            row.status = Status::Skipped;
            row.detail["reason"] = "rational arithmetic only";
            return;
        }
        const std::uint64_t s = stream_seed(cfg.seed, "compare/equivariant" + tag);
        std::size_t failures = 0;
        for (std::size_t k = 0; k < nm; ++k) {
            const std::size_t nv = Q.vertices().size();
            std::vector<Rational> logs = signed_sample(nv, s, 3 * k, 10);
            Rational diag(0);
            for (int i = 2; i <= n + 1; ++i) diag += logs[Q.vertex(i, i)];
            logs[Q.vertex(1, 1)] = -diag;
            const std::vector<Rational> lambda = traceless_sample(static_cast<std::size_t>(n + 1), s, 3 * k + 1);
            std::vector<Rational> x = signed_sample(nv, s, 3 * k + 2, 10);
            Rational prod(1);
            for (int i = 2; i <= n + 1; ++i) prod *= x[Q.vertex(i, i)];
            x[Q.vertex(1, 1)] = 1 / prod;
            if (sgn(equiv_compare_residual(Q, logs, lambda, x).total()) != 0) ++failures;
        }
        row.status = verdict(failures == 0);
        row.detail["failures"] = failures;
    }));


    std::vector<Parabolic> parabolics{B};
    if (n >= 2) {
        std::vector<int> fixed;
        for (int i = 2; i <= n; ++i) fixed.push_back(i);
        parabolics.push_back(Parabolic::make(n, fixed));
    }
    const std::size_t ns = count(20);
    for (const Parabolic& P : parabolics) {
        const std::string name = "symmetry" + tag + "/" + P.label();
        doc.rows.push_back(run_row(name, Json{{"n", n}, {"parabolic", P.label()}, {"samples", ns}}, exact, [&](ReportRow& row) {
            const std::uint64_t s = stream_seed(cfg.seed, "compare/" + name);
            const FiberChart fc = FiberChart::make(P, longest_word(CartanSpec::type_A(n)));
            double worst = 0.0;
            std::size_t antisymmetry = 0, torus = 0, involution = 0;
            for (std::size_t k = 0; k < ns; ++k) {
                const std::vector<T> diag = torus_from_q(P, conv<T>(random_positive_sample(P.free_indices().size(), s, 2 * k, 10)));
                const Matrix<T> b = fiber_point(fc, conv<T>(random_positive_sample(fc.dimension(), s, 2 * k + 1, 10)), diag);
                const Matrix<T> t = Matrix<T>::diagonal(diag);
                const SymmetryImage<T> img = symmetry_map(P, t, b);

                const T sum = phase_FP(b, P) + phase_FP(img.b, img.Q);
                const double d = magnitude(sum) / std::max(1.0, magnitude(phase_FP(b, P)));
                worst = std::max(worst, d);
                if (exact ? !is_zero(sum) : d > tol) ++antisymmetry;

                if (!projectively_equal(factorize_borel(img.b, img.Q, true, tol).t, img.t, tol)) ++torus;

                const SymmetryImage<T> back = symmetry_map(img.Q, img.t, img.b);
                const bool same_b = exact ? back.b == b : (back.b - b).max_abs() <= tol * std::max(1.0, b.max_abs());
                if (!(back.Q == P) || !same_b || !projectively_equal(back.t, t, tol)) ++involution;
            }
            if (!exact) row.residual = worst;
            row.status = verdict(antisymmetry + torus + involution == 0);
            row.detail = Json{{"antisymmetry_failures", antisymmetry}, {"torus_failures", torus}, {"involution_failures", involution},
                              {"opposite", P.opposite().label()}};
        }));
    }
}

ReportDocument suite_compare(const SuiteConfig& cfg) {
    const bool exact = exact_mode(cfg, true);
    std::vector<int> ranks{1, 2, 3};
    if (cfg.rank != -1) {
        if (cfg.rank < 1) throw ConfigError("compare needs --rank >= 1");
        ranks = {cfg.rank};
    }
    const double tol = check_tol(cfg, 1e-9);
    ReportDocument doc;
    for (int n : ranks) {
        if (exact) compare_rows<Rational>(doc, cfg, n, cfg.samples != 0, 0.0);
        else compare_rows<Complex>(doc, cfg, n, cfg.samples != 0, tol);
    }
    return doc;
}

// ---- peterson ---------------------------------------------------------------

struct FiberCase {
    Parabolic P;
    bool equivariant = false;
};

std::vector<Complex> random_q(std::size_t count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> logmod(std::log(0.5), std::log(2.0)), arg(-std::numbers::pi, std::numbers::pi);
    std::vector<Complex> q;
    for (std::size_t k = 0; k < count; ++k) q.push_back(std::polar(std::exp(logmod(rng)), arg(rng)));
    return q;
}

void peterson_float(ReportDocument& doc, const SuiteConfig& cfg, const std::vector<FiberCase>& cases, std::size_t fibers) {
    SolverConfig sc = solver_config(cfg);
    const double tol = sc.check_tol;
    const std::size_t perturbed = 50;
    Json diag = Json::array();
    for (const FiberCase& fcase : cases) {
        const std::string base = "fiber/" + fcase.P.label() + (fcase.equivariant ? "/equivariant" : "");
        std::mt19937_64 rng(stream_seed(cfg.seed, "peterson/" + base));
        for (std::size_t k = 0; k < fibers; ++k) {
            FiberSpec f;
            f.P = fcase.P;
            f.q = random_q(f.P.free_indices().size(), rng);
            if (fcase.equivariant) f.lambda = to_complex(traceless_sample(static_cast<std::size_t>(f.P.n + 1), rng(), 0));
            const std::string name = base + "/" + std::to_string(k);
            const Json inputs{{"parabolic", f.P.label()}, {"q", to_json(f.q)}, {"lambda", to_json(f.lambda)}};
            sc.seed = stream_seed(cfg.seed, "peterson/solve/" + name);
            SolveResult res;
            doc.rows.push_back(run_row(name + "/count", inputs, false, [&](ReportRow& row) {
                res = solve_critical(f, sc);
                const std::size_t expected = expected_critical_count(f.P);
                std::size_t nondegenerate = 0;
                for (const auto& r : res.records)
                    if (!r.degenerate) ++nondegenerate;
                row.status = verdict(nondegenerate == expected && res.records.size() == expected);
                row.detail = Json{{"records", res.records.size()}, {"nondegenerate", nondegenerate}, {"expected", expected}};
            }));
            diag.push_back(Json{{"fiber", name}, {"solver", diagnostics_json(res.diagnostics)}});

            double stab = 0.0, qerr = 0.0, toda = 0.0, upper = 0.0;
            std::size_t stab_fail = 0, q_fail = 0, toda_fail = 0, locus_fail = 0;
            for (const auto& r : res.records) {
                const RecordChecks c = check_record(r, f, tol);
                stab = std::max(stab, r.stabilizer_residual);
                qerr = std::max(qerr, c.q_error);
                if (c.toda_error) toda = std::max(toda, *c.toda_error);
                upper = std::max({upper, r.locus.upper_residual, r.locus.q_residual});
                stab_fail += !r.stabilizer_ok;
                q_fail += !c.q_ok;
                toda_fail += !c.toda_ok;
                locus_fail += !r.locus.ok;
                doc.records.push_back(record_to_json(r));
                doc.critical.push_back(r);
            }
            auto add = [&](const std::string& check, double residual, std::size_t failures) {
                doc.rows.push_back(run_row(name + "/" + check, inputs, false, [&](ReportRow& row) {
                    row.residual = residual;
                    row.status = verdict(failures == 0 && !res.records.empty());
                    row.detail = Json{{"failures", failures}, {"records", res.records.size()}};
                }));
            };
            add("stabilizer", stab, stab_fail);
            add("q_extraction", qerr, q_fail);
            if (f.P.fixed.empty()) add("toda", toda, toda_fail);
            add("critical_locus", upper, locus_fail);

            doc.rows.push_back(run_row(name + "/three_way", inputs, false, [&](ReportRow& row) {
                std::size_t disagree = 0, critical_points = 0, perturbed_points = 0, misclassified = 0;
                for (const auto& r : res.records) {
                    const ThreeWayVerdict v = three_way_check(f, r.b, tol);
                    disagree += !v.agree();
                    misclassified += !v.gradient;
                    ++critical_points;
                }
                std::uniform_real_distribution<double> mag(0.05, 0.5), arg(-std::numbers::pi, std::numbers::pi);
                for (std::size_t j = 0; j < perturbed && !res.records.empty(); ++j) {
                    const CriticalRecord& r = res.records[j % res.records.size()];
                    std::vector<Complex> z = affine_coordinates(f, r.b);
                    for (auto& x : z) x += std::polar(mag(rng), arg(rng));
                    Matrix<Complex> b;
                    try {
                        b = affine_point(f, z);
                    } catch (const SingularInput&) {
                        continue;
                    }
                    const ThreeWayVerdict v = three_way_check(f, b, tol);
                    disagree += !v.agree();
                    misclassified += v.gradient;
                    ++perturbed_points;
                }
                row.status = verdict(disagree == 0 && misclassified == 0 && critical_points > 0);
                row.detail = Json{{"critical_points", critical_points}, {"perturbed_points", perturbed_points},
                                  {"disagreements", disagree}, {"misclassified", misclassified}};
            }));
        }
    }
    doc.diagnostics = Json{{"fibers", diag}};
}

// Exact layer: polynomials in M commute with M, so every invertible one is a critical point.
void peterson_exact(ReportDocument& doc, const SuiteConfig& cfg, const std::vector<int>& ranks, std::size_t samples) {
    for (int n : ranks) {
        for (bool equivariant : {false, true}) {
            const std::string name = "exact/B" + std::to_string(n) + (equivariant ? "/equivariant" : "");
            doc.rows.push_back(run_row(name, Json{{"n", n}, {"samples", samples}, {"equivariant", equivariant}}, true, [&](ReportRow& row) {
                const std::uint64_t s = stream_seed(cfg.seed, "peterson/" + name);
                const Parabolic B = Parabolic::borel(n);
                const std::size_t N = static_cast<std::size_t>(n + 1);
                std::size_t positive_fail = 0, control_fail = 0;
                for (std::size_t k = 0; k < samples; ++k) {
                    const std::vector<Rational> lambda =
                        equivariant ? traceless_sample(N, s, 3 * k) : std::vector<Rational>(N, Rational(0));
                    const Matrix<Rational> M = f_matrix(n, lambda);
                    const std::vector<Rational> a = signed_sample(N, s, 3 * k + 1, 8);
                    Matrix<Rational> b(N, N), power = Matrix<Rational>::identity(N);
                    for (std::size_t j = 0; j < N; ++j) {
                        b += a[j] * power;
                        power = power * M;
                    }
                    try {
                        const BorelFactorization<Rational> fz = factorize_borel(b, B);
                        const bool ok = stabilizer_check(b, M, 0.0).ok && critical_locus_check(fz, M, 0.0).ok &&
                                        conserved_quantities(mu_image(fz, M)) == toda_target(lambda);
                        positive_fail += !ok;
                    } catch (const DomainError&) {
                        ++positive_fail;
                    }
                    // negative control: a generic lower-triangular matrix
                    const std::vector<Rational> entries = signed_sample(N * N, s, 3 * k + 2, 8);
                    Matrix<Rational> c(N, N);
                    for (std::size_t i = 0; i < N; ++i)
                        for (std::size_t j = 0; j <= i; ++j) c(i, j) = entries[i * N + j];
                    const BorelFactorization<Rational> fc = factorize_borel(c, B);
                    const bool stab = stabilizer_check(c, M, 0.0).ok, locus = critical_locus_check(fc, M, 0.0).ok;
                    control_fail += stab || locus || stab != locus;
                }
                row.status = verdict(positive_fail == 0 && control_fail == 0);
                row.detail = Json{{"critical_failures", positive_fail}, {"control_failures", control_fail}};
            }));
        }
    }
}

ReportDocument suite_peterson(const SuiteConfig& cfg) {
    ReportDocument doc;
    if (exact_mode(cfg, false)) {
        std::vector<int> ranks{1, 2, 3};
        if (cfg.rank != -1) {
            if (cfg.rank < 1) throw ConfigError("peterson needs --rank >= 1");
            if (!cfg.fixed.empty()) throw ConfigError("exact peterson checks run for P = B only");
            ranks = {cfg.rank};
        }
        peterson_exact(doc, cfg, ranks, cfg.samples ? cfg.samples : 20);
        return doc;
    }
    std::vector<FiberCase> cases;
    if (cfg.rank != -1) {
        if (cfg.rank < 1) throw ConfigError("peterson needs --rank >= 1");
        const Parabolic P = parabolic_from(cfg, cfg.rank);
        cases = {{P, false}, {P, true}};
    } else {
        for (const Parabolic& P : {Parabolic::borel(1), Parabolic::borel(2), Parabolic::make(2, {2})}) {
            cases.push_back({P, false});
            cases.push_back({P, true});
        }
    }
    peterson_float(doc, cfg, cases, cfg.samples ? cfg.samples : 2);
    return doc;
}

// ---- deodhar ----------------------------------------------------------------

std::vector<Word> all_elements(const CartanSpec& spec) {
    std::map<std::vector<int>, Word> seen;
    std::vector<WeylElement> frontier{WeylElement(spec)};
    seen[frontier[0].key()] = {};
    while (!frontier.empty()) {
        std::vector<WeylElement> next;
        for (const auto& e : frontier)
            for (int i = 1; i <= spec.rank; ++i) {
                const WeylElement f = e.times_simple(i);
                if (seen.count(f.key())) continue;
                seen[f.key()] = f.reduced_word();
                next.push_back(f);
            }
        frontier = std::move(next);
    }
    std::vector<Word> out;
    for (auto& [key, w] : seen) out.push_back(w);
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    return out;
}

struct DeodharGrid {
    std::vector<WeylWord> words;
    std::vector<Word> vs;
    CartanSpec spec;
};

std::vector<DeodharGrid> deodhar_grid(const SuiteConfig& cfg) {
    std::vector<int> ranks{2, 3};
    if (cfg.rank != -1) ranks = {cfg.rank};
    if (!cfg.word.empty() && cfg.rank == -1) ranks = {*std::max_element(cfg.word.begin(), cfg.word.end())};
    std::vector<DeodharGrid> out;
    for (int n : ranks) {
        if (n < 1 || n > 4) throw ConfigError("deodhar suites run for ranks 1..4");
        DeodharGrid g;
        g.spec = CartanSpec::type_A(n);
        if (!cfg.word.empty()) {
            for (int i : cfg.word)
                if (i < 1 || i > n) throw ConfigError("word letter " + std::to_string(i) + " is outside 1.." + std::to_string(n));
            const WeylWord w = WeylWord::make(g.spec, cfg.word);
            if (!w.reduced) throw ConfigError("word " + word_to_string(cfg.word) + " is not reduced");
            g.words = {w};
        } else {
            g.words = reduced_words(g.spec, longest_word(g.spec));
        }
        if (!cfg.v.empty()) {
            for (int i : cfg.v)
                if (i < 1 || i > n) throw ConfigError("v letter " + std::to_string(i) + " is outside 1.." + std::to_string(n));
            g.vs = {cfg.v};
        } else {
            g.vs = all_elements(g.spec);
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::set<std::vector<int>> brute_force_distinguished(const Word& v, const WeylWord& i) {
    const WeylElement target = WeylElement::from_word(i.spec, v);
    std::set<std::vector<int>> out;
    const std::size_t m = i.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        std::vector<int> pos;
        for (std::size_t l = 0; l < m; ++l)
            if (mask >> l & 1) pos.push_back(static_cast<int>(l + 1));
        const Subexpression s = classify(i, pos);
        if (s.product() == target && is_distinguished(s)) out.insert(pos);
    }
    return out;
}

ReportDocument deodhar_enumerate(const SuiteConfig& cfg) {
    ReportDocument doc;
    for (const DeodharGrid& g : deodhar_grid(cfg)) {
        for (const WeylWord& i : g.words) {
            const std::string name = "enumerate/" + g.spec.label() + "/" + word_to_string(i.letters);
            doc.rows.push_back(run_row(name, Json{{"word", i.letters}, {"elements", g.vs.size()}}, true, [&](ReportRow& row) {
                std::size_t mismatches = 0, total = 0;
                Json per_v = Json::array();
                for (const Word& v : g.vs) {
                    if (!bruhat_leq(g.spec, v, i.letters)) continue;
                    std::set<std::vector<int>> found;
                    Json classes = Json::array();
                    for (const Subexpression& s : distinguished_subexpressions(v, i)) {
                        found.insert(s.positions);
                        classes.push_back(Json{{"J0", s.j0}, {"J+", s.jplus}, {"J-", s.jminus}});
                    }
                    total += found.size();
                    if (found != brute_force_distinguished(v, i)) ++mismatches;
                    if (cfg.v.size() || g.vs.size() == 1) per_v.push_back(Json{{"v", v}, {"subexpressions", classes}});
                }
                row.status = verdict(mismatches == 0);
                row.detail = Json{{"mismatches", mismatches}, {"subexpressions", total}};
                if (!per_v.empty()) row.detail["listing"] = per_v;
            }));
        }
    }
    return doc;
}

ReportDocument deodhar_sample(const SuiteConfig& cfg) {
    ReportDocument doc;
    const std::size_t samples = cfg.samples ? cfg.samples : 5;
    for (const DeodharGrid& g : deodhar_grid(cfg)) {
        const MatrixRep rep = MatrixRep::type_A(g.spec.rank);
        for (const WeylWord& i : g.words) {
            const std::string name = "sample/" + g.spec.label() + "/" + word_to_string(i.letters);
            doc.rows.push_back(run_row(name, Json{{"word", i.letters}, {"samples", samples}}, true, [&](ReportRow& row) {
                const std::vector<std::size_t> w_ranks = top_right_ranks(weyl_rep(rep, i.letters));
                std::size_t cell_fail = 0, collisions = 0, strata = 0;
                for (const Word& v : g.vs) {
                    if (!bruhat_leq(g.spec, v, i.letters)) continue;
                    ++strata;
                    const StratumChart chart = open_stratum(rep, i, v);
                    const std::vector<std::size_t> v_ranks = bottom_right_ranks(weyl_rep(rep, v));
                    std::map<std::vector<std::string>, std::vector<Rational>> forms;
                    const std::uint64_t s = stream_seed(cfg.seed, name + "/" + word_to_string(v));
                    for (std::size_t k = 0; k < samples; ++k) {
                        const std::vector<Rational> coords = positive_sample(chart, s, k);
                        const Matrix<Rational> p = chart_point(chart, coords);
                        if (top_right_ranks(p) != w_ranks || bottom_right_ranks(p) != v_ranks) ++cell_fail;
                        const Matrix<Rational> nf = coset_normal_form(p);
                        std::vector<std::string> key;
                        for (std::size_t r = 0; r < nf.rows(); ++r)
                            for (std::size_t c = 0; c < nf.cols(); ++c) key.push_back(nf(r, c).get_str());
                        const auto [it, fresh] = forms.emplace(key, coords);
                        if (!fresh && it->second != coords) ++collisions;
                    }
                }
                row.status = verdict(cell_fail == 0 && collisions == 0);
                row.detail = Json{{"strata", strata}, {"cell_failures", cell_fail}, {"normal_form_collisions", collisions}};
            }));
        }
    }
    return doc;
}

ReportDocument deodhar_count(const SuiteConfig& cfg) {
    std::vector<int> primes = cfg.primes.empty() ? std::vector<int>{5, 7, 11} : cfg.primes;
    for (int p : primes) {
        bool prime = p >= 2;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) throw ConfigError(std::to_string(p) + " is not prime");
    }
    if (cfg.max_codim < 0) throw ConfigError("--max-codim must be >= 0");
    ReportDocument doc;
    for (const DeodharGrid& g : deodhar_grid(cfg)) {
        std::map<std::pair<Word, int>, std::uint64_t> brute;
        for (const WeylWord& i : g.words) {
            const std::string name = "count/" + g.spec.label() + "/" + word_to_string(i.letters);
            doc.rows.push_back(run_row(name, Json{{"word", i.letters}, {"primes", primes}, {"max_codim", cfg.max_codim}}, true, [&](ReportRow& row) {
                const int length = WeylWord::make(g.spec, i.letters).element().length();
                std::size_t mismatches = 0, checked = 0;
                Json table = Json::array();
                for (const Word& v : g.vs) {
                    if (!bruhat_leq(g.spec, v, i.letters)) continue;
                    if (length - WeylElement::from_word(g.spec, v).length() > cfg.max_codim) continue;
                    for (int p : primes) {
                        const std::uint64_t formula = stratum_count_formula(i, v, static_cast<std::uint64_t>(p));
                        auto key = std::make_pair(v, p);
                        if (!brute.count(key)) brute[key] = cell_intersection_count(g.spec, v, i.letters, p);
                        const std::uint64_t direct = brute[key];
                        bool ok = formula == direct;
                        if (p == primes.front()) ok = ok && chart_image_count(i, v, p) == formula;
                        mismatches += !ok;
                        ++checked;
                        table.push_back(Json{{"v", v}, {"p", p}, {"formula", formula}, {"direct", direct}});
                    }
                }
                row.status = verdict(mismatches == 0);
                row.detail = Json{{"checked", checked}, {"mismatches", mismatches}};
                if (g.words.size() == 1) row.detail["table"] = table;
            }));
        }
    }
    return doc;
}

ReportDocument suite_deodhar(const SuiteConfig& cfg) {
    if (!exact_mode(cfg, true)) throw ConfigError("the deodhar suite runs in exact mode only");
    if (cfg.action == "enumerate") return deodhar_enumerate(cfg);
    if (cfg.action == "sample") return deodhar_sample(cfg);
    if (cfg.action == "count") return deodhar_count(cfg);
    throw ConfigError("unknown deodhar action '" + cfg.action + "' (enumerate, sample, count)");
}

}  // namespace

std::string suite_name(SuiteConfig::Suite s) {
    switch (s) {
        case SuiteConfig::Suite::Solve: return "solve";
        case SuiteConfig::Suite::Braid: return "braid";
        case SuiteConfig::Suite::Compare: return "compare";
        case SuiteConfig::Suite::Peterson: return "peterson";
        case SuiteConfig::Suite::Deodhar: return "deodhar";
    }
    return "solve";
}

SuiteConfig::Suite parse_suite(const std::string& name) {
    for (auto s : {SuiteConfig::Suite::Solve, SuiteConfig::Suite::Braid, SuiteConfig::Suite::Compare, SuiteConfig::Suite::Peterson,
                   SuiteConfig::Suite::Deodhar})
        if (suite_name(s) == name) return s;
    throw ConfigError("unknown suite '" + name + "'");
}

SuiteConfig::Mode parse_mode(const std::string& name) {
    if (name == "auto") return SuiteConfig::Mode::Auto;
    if (name == "exact") return SuiteConfig::Mode::Exact;
    if (name == "float") return SuiteConfig::Mode::Float;
    throw ConfigError("unknown mode '" + name + "' (auto, exact, float)");
}

Json config_echo(const SuiteConfig& cfg) {
    auto opt = [](const std::optional<double>& x) { return x ? Json(format_real(*x)) : Json(nullptr); };
    const char* mode = cfg.mode == SuiteConfig::Mode::Exact ? "exact" : cfg.mode == SuiteConfig::Mode::Float ? "float" : "auto";
    // threads is left out: reports must not depend on it
    return Json{{"suite", suite_name(cfg.suite)},
                {"action", cfg.action},
                {"rank", cfg.rank},
                {"fixed", cfg.fixed},
                {"q", cfg.q},
                {"lambda", cfg.lambda},
                {"samples", cfg.samples},
                {"seed", std::to_string(cfg.seed)},
                {"tol", opt(cfg.tol)},
                {"residual_tol", opt(cfg.residual_tol)},
                {"dedup_radius", opt(cfg.dedup_radius)},
                {"degenerate_sv", opt(cfg.degenerate_sv)},
                {"starts", cfg.starts},
                {"method", cfg.method},
                {"mode", mode},
                {"word", cfg.word},
                {"v", cfg.v},
                {"primes", cfg.primes},
                {"max_codim", cfg.max_codim}};
}

ReportDocument run_suite(const SuiteConfig& cfg) {
    if (cfg.threads == 0) throw ConfigError("--threads must be >= 1");
    if (cfg.tol && !(*cfg.tol >= 0.0)) throw ConfigError("--tol must be non-negative");
    ReportDocument doc;
    switch (cfg.suite) {
        case SuiteConfig::Suite::Solve: doc = suite_solve(cfg); break;
        case SuiteConfig::Suite::Braid: doc = suite_braid(cfg); break;
        case SuiteConfig::Suite::Compare: doc = suite_compare(cfg); break;
        case SuiteConfig::Suite::Peterson: doc = suite_peterson(cfg); break;
        case SuiteConfig::Suite::Deodhar: doc = suite_deodhar(cfg); break;
    }
    doc.suite = suite_name(cfg.suite);
    doc.config = config_echo(cfg);
    return doc;
}

int exit_code_for(const ReportDocument& doc) { return doc.all_pass() ? 0 : 1; }

std::size_t expected_critical_count(const Parabolic& P) {
    auto factorial = [](std::size_t m) {
        std::size_t r = 1;
        for (std::size_t k = 2; k <= m; ++k) r *= k;
        return r;
    };
    std::size_t count = factorial(static_cast<std::size_t>(P.n + 1));
    // Levi blocks: maximal runs of consecutive fixed indices
    std::size_t block = 1;
    for (int i = 1; i <= P.n + 1; ++i) {
        if (i <= P.n && P.is_fixed(i)) {
            ++block;
        } else {
            count /= factorial(block);
            block = 1;
        }
    }
    return count;
}

std::uint64_t stream_seed(std::uint64_t seed, const std::string& label) {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(h),
                      static_cast<std::uint32_t>(h >> 32)};
    std::uint32_t parts[2];
    seq.generate(parts, parts + 2);
    return (static_cast<std::uint64_t>(parts[0]) << 32) | parts[1];
}

}  // namespace mirror
