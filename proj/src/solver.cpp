#include "mirror/solver.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

namespace mirror {

namespace {

using D1 = Dual<Complex>;
using D2 = Dual<D1>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

double max_abs(const std::vector<Complex>& v) {
    double r = 0.0;
    for (const auto& x : v) r = std::max(r, std::abs(x));
    return r;
}

bool all_finite(const std::vector<Complex>& v) {
    for (const auto& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

double min_singular_value(const CMat& m) {
    if (m.size() == 0) return 1.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

// log-uniform modulus in [0.2, 5], uniform argument
std::vector<Complex> random_logs(std::size_t d, std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> mod(std::log(0.2), std::log(5.0));
    std::uniform_real_distribution<double> arg(-std::numbers::pi, std::numbers::pi);
    std::vector<Complex> u(d);
    for (auto& x : u) {
        const double r = mod(gen);
        x = Complex(r, arg(gen));
    }
    return u;
}

// Residuals are measured against the size of the fiber data, not of the point: runaways
// towards the boundary have huge cancelling coordinates and tiny relative residuals.
double fiber_scale(const FiberSpec& f) {
    return std::max({1.0, max_abs(f.q), max_abs(f.lambda)});
}

struct Evaluation {
    std::vector<Complex> residual;
    CMat jacobian;
    double scale = 1.0;
};

constexpr double kStepTol = 1e-8;

struct NewtonOutcome {
    std::vector<Complex> u;
    Evaluation last;
    bool converged = false;
};

template <class Eval>
NewtonOutcome newton(std::vector<Complex> u, Eval eval, const SolverConfig& cfg) {
    NewtonOutcome out;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        Evaluation e = eval(u);
        if (!all_finite(e.residual)) return out;
        const double err = max_abs(e.residual) / e.scale;
        CVec r(static_cast<Eigen::Index>(e.residual.size()));
        for (std::size_t k = 0; k < e.residual.size(); ++k) r(static_cast<Eigen::Index>(k)) = e.residual[k];
        CVec step = e.jacobian.fullPivLu().solve(-r);
        double big = 0.0;
        for (Eigen::Index k = 0; k < step.size(); ++k) big = std::max(big, std::abs(step(k)));
        if (!std::isfinite(big)) return out;
        // a small residual alone is also met on runaways towards the boundary
        if (err <= cfg.residual_tol && big <= kStepTol) {
            out.u = u;
            out.last = std::move(e);
            out.converged = true;
            return out;
        }
        const double limit = 2.0;
        if (big > limit) step *= limit / big;
        for (std::size_t k = 0; k < u.size(); ++k) u[k] += step(static_cast<Eigen::Index>(k));
    }
    return out;
}

// ---- quiver system ----------------------------------------------------------

struct QuiverSystem {
    Quiver Q;
    std::vector<std::size_t> lower;
    std::vector<Complex> diag;     // t_ii
    std::vector<Complex> lambda;   // may be empty
    std::vector<long> unknown_of;  // vertex -> unknown index, -1 on the diagonal
    double scale;

    QuiverSystem(const FiberSpec& f)
        : Q(f.P.n), lower(Q.lower_vertices()), diag(diagonal_from_q(f.P.n, f.q)), lambda(f.lambda), scale(fiber_scale(f)) {
        unknown_of.assign(Q.vertices().size(), -1);
        for (std::size_t k = 0; k < lower.size(); ++k) unknown_of[lower[k]] = static_cast<long>(k);
    }

    std::vector<Complex> vertex_logs(const std::vector<Complex>& u) const {
        std::vector<Complex> t(Q.vertices().size());
        for (std::size_t v = 0; v < t.size(); ++v)
            t[v] = unknown_of[v] >= 0 ? u[static_cast<std::size_t>(unknown_of[v])]
                                      : std::log(diag[static_cast<std::size_t>(Q.vertices()[v].i - 1)]);
        return t;
    }

    std::vector<Complex> sigma(const std::vector<Complex>& u) const {
        std::vector<Complex> t(Q.vertices().size());
        for (std::size_t v = 0; v < t.size(); ++v)
            t[v] = unknown_of[v] >= 0 ? std::exp(u[static_cast<std::size_t>(unknown_of[v])])
                                      : diag[static_cast<std::size_t>(Q.vertices()[v].i - 1)];
        return point_from_vertices(Q, t);
    }

    Evaluation operator()(const std::vector<Complex>& u) const {
        const std::vector<Complex> s = sigma(u);
        Evaluation e;
        e.residual = critical_residual(Q, s, lambda);
        const Eigen::Index m = static_cast<Eigen::Index>(lower.size());
        e.jacobian = CMat::Zero(m, m);
        for (std::size_t a = 0; a < Q.arrows().size(); ++a) {
            const auto& ar = Q.arrows()[a];
            const long h = unknown_of[ar.head], t = unknown_of[ar.tail];
            // d sigma_a / d u_w = sigma_a ([head = w] - [tail = w])
            auto add = [&](long row, double sign) {
                if (row < 0) return;
                if (h >= 0) e.jacobian(row, h) += sign * s[a];
                if (t >= 0) e.jacobian(row, t) -= sign * s[a];
            };
            add(h, 1.0);
            add(t, -1.0);
        }
        e.scale = scale;
        return e;
    }
};

// ---- chart system -----------------------------------------------------------

// Deodhar torus chart for a reduced word of w0 (log coordinates), or, with an empty word,
// the affine chart u1 -> b = lower factor of u1 t wbar, with u1 free at the pattern positions.
// The torus charts miss the points where their frozen minors vanish; the affine chart
// covers the whole fiber.
struct ChartSystem {
    FiberSpec fiber;
    std::optional<FiberChart> fc;
    std::vector<Complex> target;
    std::vector<std::pair<std::size_t, std::size_t>> u1_slots;

    ChartSystem(const FiberSpec& f, const Word& w0_word) : fiber(f), target(torus_from_q(f.P, f.q)) {
        if (!w0_word.empty()) {
            fc = FiberChart::make(f.P, w0_word);
            return;
        }
        const std::vector<std::size_t> pivot_row = monomial_rows(wbar_rep(f.P));
        const std::size_t N = pivot_row.size();
        std::vector<std::size_t> col_of_row(N);
        for (std::size_t c = 0; c < N; ++c) col_of_row[pivot_row[c]] = c;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = r + 1; c < N; ++c)
                if (col_of_row[r] > col_of_row[c]) u1_slots.emplace_back(r, c);
    }

    bool affine() const { return !fc.has_value(); }

    template <class T>
    Matrix<T> point(const std::vector<T>& u) const {
        std::vector<T> diag;
        for (const auto& x : target) diag.push_back(T(x));
        if (fc) {
            std::vector<T> coords;
            for (const auto& x : u) coords.push_back(exp(x));
            return fiber_point(*fc, coords, diag);
        }
        Matrix<T> u1 = Matrix<T>::identity(diag.size());
        for (std::size_t k = 0; k < u1_slots.size(); ++k) u1(u1_slots[k].first, u1_slots[k].second) = u[k];
        return crout_lower(Matrix<T>(u1 * Matrix<T>::diagonal(diag) * lift<T>(wbar_rep(fiber.P))));
    }

    template <class T>
    T objective(const std::vector<T>& u, Matrix<T>* b_out) const {
        const Matrix<T> b = point(u);
        const BorelFactorization<T> f = factorize_borel(b, fiber.P, false);
        T val = phase_from_factors(f);
        if (fiber.equivariant())
            for (std::size_t i = 0; i < b.rows(); ++i) val += T(fiber.lambda[i]) * log(b(i, i));
        if (b_out) *b_out = b;
        return val;
    }

    ChartEvaluation full(const std::vector<Complex>& u) const {
        const std::size_t d = u.size();
        std::vector<D2> x(d);
        for (std::size_t k = 0; k < d; ++k) {
            x[k] = D2(D1::variable(u[k], k, d));
            x[k].n = d;
            x[k].d[k] = D1(Complex(1.0, 0.0));
        }
        Matrix<D2> b;
        const D2 val = objective(x, &b);
        ChartEvaluation e;
        e.value = val.v.v;
        e.gradient.resize(d);
        e.hessian = Matrix<Complex>(d, d);
        for (std::size_t k = 0; k < d; ++k) {
            e.gradient[k] = val.d[k].v;
            for (std::size_t l = 0; l < d; ++l) e.hessian(k, l) = val.d[k].d[l];
        }
        e.b = b.map<Complex>([](const D2& z) { return z.v.v; });
        return e;
    }

    Evaluation operator()(const std::vector<Complex>& u) const {
        const ChartEvaluation c = full(u);
        Evaluation e;
        e.residual = c.gradient;
        const Eigen::Index m = static_cast<Eigen::Index>(u.size());
        e.jacobian = CMat(m, m);
        for (Eigen::Index k = 0; k < m; ++k)
            for (Eigen::Index l = 0; l < m; ++l) e.jacobian(k, l) = c.hessian(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
        e.scale = fiber_scale(fiber);
        return e;
    }
};

double relative_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d / std::max(1.0, max_abs(a));
}

std::vector<Complex> flatten(const Matrix<Complex>& m) {
    std::vector<Complex> v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

template <class Work>
void run_parallel(std::size_t count, unsigned threads, Work work) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) work(i);
        });
    for (auto& th : pool) th.join();
}

struct Candidate {
    CriticalRecord rec;
    std::vector<Complex> key;  // dedup key
};

}  // namespace

std::size_t fiber_dimension(const Parabolic& P) {
    return static_cast<std::size_t>(P.n * (P.n + 1) / 2) - P.longest_word().size();
}

std::vector<Complex> quiver_sigma(const Quiver& Q, const std::vector<Complex>& q, const std::vector<Complex>& lower_logs) {
    FiberSpec f{Parabolic::borel(Q.rank()), q, {}, 1.0};
    return QuiverSystem(f).sigma(lower_logs);
}

ChartEvaluation evaluate_chart(const FiberSpec& fiber, const Word& w0_word, const std::vector<Complex>& logs) {
    return ChartSystem(fiber, w0_word).full(logs);
}

std::vector<Complex> affine_coordinates(const FiberSpec& fiber, const Matrix<Complex>& b) {
    const ChartSystem sys(fiber, Word{});
    const BorelFactorization<Complex> f = factorize_borel(b, fiber.P, false);
    std::vector<Complex> z;
    for (const auto& [r, c] : sys.u1_slots) z.push_back(f.u1(r, c));
    return z;
}

Matrix<Complex> affine_point(const FiberSpec& fiber, const std::vector<Complex>& z) {
    const ChartSystem sys(fiber, Word{});
    if (z.size() != sys.u1_slots.size()) throw ConfigError("affine chart takes " + std::to_string(sys.u1_slots.size()) + " coordinates");
    return sys.point(z);
}

ThreeWayVerdict three_way_check(const FiberSpec& fiber, const Matrix<Complex>& b, double tol) {
    ThreeWayVerdict v;
    const ChartEvaluation ev = evaluate_chart(fiber, Word{}, affine_coordinates(fiber, b));
    v.grad_residual = max_abs(ev.gradient) / fiber_scale(fiber);
    v.gradient = v.grad_residual <= tol;
    const Matrix<Complex> M = f_matrix(fiber.P.n, fiber.lambda_or_zero());
    v.stabilizer = stabilizer_check(b, M, tol);
    v.locus = critical_locus_check(factorize_borel(b, fiber.P, false), M, tol);
    return v;
}

void annotate_record(CriticalRecord& rec, const FiberSpec& fiber, double tol) {
    const std::vector<Complex> lam = fiber.lambda_or_zero();
    const Matrix<Complex> M = f_matrix(fiber.P.n, lam);
    const BorelFactorization<Complex> f = factorize_borel(rec.b, fiber.P, false);
    rec.toda = mu_image(f, M);
    rec.conserved = conserved_quantities(rec.toda);
    rec.q_extracted = quantum_params(f, M);
    rec.off_pattern = off_pattern_residual(rec.toda);
    const CheckResult st = stabilizer_check(rec.b, M, tol);
    rec.stabilizer_residual = st.residual;
    rec.stabilizer_ok = st.ok;
    rec.locus = critical_locus_check(f, M, tol);
}

SolveResult solve_critical(const FiberSpec& fiber, const SolverConfig& cfg) {
    fiber.validate();
    const Parabolic& P = fiber.P;
    const std::size_t dim = fiber_dimension(P);
    bool use_quiver = P.fixed.empty();
    if (cfg.method == SolverConfig::Method::Chart) use_quiver = false;
    if (cfg.method == SolverConfig::Method::Quiver && !P.fixed.empty()) throw ConfigError("the quiver solver handles P = B only");
    const std::size_t starts = cfg.starts ? cfg.starts : 200 * std::max<std::size_t>(dim, 1);

    SolveResult result;
    result.diagnostics.starts = starts;
    result.diagnostics.method = use_quiver ? "quiver" : "chart";
    std::vector<std::optional<Candidate>> slots(starts);

    if (use_quiver) {
        const QuiverSystem sys(fiber);
        run_parallel(starts, cfg.threads, [&](std::size_t i) {
            try {
                NewtonOutcome o = newton(random_logs(dim, cfg.seed, i), sys, cfg);
                if (!o.converged) return;
                Candidate c;
                const std::vector<Complex> s = sys.sigma(o.u);
                c.rec.coords = s;
                c.rec.chart = "quiver";
                c.rec.value = phase(s);
                Complex corr(0.0, 0.0);
                if (fiber.equivariant()) {
                    const std::vector<Complex> logs = sys.vertex_logs(o.u);
                    for (std::size_t v : sys.lower) corr += logs[v] * depth_shift(fiber.lambda, sys.Q.vertices()[v].depth());
                }
                c.rec.log_term = corr;
                c.rec.grad_residual = max_abs(o.last.residual) / o.last.scale;
                c.rec.hessian_min_sv = min_singular_value(o.last.jacobian);
                c.rec.b = beta(sys.Q, s);
                c.key = s;
                slots[i] = std::move(c);
            } catch (const std::exception&) {
            }
        });
    } else {
        const MatrixRep rep = MatrixRep::type_A(P.n);
        const std::vector<WeylWord> words = reduced_words(rep.spec, longest_word(rep.spec));
        std::vector<ChartSystem> systems;
        systems.emplace_back(fiber, Word{});
        for (const auto& w : words) systems.emplace_back(fiber, w.letters);
        // even starts use the affine chart, odd starts cycle through the torus charts
        auto system_of = [&](std::size_t i) -> std::size_t { return i % 2 == 0 ? 0 : 1 + (i / 2) % words.size(); };
        run_parallel(starts, cfg.threads, [&](std::size_t i) {
            const std::size_t which = system_of(i);
            const ChartSystem& sys = systems[which];
            try {
                std::vector<Complex> u0 = random_logs(dim, cfg.seed, i);
                if (sys.affine())
                    for (auto& x : u0) x = std::exp(x);
                NewtonOutcome o = newton(u0, sys, cfg);
                if (!o.converged) return;
                const ChartEvaluation ev = sys.full(o.u);
                Candidate c;
                for (const auto& x : o.u) c.rec.coords.push_back(sys.affine() ? x : std::exp(x));
                c.rec.chart = sys.affine() ? "affine" : word_to_string(words[which - 1].letters);
                c.rec.b = ev.b;
                const Complex fp = phase_from_factors(factorize_borel(ev.b, P, false));
                c.rec.value = fp;
                c.rec.log_term = ev.value - fp;
                c.rec.grad_residual = max_abs(o.last.residual) / o.last.scale;
                c.rec.hessian_min_sv = min_singular_value(o.last.jacobian);
                c.key = flatten(ev.b);
                slots[i] = std::move(c);
            } catch (const std::exception&) {
            }
        });
    }

    std::vector<Candidate> kept;
    for (auto& s : slots) {
        if (!s) {
            ++result.diagnostics.failed;
            continue;
        }
        ++result.diagnostics.converged;
        bool dup = false;
        for (const auto& k : kept)
            if (relative_distance(k.key, s->key) < cfg.dedup_radius) {
                dup = true;
                break;
            }
        if (dup) {
            ++result.diagnostics.duplicates;
            continue;
        }
        kept.push_back(std::move(*s));
    }
    for (auto& k : kept) {
        k.rec.degenerate = k.rec.hessian_min_sv <= cfg.degenerate_sv;
        if (k.rec.degenerate) ++result.diagnostics.degenerate;
        try {
            annotate_record(k.rec, fiber, cfg.check_tol);
        } catch (const std::exception&) {
            k.rec.stabilizer_ok = false;
        }
        result.records.push_back(std::move(k.rec));
    }
    std::sort(result.records.begin(), result.records.end(), [](const CriticalRecord& a, const CriticalRecord& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return result;
}

}  // namespace mirror
