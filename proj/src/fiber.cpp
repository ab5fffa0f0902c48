#include "mirror/fiber.hpp"

namespace mirror {

void FiberSpec::validate() const {
    if (P.n < 1) throw ConfigError("rank must be at least 1");
    if (q.size() != P.free_indices().size())
        throw ConfigError("expected " + std::to_string(P.free_indices().size()) + " quantum parameters, got " + std::to_string(q.size()));
    for (const auto& x : q)
        if (x == Complex(0.0, 0.0)) throw ConfigError("quantum parameters must be nonzero");
    if (!lambda.empty()) {
        if (lambda.size() != static_cast<std::size_t>(P.n + 1)) throw ConfigError("lambda needs n+1 entries");
        Complex s(0.0, 0.0);
        for (const auto& x : lambda) s += x;
        if (std::abs(s) > 1e-12) throw ConfigError("lambda must sum to zero");
    }
}

bool FiberSpec::equivariant() const {
    for (const auto& x : lambda)
        if (x != Complex(0.0, 0.0)) return true;
    return false;
}

std::vector<Complex> FiberSpec::lambda_or_zero() const {
    return lambda.empty() ? std::vector<Complex>(static_cast<std::size_t>(P.n + 1), Complex(0.0, 0.0)) : lambda;
}

FiberChart FiberChart::make(const Parabolic& P, const Word& w0_word) {
    const MatrixRep rep = MatrixRep::type_A(P.n);
    const WeylWord i = WeylWord::make(rep.spec, w0_word);
    if (!i.reduced || static_cast<int>(i.size()) != longest_length(rep.spec)) throw ConfigError("chart needs a reduced word of w0");
    return FiberChart{P, open_stratum(rep, i, P.longest_word())};
}

namespace {
Rational abs_q(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }
}

EquivResidual equiv_compare_residual(const Quiver& Q, const std::vector<Rational>& logs, const std::vector<Rational>& lambda,
                                     const std::vector<Rational>& x) {
    const int n = Q.rank();
    const std::size_t nv = Q.vertices().size();
    if (logs.size() != nv || x.size() != nv) throw ConfigError("vertex data has the wrong size");
    if (lambda.size() != static_cast<std::size_t>(n + 1)) throw ConfigError("lambda needs n+1 entries");
    Rational diag_sum(0), lam_sum(0), xprod(1);
    for (int i = 1; i <= n + 1; ++i) {
        diag_sum += logs[Q.vertex(i, i)];
        xprod *= x[Q.vertex(i, i)];
        lam_sum += lambda[static_cast<std::size_t>(i - 1)];
    }
    if (sgn(diag_sum) != 0) throw ConfigError("diagonal logarithms must sum to zero");
    if (sgn(lam_sum) != 0) throw ConfigError("lambda must sum to zero");
    if (xprod != 1) throw ConfigError("diagonal vertex values must multiply to one");

    EquivResidual res;
    // linear part
    const ArrowWeights<Rational> w = equivariant_weights(Q, lambda);
    Rational correction(0);
    for (std::size_t a = 0; a < Q.arrows().size(); ++a)
        correction += w.arrow[a] * (logs[Q.arrows()[a].head] - logs[Q.arrows()[a].tail]);
    const Matrix<Rational> g = gamma_R(Q, logs);
    Rational pairing(0);
    for (int k = 0; k <= n; ++k) pairing += lambda[static_cast<std::size_t>(k)] * g(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    res.linear = abs_q(correction - pairing);

    // multiplicative part at x
    const Matrix<Rational> b = b_of_vertices(Q, x);
    res.phase = abs_q(phase_FP(b, Parabolic::borel(n)) - phase(point_from_vertices(Q, x)));
    std::vector<Rational> depth_prod(static_cast<std::size_t>(n + 2), Rational(1));
    for (std::size_t v = 0; v < nv; ++v) {
        const int k = Q.vertices()[v].depth();
        if (k >= 1) depth_prod[static_cast<std::size_t>(k)] *= x[v];
    }
    Rational diag_err(0);
    for (int k = 1; k <= n + 1; ++k) {
        const Rational expected = depth_prod[static_cast<std::size_t>(k - 1)] / depth_prod[static_cast<std::size_t>(k)];
        diag_err += abs_q(b(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(k - 1)) - expected);
    }
    res.diagonal = diag_err;
    return res;
}

}  // namespace mirror
