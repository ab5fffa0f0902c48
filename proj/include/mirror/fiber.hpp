#pragma once

#include "mirror/borel.hpp"
#include "mirror/deodhar.hpp"

namespace mirror {

struct FiberSpec {
    Parabolic P;
    std::vector<Complex> q;       // one per free index of P, in increasing order
    std::vector<Complex> lambda;  // n+1 entries summing to 0, or empty
    double hbar = 1.0;            // carried for reports only

    void validate() const;
    bool equivariant() const;
    std::vector<Complex> lambda_or_zero() const;
};

// Torus diagonal from quantum parameters: alpha_i(t) = 1 on I_P, alpha_{n_j}(t) = q_j, t_{n+1} = 1.
template <class T>
std::vector<T> torus_from_q(const Parabolic& P, const std::vector<T>& q) {
    const std::vector<int> free = P.free_indices();
    if (q.size() != free.size()) throw ConfigError("expected " + std::to_string(free.size()) + " quantum parameters");
    std::vector<T> alpha(static_cast<std::size_t>(P.n), T(1));
    for (std::size_t k = 0; k < free.size(); ++k) alpha[static_cast<std::size_t>(free[k] - 1)] = q[k];
    std::vector<T> d(static_cast<std::size_t>(P.n + 1), T(1));
    for (int i = P.n; i >= 1; --i) d[static_cast<std::size_t>(i - 1)] = d[static_cast<std::size_t>(i)] * alpha[static_cast<std::size_t>(i - 1)];
    return d;
}

// Point of the fiber over t reached from any b in the open cell by right multiplication
// with the diagonal wbar^{-1} (t0^{-1} t) wbar, where t0 is the torus part of b.
template <class T>
Matrix<T> move_to_fiber(const Matrix<T>& b, const Parabolic& P, const std::vector<T>& target_diag) {
    const BorelFactorization<T> f = factorize_borel(b, P, false);
    std::vector<T> s;
    for (std::size_t i = 0; i < target_diag.size(); ++i) s.push_back(target_diag[i] / f.t(i, i));
    const Matrix<T> wb = lift<T>(wbar_rep(P));
    return b * (wb.inverse() * Matrix<T>::diagonal(s) * wb);
}

// A = L U with L lower triangular and U unit upper triangular (no pivoting).
template <class T>
Matrix<T> crout_lower(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    Matrix<T> L(n, n), U = Matrix<T>::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = j; i < n; ++i) {
            T s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * U(k, j);
            L(i, j) = s;
        }
        if (is_zero(L(j, j))) throw SingularInput("leading minor vanishes");
        for (std::size_t i = j + 1; i < n; ++i) {
            T s = a(j, i);
            for (std::size_t k = 0; k < j; ++k) s -= L(j, k) * U(k, i);
            U(j, i) = s / L(j, j);
        }
    }
    return L;
}

// Open-stratum chart of R_{w_P, w0} for a reduced word of w0, mapped into the fiber over t:
// g = chart point, b0 = lower factor of g w0^{-1}, then moved to the target torus.
struct FiberChart {
    Parabolic P;
    StratumChart chart;

    static FiberChart make(const Parabolic& P, const Word& w0_word);
    std::size_t dimension() const { return chart.slot_count(); }
};

template <class T>
Matrix<T> fiber_point(const FiberChart& fc, const std::vector<T>& coords, const std::vector<T>& target_diag) {
    const Matrix<T> g = chart_point(fc.chart, coords);
    const Matrix<T> b0 = crout_lower(Matrix<T>(g * lift<T>(longest_rep_inverse(fc.P.n))));
    return move_to_fiber(b0, fc.P, target_diag);
}

template <class T>
struct SymmetryImage {
    Parabolic Q;
    Matrix<T> t;  // w0 t^{-1} w0^{-1} eps, eps = (wQ wQ)^{-1}
    Matrix<T> b;  // b^{-1}
};

template <class T>
SymmetryImage<T> symmetry_map(const Parabolic& P, const Matrix<T>& t, const Matrix<T>& b) {
    SymmetryImage<T> out;
    out.Q = P.opposite();
    const Matrix<T> w0 = lift<T>(longest_rep(P.n));
    const Matrix<T> wq = lift<T>(parabolic_longest_rep(out.Q));
    const Matrix<T> eps = (wq * wq).inverse();
    out.t = w0 * t.inverse() * w0.inverse() * eps;
    out.b = b.inverse();
    return out;
}

// Sum of absolute discrepancies in the equivariant comparison, exact on rational input.
// logs: T_v for all vertices (diagonal sums to 0); lambda sums to 0; x: multiplicative
// vertex values with prod x_ii = 1 at which the exponential part is checked.
struct EquivResidual {
    Rational linear;    // weight correction minus <lambda, gamma_R(T)>
    Rational phase;     // phase_FP(b~(x)) - F~(sigma(x))
    Rational diagonal;  // diag(b~(x)) against exp(gamma_R) at x
    Rational total() const { return linear + phase + diagonal; }
};

EquivResidual equiv_compare_residual(const Quiver& Q, const std::vector<Rational>& logs, const std::vector<Rational>& lambda,
                                     const std::vector<Rational>& x);

}  // namespace mirror
