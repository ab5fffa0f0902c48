#pragma once

#include "mirror/borel.hpp"

namespace mirror {

// M = sum_i E_{i+1,i} - diag(h); the functional X -> trace(M X) is F - h.
template <class T>
Matrix<T> f_matrix(int n, const std::vector<T>& h) {
    const std::size_t N = static_cast<std::size_t>(n + 1);
    if (!h.empty() && h.size() != N) throw ConfigError("h needs n+1 diagonal entries");
    Matrix<T> m(N, N);
    for (std::size_t i = 0; i + 1 < N; ++i) m(i + 1, i) = T(1);
    for (std::size_t i = 0; i < h.size(); ++i) m(i, i) = -h[i];
    return m;
}

template <class T>
double max_abs_entry(const Matrix<T>& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, magnitude(m(i, j)));
    return r;
}

struct CheckResult {
    bool ok = false;
    double residual = 0.0;
};

// residual = max |b M b^{-1} - M|; in exact mode ok means exactly zero,
// otherwise residual <= tol * max(1, max |M|).
template <class T>
CheckResult stabilizer_check(const Matrix<T>& b, const Matrix<T>& M, double tol) {
    const Matrix<T> diff = conjugate(b, M) - M;
    CheckResult r;
    r.residual = max_abs_entry(diff);
    r.ok = ScalarTraits<T>::exact && tol == 0.0 ? diff.is_zero_matrix() : r.residual <= tol * std::max(1.0, max_abs_entry(M));
    return r;
}

// w_P^{-1} u1^{-1} M u1 w_P
template <class T>
Matrix<T> mu_image(const BorelFactorization<T>& f, const Matrix<T>& M) {
    const Matrix<T> g = f.u1 * lift<T>(parabolic_longest_rep(f.P));
    return g.inverse() * M * g;
}

// Entries away from the tridiagonal band of the Toda slice (subdiagonal and below are
// compared against the pattern: subdiagonal 1, strictly below 0).
template <class T>
double off_pattern_residual(const Matrix<T>& A) {
    double r = 0.0;
    const std::size_t N = A.rows();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (j + 2 <= i) r = std::max(r, magnitude(A(i, j)));
            if (j + 1 == i) r = std::max(r, magnitude(T(A(i, j) - T(1))));
            if (j >= i + 2) r = std::max(r, magnitude(A(i, j)));
        }
    return r;
}

// Coefficients c_1..c_{n+1} of det(x - A) for the tridiagonal part of A.
template <class T>
std::vector<T> conserved_quantities(const Matrix<T>& A) {
    const std::size_t N = A.rows();
    Matrix<T> band(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if ((i > j ? i - j : j - i) <= 1) band(i, j) = A(i, j);
    std::vector<T> c = characteristic_polynomial(band);
    return std::vector<T>(c.begin() + 1, c.end());
}

// Coefficients c_1..c_{n+1} of prod (x + lambda_i).
template <class T>
std::vector<T> toda_target(const std::vector<T>& lambda) {
    std::vector<T> c{T(1)};
    for (const auto& l : lambda) {
        std::vector<T> next(c.size() + 1, T(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k];
            next[k + 1] += c[k] * l;
        }
        c = next;
    }
    return std::vector<T>(c.begin() + 1, c.end());
}

// q_j = -(F - h)(u1 w_P . f_{n_j}) = -(mu image)_{n_j, n_j + 1}, over the free indices of P.
template <class T>
std::vector<T> quantum_params(const BorelFactorization<T>& f, const Matrix<T>& M) {
    const Matrix<T> A = mu_image(f, M);
    std::vector<T> q;
    for (int i : f.P.free_indices()) q.push_back(-A(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i)));
    return q;
}

struct CriticalLocusReport {
    double upper_residual = 0.0;  // entries (r, c), c >= r + 2, of the twisted mu image
    double q_residual = 0.0;      // max |(F - h)(u1 w_P f_i) + alpha_i(t)| over free i
    bool ok = false;
};

template <class T>
CriticalLocusReport critical_locus_check(const BorelFactorization<T>& f, const Matrix<T>& M, double tol) {
    const Matrix<T> A = mu_image(f, M);
    CriticalLocusReport r;
    const std::size_t N = A.rows();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 2; j < N; ++j) r.upper_residual = std::max(r.upper_residual, magnitude(A(i, j)));
    for (int i : f.P.free_indices()) {
        const T val = A(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i));
        r.q_residual = std::max(r.q_residual, magnitude(T(-val - f.alpha(i))));
    }
    const double scale = std::max(1.0, max_abs_entry(A));
    r.ok = ScalarTraits<T>::exact && tol == 0.0 ? (r.upper_residual == 0.0 && r.q_residual == 0.0)
                                                : (r.upper_residual <= tol * scale && r.q_residual <= tol * scale);
    return r;
}

}  // namespace mirror
