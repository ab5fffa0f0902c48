#pragma once

#include "mirror/chevalley.hpp"
#include "mirror/quiver.hpp"

namespace mirror {

// Type A elementary factors in (n+1)x(n+1) matrices, index j is 1-based.
template <class T>
Matrix<T> x_simple(int n, int j, const T& s) {
    Matrix<T> m = Matrix<T>::identity(static_cast<std::size_t>(n + 1));
    m(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j)) = s;
    return m;
}

// w0-dot in type A for the concatenated reduced word; entries 0, +-1.
const Matrix<Rational>& longest_rep(int n);
const Matrix<Rational>& longest_rep_inverse(int n);

template <class T>
Matrix<T> x_c(const Quiver& Q, const std::vector<T>& sigma) {
    const int n = Q.rank();
    Matrix<T> g = Matrix<T>::identity(static_cast<std::size_t>(n + 1));
    for (int k = 1; k <= n; ++k)
        for (int j = n; j >= k; --j) g = g * x_simple(n, j, sigma[Q.c(j, k)]);
    return g;
}

template <class T>
Matrix<T> x_d(const Quiver& Q, const std::vector<T>& sigma) {
    const int n = Q.rank();
    Matrix<T> g = Matrix<T>::identity(static_cast<std::size_t>(n + 1));
    for (int k = n; k >= 1; --k)
        for (int j = 1; j <= k; ++j) g = g * x_simple(n, n - j + 1, sigma[Q.d(k + 1, j + 1)]);
    return g;
}

// diag(q~_1...q~_n, q~_2...q~_n, ..., q~_n, 1)
template <class T>
Matrix<T> tau(const Quiver& Q, const std::vector<T>& sigma) {
    return Matrix<T>::diagonal(diagonal_from_q(Q.rank(), q_tilde(Q, sigma)));
}

// x_c(sigma) D w0^{-1} x_d(-sigma)^{-1} for a diagonal middle factor D.
template <class T>
Matrix<T> beta_with_torus(const Quiver& Q, const std::vector<T>& sigma, const Matrix<T>& torus) {
    std::vector<T> neg;
    for (const auto& s : sigma) neg.push_back(-s);
    return x_c(Q, sigma) * torus * lift<T>(longest_rep_inverse(Q.rank())) * x_d(Q, neg).inverse();
}

// Lower triangular image; a nonzero entry above the diagonal is a bug (exact mode).
template <class T>
Matrix<T> beta(const Quiver& Q, const std::vector<T>& sigma) {
    Matrix<T> b = beta_with_torus(Q, sigma, tau(Q, sigma));
    if (ScalarTraits<T>::exact && !b.is_lower_triangular()) throw InvariantViolation("beta has entries above the diagonal");
    return b;
}

// b(t) built from vertex values t (all vertices, diagonal included).
template <class T>
Matrix<T> b_of_vertices(const Quiver& Q, const std::vector<T>& t) {
    std::vector<T> diag;
    for (int i = 1; i <= Q.rank() + 1; ++i) diag.push_back(t[Q.vertex(i, i)]);
    return beta_with_torus(Q, point_from_vertices(Q, t), Matrix<T>::diagonal(diag));
}

// <b(t) v+, v+> on the k-th fundamental representation: the top-left k x k minor.
template <class T>
T highest_weight_coefficient(const Quiver& Q, const std::vector<T>& t, int k) {
    if (k < 1 || k > Q.rank()) throw DomainError("fundamental index out of range");
    const Matrix<T> b = b_of_vertices(Q, t);
    return b.block(0, 0, static_cast<std::size_t>(k), static_cast<std::size_t>(k)).determinant();
}

// (prod t_ii) * prod_{i-j=k} t_ij^{-1}
template <class T>
T minor_closed_form(const Quiver& Q, const std::vector<T>& t, int k) {
    if (k < 1 || k > Q.rank()) throw DomainError("fundamental index out of range");
    T r(1);
    for (std::size_t v = 0; v < Q.vertices().size(); ++v) {
        const int depth = Q.vertices()[v].depth();
        if (is_zero(t[v]) && (depth == 0 || depth == k)) throw DomainError("vertex value vanishes on the diagonal band");
        if (depth == 0) r *= t[v];
        if (depth == k) r /= t[v];
    }
    return r;
}

}  // namespace mirror
