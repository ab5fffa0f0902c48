#pragma once

#include "mirror/compare.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace mirror {

class NotInOpenSet : public DomainError {
public:
    using DomainError::DomainError;
};

// Type A parabolic: `fixed` is I_P (simple indices whose root is in the Levi), sorted.
struct Parabolic {
    int n = 1;
    std::vector<int> fixed;

    static Parabolic borel(int n) { return Parabolic{n, {}}; }
    static Parabolic make(int n, std::vector<int> fixed);
    std::vector<int> free_indices() const;  // I^P, sorted
    bool is_fixed(int i) const { return std::binary_search(fixed.begin(), fixed.end(), i); }
    Word longest_word() const;             // reduced word of w_P
    Parabolic opposite() const;            // I_Q = { n+1-i : i in I_P }
    std::string label() const;
    bool operator==(const Parabolic& o) const { return n == o.n && fixed == o.fixed; }
};

const Matrix<Rational>& parabolic_longest_rep(const Parabolic& P);
// wbar = w_P-dot * w0-dot^{-1}
const Matrix<Rational>& wbar_rep(const Parabolic& P);

// b = u1 * t * wbar * u2^{-1}, u1 in U+ ∩ wbar U- wbar^{-1}.
template <class T>
struct BorelFactorization {
    Matrix<T> u1, t, u2;
    Parabolic P;

    Matrix<T> reconstruct() const { return u1 * t * lift<T>(wbar_rep(P)) * u2.inverse(); }
    // alpha_i(t) = t_i / t_{i+1}
    T alpha(int i) const { return t(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1)) / t(static_cast<std::size_t>(i), static_cast<std::size_t>(i)); }
};

// Position of the nonzero entry per column of a monomial matrix.
std::vector<std::size_t> monomial_rows(const Matrix<Rational>& m);

// Elimination along the permutation pattern of wbar. With require_fixed_torus the torus
// part must satisfy alpha_i(t) = 1 for i in I_P (exact in rational mode).
template <class T>
BorelFactorization<T> factorize_borel(const Matrix<T>& b, const Parabolic& P, bool require_fixed_torus = true,
                                      double tol = 1e-9) {
    const std::size_t N = static_cast<std::size_t>(P.n + 1);
    if (b.rows() != N || b.cols() != N) throw ConfigError("matrix size does not match the parabolic");
    constexpr bool exact = ScalarTraits<T>::exact;
    const Matrix<Rational>& wb = wbar_rep(P);
    const std::vector<std::size_t> pivot_row = monomial_rows(wb);
    std::vector<bool> used(N, false);
    Matrix<T> m = b, L = Matrix<T>::identity(N), R = Matrix<T>::identity(N);
    for (std::size_t c = 0; c < N; ++c) {
        const std::size_t p = pivot_row[c];
        if (is_zero(m(p, c))) throw NotInOpenSet("pivot vanishes in column " + std::to_string(c + 1));
        if (exact)
            for (std::size_t r = p + 1; r < N; ++r)
                if (!used[r] && !is_zero(m(r, c))) throw NotInOpenSet("entry below the pivot in column " + std::to_string(c + 1));
        const T inv = T(1) / m(p, c);
        for (std::size_t r = 0; r < p; ++r) {
            if (is_zero(m(r, c))) continue;
            const T f = m(r, c) * inv;
            for (std::size_t k = 0; k < N; ++k) {
                m(r, k) -= f * m(p, k);
                L(r, k) -= f * L(p, k);
            }
        }
        for (std::size_t k = c + 1; k < N; ++k) {
            if (is_zero(m(p, k))) continue;
            const T f = m(p, k) * inv;
            for (std::size_t r = 0; r < N; ++r) {
                m(r, k) -= f * m(r, c);
                R(r, k) -= f * R(r, c);
            }
        }
        used[p] = true;
    }
    BorelFactorization<T> F;
    F.P = P;
    const Matrix<T> wbT = lift<T>(wb);
    F.t = m * wbT.inverse();
    Matrix<T> u1 = L.inverse();
    // canonical u1: clear the positions of U+ ∩ wbar U+ wbar^{-1}, lowest height first
    std::vector<std::size_t> col_of_row(N);
    for (std::size_t c = 0; c < N; ++c) col_of_row[pivot_row[c]] = c;
    for (std::size_t h = 1; h < N; ++h)
        for (std::size_t r = 0; r + h < N; ++r) {
            const std::size_t c = r + h;
            if (col_of_row[r] > col_of_row[c] || is_zero(u1(r, c))) continue;
            const T f = u1(r, c);
            for (std::size_t k = 0; k <= r; ++k) u1(k, c) -= f * u1(k, r);
        }
    F.u1 = u1;
    F.u2 = b.inverse() * u1 * F.t * wbT;
    if (require_fixed_torus) {
        for (int i : P.fixed) {
            const T diff = F.alpha(i) - T(1);
            if (exact ? !is_zero(diff) : magnitude(diff) > tol) throw NotInOpenSet("torus part is not fixed by W_P");
        }
    }
    return F;
}

// rho = diag(n, ..., 0)
template <class T>
Matrix<T> rho_matrix(int n) {
    std::vector<T> d;
    for (int k = n; k >= 0; --k) d.push_back(T(k));
    return Matrix<T>::diagonal(d);
}

// F(X) = sum of superdiagonal entries (trace pairing with sum E_{i+1,i}).
template <class T>
T functional_F(const Matrix<T>& x) {
    T s(0);
    for (std::size_t i = 0; i + 1 < x.rows(); ++i) s += x(i, i + 1);
    return s;
}

template <class T>
T phase_from_factors(const BorelFactorization<T>& f) {
    const Matrix<T> rho = rho_matrix<T>(f.P.n);
    return functional_F(conjugate(f.u2, rho)) - functional_F(conjugate(f.u1, rho));
}

template <class T>
T phase_FP(const Matrix<T>& b, const Parabolic& P) {
    return phase_from_factors(factorize_borel(b, P));
}

}  // namespace mirror
