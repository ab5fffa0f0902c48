#pragma once

#include "mirror/matrix.hpp"
#include "mirror/weyl.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mirror {

// Matrix realization of a Lie algebra with Chevalley generators e_i, f_i (i is 1-based).
struct MatrixRep {
    CartanSpec spec;
    std::string name;
    int dim = 0;
    std::vector<Matrix<Rational>> e, f;
    Matrix<Rational> rho;  // diagonal, [rho, e_i] = e_i

    static MatrixRep type_A(int n);
    static MatrixRep B2();
    // e_1 and e_2 exchanged: the long root sits at index 1, against the Cartan data.
    static MatrixRep B2_swapped();
    static MatrixRep G2();

    const Matrix<Rational>& raising(int i) const;
    const Matrix<Rational>& lowering(int i) const;
};

enum class RootGroup { X, Y };

// exp(s e_i) or exp(s f_i), summed exactly (the generators are nilpotent).
template <class T>
Matrix<T> one_param(const MatrixRep& rep, RootGroup kind, int i, const T& s) {
    const Matrix<T> gen = lift<T>(kind == RootGroup::X ? rep.raising(i) : rep.lowering(i));
    const std::size_t n = static_cast<std::size_t>(rep.dim);
    Matrix<T> term = Matrix<T>::identity(n);
    Matrix<T> sum = term;
    for (int k = 1; k <= rep.dim; ++k) {
        term = (s / T(k)) * (term * gen);
        if (term.is_zero_matrix() && ScalarTraits<T>::exact) break;
        sum += term;
    }
    return sum;
}

template <class T>
Matrix<T> x_elem(const MatrixRep& rep, int i, const T& s) { return one_param(rep, RootGroup::X, i, s); }
template <class T>
Matrix<T> y_elem(const MatrixRep& rep, int i, const T& s) { return one_param(rep, RootGroup::Y, i, s); }

// s_i-dot = x_i(1) y_i(-1) x_i(1)
Matrix<Rational> sdot(const MatrixRep& rep, int i);
Matrix<Rational> sdot_inverse(const MatrixRep& rep, int i);

// Product of s_i-dot factors in word order.
Matrix<Rational> weyl_rep(const MatrixRep& rep, const Word& w);

// Coadjoint action transported through the trace pairing: M -> g M g^{-1}.
template <class T>
Matrix<T> coadjoint_act(const Matrix<T>& g, const Matrix<T>& m) {
    return conjugate(g, m);
}

// Equality up to a nonzero global scalar (adjoint-group semantics).
template <class T>
bool projectively_equal(const Matrix<T>& a, const Matrix<T>& b, double tol = 0.0) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    // locate a reference entry with the largest magnitude in a
    std::size_t ri = 0, rj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (magnitude(a(i, j)) > best) {
                best = magnitude(a(i, j));
                ri = i;
                rj = j;
            }
    if (is_zero(a(ri, rj))) return b.is_zero_matrix();
    if (is_zero(b(ri, rj))) return false;
    const T scale = b(ri, rj) / a(ri, rj);
    Matrix<T> diff = b - scale * a;
    if (ScalarTraits<T>::exact) return diff.is_zero_matrix();
    return diff.max_abs() <= tol * std::max(1.0, b.max_abs());
}

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> checks;    // every check run, in order
    std::vector<std::string> failures;  // names of failed checks
};

// Checks the Chevalley relations, Serre relations, rho, and for B2/G2 the braid
// identities that pin down the long/short root convention.
ValidationReport validate_rep(const MatrixRep& rep, std::uint64_t seed = 42);

}  // namespace mirror
