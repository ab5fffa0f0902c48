#pragma once

#include "mirror/scalar.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <vector>

namespace mirror {

// Dense square-or-rectangular matrix; indices are 0-based.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
        Matrix m(n, n);
        m(i, j) = T(1);
        return m;
    }
    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    template <class U, class F>
    Matrix<U> map(F f) const {
        Matrix<U> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix r(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }

    std::vector<T> diag() const {
        std::vector<T> d;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d.push_back((*this)(i, i));
        return d;
    }

    double max_abs() const {
        double m = 0.0;
        for (const T& x : a_) m = std::max(m, magnitude(x));
        return m;
    }

    bool is_zero_matrix() const {
        return std::all_of(a_.begin(), a_.end(), [](const T& x) { return mirror::is_zero(x); });
    }

    // Structural predicates use exact zero tests on the value part.
    bool is_lower_triangular() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!mirror::is_zero((*this)(i, j))) return false;
        return true;
    }
    bool is_upper_triangular() const { return transpose().is_lower_triangular(); }
    bool is_diagonal() const { return is_lower_triangular() && is_upper_triangular(); }
    bool has_unit_diagonal() const {
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            if (!mirror::is_zero<T>(T((*this)(i, i) - T(1)))) return false;
        return true;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] = a_[k] + o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] = a_[k] - o.a_[k];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(const Matrix& a) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = -a.a_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (mirror::is_zero(x) && ScalarTraits<T>::exact) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + x * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = s * a.a_[k];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.a_.size(); ++k)
            if (!(a.a_[k] == b.a_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix inverse() const;
    T determinant() const;
    std::size_t rank() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

namespace detail {
// Pivot choice: largest magnitude for floating types, first nonzero for exact ones.
template <class T>
std::ptrdiff_t choose_pivot(const Matrix<T>& m, std::size_t col, std::size_t from) {
    std::ptrdiff_t best = -1;
    double best_mag = 0.0;
    for (std::size_t r = from; r < m.rows(); ++r) {
        if (is_zero(m(r, col))) continue;
        if (ScalarTraits<T>::exact) return static_cast<std::ptrdiff_t>(r);
        double g = magnitude(m(r, col));
        if (best < 0 || g > best_mag) {
            best = static_cast<std::ptrdiff_t>(r);
            best_mag = g;
        }
    }
    return best;
}
template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
}  // namespace detail

template <class T>
Matrix<T> Matrix<T>::inverse() const {
    if (!square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = rows_;
    Matrix w = *this;
    Matrix inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::ptrdiff_t p = detail::choose_pivot(w, c, c);
        if (p < 0) throw SingularInput("matrix is not invertible");
        detail::swap_rows(w, c, static_cast<std::size_t>(p));
        detail::swap_rows(inv, c, static_cast<std::size_t>(p));
        T piv_inv = T(1) / w(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            w(c, j) = w(c, j) * piv_inv;
            inv(c, j) = inv(c, j) * piv_inv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            T f = w(r, c);
            if (is_zero(f) && ScalarTraits<T>::exact) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w(r, j) = w(r, j) - f * w(c, j);
                inv(r, j) = inv(r, j) - f * inv(c, j);
            }
        }
    }
    return inv;
}

template <class T>
T Matrix<T>::determinant() const {
    if (!square()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = rows_;
    Matrix w = *this;
    T det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::ptrdiff_t p = detail::choose_pivot(w, c, c);
        if (p < 0) return T(0);
        if (static_cast<std::size_t>(p) != c) {
            detail::swap_rows(w, c, static_cast<std::size_t>(p));
            det = -det;
        }
        det = det * w(c, c);
        T piv_inv = T(1) / w(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            T f = w(r, c) * piv_inv;
            if (is_zero(f) && ScalarTraits<T>::exact) continue;
            for (std::size_t j = c; j < n; ++j) w(r, j) = w(r, j) - f * w(c, j);
        }
    }
    return det;
}

template <class T>
std::size_t Matrix<T>::rank() const {
    Matrix w = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::ptrdiff_t p = detail::choose_pivot(w, c, r);
        if (p < 0) continue;
        detail::swap_rows(w, r, static_cast<std::size_t>(p));
        T piv_inv = T(1) / w(r, c);
        for (std::size_t i = r + 1; i < rows_; ++i) {
            T f = w(i, c) * piv_inv;
            if (is_zero(f)) continue;
            for (std::size_t j = c; j < cols_; ++j) w(i, j) = w(i, j) - f * w(r, j);
        }
        ++r;
    }
    return r;
}

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}

// Monic characteristic polynomial det(x - A) = x^n + c[1] x^{n-1} + ... + c[n];
// returns c with c[0] = 1 (Faddeev-LeVerrier, characteristic zero).
template <class T>
std::vector<T> characteristic_polynomial(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    std::vector<T> c(n + 1, T(0));
    c[0] = T(1);
    Matrix<T> m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix<T> am = a * m;
        for (std::size_t i = 0; i < n; ++i) am(i, i) = am(i, i) + c[k - 1];
        m = am;
        Matrix<T> amk = a * m;
        T tr(0);
        for (std::size_t i = 0; i < n; ++i) tr = tr + amk(i, i);
        c[k] = -tr / T(static_cast<int>(k));
    }
    return c;
}

template <class T>
Matrix<T> lift(const Matrix<Rational>& m) {
    return m.template map<T>([](const Rational& x) { return from_rational<T>(x); });
}

// Conjugation g m g^{-1}.
template <class T>
Matrix<T> conjugate(const Matrix<T>& g, const Matrix<T>& m) {
    return g * m * g.inverse();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "\n[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
        os << "]";
    }
    return os;
}

}  // namespace mirror
