#include "mirror/chevalley.hpp"

namespace mirror {

namespace {
Matrix<Rational> E(int n, int i, int j) { return Matrix<Rational>::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); }

Matrix<Rational> descending_rho(int n) {
    std::vector<Rational> d;
    for (int k = n - 1; k >= 0; --k) d.emplace_back(k);
    return Matrix<Rational>::diagonal(d);
}
}  // namespace

MatrixRep MatrixRep::type_A(int n) {
    MatrixRep r;
    r.spec = CartanSpec::type_A(n);
    r.name = "A" + std::to_string(n) + " standard";
    r.dim = n + 1;
    for (int i = 1; i <= n; ++i) {
        r.e.push_back(E(n + 1, i, i + 1));
        r.f.push_back(E(n + 1, i + 1, i));
    }
    r.rho = descending_rho(n + 1);
    return r;
}

MatrixRep MatrixRep::B2() {
    MatrixRep r;
    r.spec = CartanSpec::B2();
    r.name = "B2 symplectic 4-dim";
    r.dim = 4;
    r.e = {E(4, 1, 2) + E(4, 3, 4), E(4, 2, 3)};
    r.f = {E(4, 2, 1) + E(4, 4, 3), E(4, 3, 2)};
    r.rho = descending_rho(4);
    return r;
}

MatrixRep MatrixRep::B2_swapped() {
    MatrixRep r = B2();
    std::swap(r.e[0], r.e[1]);
    std::swap(r.f[0], r.f[1]);
    r.name = "B2 symplectic 4-dim, roots swapped";
    return r;
}

MatrixRep MatrixRep::G2() {
    MatrixRep r;
    r.spec = CartanSpec::G2();
    r.name = "G2 7-dim";
    r.dim = 7;
    const Rational two(2);
    r.e = {E(7, 1, 2) + two * E(7, 3, 4) + E(7, 4, 5) + E(7, 6, 7), E(7, 2, 3) + E(7, 5, 6)};
    r.f = {E(7, 2, 1) + E(7, 4, 3) + two * E(7, 5, 4) + E(7, 7, 6), E(7, 3, 2) + E(7, 6, 5)};
    r.rho = descending_rho(7);
    return r;
}

const Matrix<Rational>& MatrixRep::raising(int i) const {
    spec.check_index(i);
    return e[static_cast<std::size_t>(i - 1)];
}

const Matrix<Rational>& MatrixRep::lowering(int i) const {
    spec.check_index(i);
    return f[static_cast<std::size_t>(i - 1)];
}

Matrix<Rational> sdot(const MatrixRep& rep, int i) {
    const Rational one(1), minus_one(-1);
    return x_elem(rep, i, one) * y_elem(rep, i, minus_one) * x_elem(rep, i, one);
}

Matrix<Rational> sdot_inverse(const MatrixRep& rep, int i) {
    const Rational one(1), minus_one(-1);
    return x_elem(rep, i, minus_one) * y_elem(rep, i, one) * x_elem(rep, i, minus_one);
}

Matrix<Rational> weyl_rep(const MatrixRep& rep, const Word& w) {
    Matrix<Rational> g = Matrix<Rational>::identity(static_cast<std::size_t>(rep.dim));
    for (int i : w) g = g * sdot(rep, i);
    return g;
}

}  // namespace mirror
