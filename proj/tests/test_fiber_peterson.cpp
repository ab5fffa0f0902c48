#include "mirror/braid.hpp"
#include "mirror/fiber.hpp"
#include "mirror/peterson.hpp"

#include <doctest.h>

using namespace mirror;

namespace {

Matrix<Rational> mat2(Rational a, Rational b, Rational c, Rational d) {
    Matrix<Rational> m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

bool unit_upper(const Matrix<Rational>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, i) != 1) return false;
    return m.is_upper_triangular();
}

std::vector<Parabolic> parabolic_grid() {
    return {Parabolic::borel(1), Parabolic::borel(2), Parabolic::make(2, {2}), Parabolic::make(2, {1}),
            Parabolic::borel(3), Parabolic::make(3, {1, 3}), Parabolic::make(3, {2, 3})};
}

Matrix<Rational> random_fiber_point(const Parabolic& P, std::uint64_t seed, std::uint64_t k, std::vector<Rational>* diag_out = nullptr) {
    const FiberChart fc = FiberChart::make(P, longest_word(CartanSpec::type_A(P.n)));
    const std::vector<Rational> diag = torus_from_q(P, random_positive_sample(P.free_indices().size(), seed, 2 * k, 10));
    if (diag_out) *diag_out = diag;
    return fiber_point(fc, random_positive_sample(fc.dimension(), seed, 2 * k + 1, 10), diag);
}

BorelFactorization<Rational> bare_factors(const Parabolic& P, const Matrix<Rational>& u1) {
    BorelFactorization<Rational> f;
    f.P = P;
    f.u1 = u1;
    f.u2 = Matrix<Rational>::identity(u1.rows());
    f.t = Matrix<Rational>::identity(u1.rows());
    return f;
}

}  // namespace

TEST_CASE("Borel factorization at n = 1") {
    const Parabolic B = Parabolic::borel(1);
    const Rational sc(3), sd(5, 7);
    const auto f = factorize_borel(mat2(sc, 0, 1, sd), B);
    CHECK(f.u1 == x_simple(1, 1, sc));
    CHECK(projectively_equal(f.t, Matrix<Rational>::diagonal({sc * sd, Rational(1)})));
    CHECK(f.u2 == x_simple(1, 1, Rational(-sd)));
    CHECK(f.reconstruct() == mat2(sc, 0, 1, sd));

    for (int n : {1, 2, 3}) {
        const auto g = factorize_borel(longest_rep_inverse(n), Parabolic::borel(n));
        CHECK(g.u1 == Matrix<Rational>::identity(static_cast<std::size_t>(n + 1)));
        CHECK(g.u2 == Matrix<Rational>::identity(static_cast<std::size_t>(n + 1)));
        CHECK(phase_from_factors(g) == 0);
        CHECK_THROWS_AS(factorize_borel(Matrix<Rational>::identity(static_cast<std::size_t>(n + 1)), Parabolic::borel(n)), NotInOpenSet);
    }
}

TEST_CASE("factorizations reconstruct and land in the requested fiber") {
    for (const Parabolic& P : parabolic_grid()) {
        for (std::uint64_t k = 0; k < 10; ++k) {
            std::vector<Rational> diag;
            const Matrix<Rational> b = random_fiber_point(P, 7, k, &diag);
            CHECK(b.is_lower_triangular());
            const auto f = factorize_borel(b, P);
            CHECK(f.reconstruct() == b);
            CHECK(unit_upper(f.u1));
            CHECK(unit_upper(f.u2));
            CHECK(projectively_equal(f.t, Matrix<Rational>::diagonal(diag)));
        }
    }
}

TEST_CASE("phase does not depend on the factorization representative") {
    for (const Parabolic& P : {Parabolic::make(2, {2}), Parabolic::make(3, {1, 3}), Parabolic::make(3, {2, 3})}) {
        const Matrix<Rational> wb = wbar_rep(P);
        const std::size_t N = static_cast<std::size_t>(P.n + 1);
        const std::vector<std::size_t> rows = monomial_rows(wb);
        std::vector<std::size_t> col_of_row(N);
        for (std::size_t c = 0; c < N; ++c) col_of_row[rows[c]] = c;
        for (std::uint64_t k = 0; k < 20; ++k) {
            const auto f = factorize_borel(random_fiber_point(P, 9, k), P);
            // v in U+ ∩ wbar U+ wbar^{-1}
            const auto entries = random_positive_sample(N * N, 11, k, 8);
            Matrix<Rational> v = Matrix<Rational>::identity(N);
            std::size_t free_positions = 0;
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = r + 1; c < N; ++c)
                    if (col_of_row[r] < col_of_row[c]) {
                        v(r, c) = entries[r * N + c];
                        ++free_positions;
                    }
            REQUIRE(free_positions > 0);
            const Matrix<Rational> tw = f.t * wb;
            BorelFactorization<Rational> g = f;
            g.u1 = f.u1 * v;
            g.u2 = f.u2 * (tw.inverse() * v * tw);
            CHECK(unit_upper(g.u2));
            CHECK(g.reconstruct() == f.reconstruct());
            CHECK(phase_from_factors(g) == phase_from_factors(f));
        }
    }
}

TEST_CASE("symmetry map") {
    const Matrix<Rational> b = mat2(2, 0, 1, Rational(1, 2));
    CHECK(phase_FP(b, Parabolic::borel(1)) == Rational(5, 2));
    CHECK(phase_FP(b.inverse(), Parabolic::borel(1)) == Rational(-5, 2));
    for (const Parabolic& P : parabolic_grid()) {
        for (std::uint64_t k = 0; k < 20; ++k) {
            std::vector<Rational> diag;
            const Matrix<Rational> bb = random_fiber_point(P, 13, k, &diag);
            const Matrix<Rational> t = Matrix<Rational>::diagonal(diag);
            const auto img = symmetry_map(P, t, bb);
            CHECK(img.Q == P.opposite());
            CHECK(phase_FP(bb, P) == -phase_FP(img.b, img.Q));
            CHECK(projectively_equal(factorize_borel(img.b, img.Q).t, img.t));
            const auto back = symmetry_map(img.Q, img.t, img.b);
            CHECK(back.Q == P);
            CHECK(back.b == bb);
            CHECK(projectively_equal(back.t, t));
        }
    }
}

TEST_CASE("functional matrix and stabilizer") {
    Matrix<Rational> e(3, 3);
    e(1, 0) = 1;
    e(2, 1) = 1;
    CHECK(f_matrix<Rational>(2, {}) == e);
    const Rational l1(2, 3), l2(-2, 3);
    CHECK(f_matrix<Rational>(1, {l1, l2}) == mat2(-l1, 0, 1, -l2));
    const Matrix<Rational> M = f_matrix<Rational>(1, {});
    const CheckResult yes = stabilizer_check(mat2(1, 0, 1, 1), M, 0.0);
    CHECK(yes.ok);
    CHECK(yes.residual == 0.0);
    const CheckResult no = stabilizer_check(mat2(2, 0, 1, 1), M, 0.0);
    CHECK_FALSE(no.ok);
    CHECK(no.residual > 0.0);
}

TEST_CASE("moment map image and conserved quantities") {
    const Parabolic B1 = Parabolic::borel(1);
    const Matrix<Rational> M1 = f_matrix<Rational>(1, {});
    const Matrix<Rational> A = mu_image(bare_factors(B1, x_simple(1, 1, Rational(1))), M1);
    CHECK(A == mat2(-1, -1, 1, 1));
    CHECK(conserved_quantities(A) == std::vector<Rational>{0, 0});
    const Matrix<Rational> M2 = f_matrix<Rational>(2, {});
    CHECK(mu_image(bare_factors(Parabolic::borel(2), Matrix<Rational>::identity(3)), M2) == M2);
    CHECK(conserved_quantities(M2) == std::vector<Rational>{0, 0, 0});
    CHECK(toda_target(std::vector<Rational>{1, -1}) == std::vector<Rational>{0, -1});
    CHECK(quantum_params(bare_factors(Parabolic::borel(2), Matrix<Rational>::identity(3)), M2) == std::vector<Rational>{0, 0});
}

TEST_CASE("critical locus conditions on constructed points") {
    // u1 = identity and t with nonzero alpha: the q condition fails
    BorelFactorization<Rational> f = bare_factors(Parabolic::borel(2), Matrix<Rational>::identity(3));
    f.t = Matrix<Rational>::diagonal({Rational(6), Rational(3), Rational(1)});
    const CriticalLocusReport r = critical_locus_check(f, f_matrix<Rational>(2, {}), 0.0);
    CHECK_FALSE(r.ok);
    CHECK(r.q_residual > 0.0);
    CHECK(r.upper_residual == 0.0);
}

TEST_CASE("polynomials in M are exact critical points") {
    for (int n : {1, 2, 3}) {
        const std::size_t N = static_cast<std::size_t>(n + 1);
        for (std::uint64_t k = 0; k < 10; ++k) {
            std::vector<Rational> lam = random_positive_sample(N, 17, k, 8);
            Rational s(0);
            for (std::size_t i = 0; i + 1 < N; ++i) s += lam[i];
            lam[N - 1] = -s;
            const Matrix<Rational> M = f_matrix(n, lam);
            const auto a = random_positive_sample(N, 19, k, 8);
            Matrix<Rational> b(N, N), power = Matrix<Rational>::identity(N);
            for (std::size_t j = 0; j < N; ++j) {
                b += a[j] * power;
                power = power * M;
            }
            const auto f = factorize_borel(b, Parabolic::borel(n));
            CHECK(stabilizer_check(b, M, 0.0).ok);
            CHECK(critical_locus_check(f, M, 0.0).ok);
            const Matrix<Rational> mu = mu_image(f, M);
            CHECK(off_pattern_residual(mu) == 0.0);
            CHECK(conserved_quantities(mu) == toda_target(lam));
            // dressing u1 by an element of the stabilizer leaves the invariants alone
            BorelFactorization<Rational> g = f;
            g.u1 = b * f.u1;
            CHECK(conserved_quantities(mu_image(g, M)) == conserved_quantities(mu));
        }
    }
}
