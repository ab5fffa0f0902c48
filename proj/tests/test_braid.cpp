#include "oracles.hpp"

#include "mirror/braid.hpp"

#include <doctest.h>

#include <cmath>

using namespace mirror;

namespace {
std::vector<Rational> R(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

// Central differences in double precision; independent of the dual-number path.
double fd_jacobian_ratio(const CoordTransform& tr, const std::vector<Rational>& sample) {
    const std::size_t m = tr.arity;
    std::vector<double> t;
    for (const auto& x : sample) t.push_back(x.get_d());
    Matrix<double> J(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        const double h = 1e-6 * std::max(1.0, std::fabs(t[k]));
        std::vector<double> up = t, dn = t;
        up[k] += h;
        dn[k] -= h;
        const auto fu = mirror::apply(tr, up), fd = mirror::apply(tr, dn);
        for (std::size_t i = 0; i < m; ++i) J(i, k) = (fu[i] - fd[i]) / (2 * h);
    }
    const auto out = mirror::apply(tr, t);
    double ratio = oracle::det_by_permutations(J);
    for (std::size_t i = 0; i < m; ++i) ratio *= t[i] / out[i];
    return ratio;
}
}  // namespace

TEST_CASE("catalogue shape") {
    const auto& cat = transform_catalogue();
    REQUIRE(cat.size() == 16);
    for (std::size_t k = 0; k < cat.size(); ++k) {
        CHECK(cat[k].id == static_cast<int>(k));
        CHECK(cat[k].sign == (oracle::negative_transforms().count(cat[k].id) ? -1 : 1));
    }
}

TEST_CASE("coordinate changes on small inputs") {
    CHECK(mirror::apply(transform(0), R({2, 5})) == R({5, 2}));
    CHECK(mirror::apply(transform(1), R({1, 1, 1})) == std::vector<Rational>{Rational(1, 2), Rational(2), Rational(1, 2)});
    CHECK(mirror::apply(transform(2), R({2, 3})) == R({3, 6}));
}

TEST_CASE("coordinate changes match direct matrix products") {
    const MatrixRep a2 = MatrixRep::type_A(2);
    // x1(1) x2(1) x1(1) = x2(1/2) x1(2) x2(1/2)
    CHECK(x_elem(a2, 1, Rational(1)) * x_elem(a2, 2, Rational(1)) * x_elem(a2, 1, Rational(1)) ==
          x_elem(a2, 2, Rational(1, 2)) * x_elem(a2, 1, Rational(2)) * x_elem(a2, 2, Rational(1, 2)));
    // x1(2) x2(3) s1 = x2(3) s1 x2(6) y1(-2)
    const Matrix<Rational> s1 = sdot(a2, 1);
    CHECK(x_elem(a2, 1, Rational(2)) * x_elem(a2, 2, Rational(3)) * s1 ==
          x_elem(a2, 2, Rational(3)) * s1 * x_elem(a2, 2, Rational(6)) * y_elem(a2, 1, Rational(-2)));
}

TEST_CASE("identities hold exactly") {
    CHECK(verify_identity(transform(1), MatrixRep::type_A(2), R({1, 2, 3})));
    for (std::uint64_t k = 0; k < 5; ++k) CHECK(verify_identity(transform(3), MatrixRep::B2(), random_positive_sample(transform(3).arity, 42, k)));
}

TEST_CASE("identities hold on 50 samples per transform") {
    for (const CoordTransform& tr : transform_catalogue()) {
        const MatrixRep rep = rep_for(tr.rep);
        for (std::uint64_t k = 0; k < 50; ++k)
            CHECK_MESSAGE(verify_identity(tr, rep, random_positive_sample(tr.arity, 7, k, 20)), tr.name() << " sample " << k);
    }
}

TEST_CASE("equal role indices are rejected") {
    CoordTransform tr = transform(1);
    tr.role_j = tr.role_i;
    CHECK_THROWS_AS(verify_identity(tr, MatrixRep::type_A(2), R({1, 2, 3})), ConfigError);
}

TEST_CASE("Jacobian ratios") {
    const JacobianResult c1 = jacobian_check(transform(1), R({1, 1, 1}));
    CHECK(c1.ratio == 1);
    CHECK(c1.sign == 1);
    const JacobianResult c0 = jacobian_check(transform(0), R({2, 5}));
    CHECK(abs(c0.ratio) == 1);
    CHECK(c0.sign == -1);
    const JacobianResult c8 = jacobian_check(transform(8), random_positive_sample(6, 3, 0));
    CHECK(c8.ratio == -1);
}

TEST_CASE("Jacobian ratio is a sample-independent unit with the listed sign") {
    for (const CoordTransform& tr : transform_catalogue()) {
        const int expected = oracle::negative_transforms().count(tr.id) ? -1 : 1;
        for (std::uint64_t k = 0; k < 50; ++k) {
            const auto t = random_positive_sample(tr.arity, 99, k, 16);
            const JacobianResult j = jacobian_check(tr, t);
            CHECK_MESSAGE(j.ratio == expected, tr.name() << " sample " << k);
            if (k < 3) CHECK_MESSAGE(std::fabs(fd_jacobian_ratio(tr, t) - expected) < 1e-4, tr.name());
        }
    }
}

TEST_CASE("C3 inverse round trip") {
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto t = random_positive_sample(transform(3).arity, 5, k);
        CHECK(apply_c3_inverse(mirror::apply(transform(3), t)) == t);
        CHECK(mirror::apply(transform(3), apply_c3_inverse(t)) == t);
    }
}

TEST_CASE("subtraction-free: intermediates stay positive on positive input") {
    for (const CoordTransform& tr : transform_catalogue()) {
        for (std::uint64_t k = 0; k < 20; ++k) {
            const TransformEval<Rational> ev = evaluate_transform<Rational>(tr.id, random_positive_sample(tr.arity, 13, k, 12));
            for (const auto& [name, value] : ev.intermediates) CHECK_MESSAGE(sgn(value) > 0, tr.name() << " " << name);
            for (const auto& value : ev.out) CHECK(sgn(value) > 0);
        }
    }
}

TEST_CASE("vanishing denominators are reported") {
    CHECK_THROWS_AS(mirror::apply(transform(1), R({1, 1, -1})), SingularInput);
}

TEST_CASE("transport sign along braid paths") {
    CHECK(transport_sign({}) == 1);
    const CartanSpec a2 = CartanSpec::type_A(2);
    CHECK(transport_sign({BraidStep{a2, {1, 2, 1}, {2, 1, 2}, {1}}, BraidStep{a2, {2, 1, 2}, {1, 2, 1}, {1}}}) == 1);
    CHECK(transport_sign({BraidStep{CartanSpec::B2(), {1, 2, 1, 2}, {2, 1, 2, 1}, {3}}}) == -1);
    CHECK_THROWS_AS(transport_sign({BraidStep{a2, {1, 2, 1}, {1, 2, 1}, {1}}}), ConfigError);
}
