#pragma once

#include "mirror/chevalley.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace mirror {

// Coordinates on a Deodhar stratum: one slot per skipped position (nonzero torus
// coordinate) and one per J- position (free affine coordinate), in position order.
struct StratumChart {
    MatrixRep rep;
    Subexpression sub;
    std::vector<Sign> classes;  // per position of the base word
    std::vector<int> slot_positions;  // 1-based positions carrying a coordinate

    std::size_t slot_count() const { return slot_positions.size(); }
    bool slot_is_torus(std::size_t k) const { return classes[static_cast<std::size_t>(slot_positions[k] - 1)] == Sign::Zero; }
};

StratumChart make_chart(const MatrixRep& rep, const Subexpression& sub);

// Product g_1...g_m with g_l = x(t) on J0, s-dot on J+, y(m) s-dot^{-1} on J-.
template <class T>
Matrix<T> chart_point(const StratumChart& chart, const std::vector<T>& coords) {
    if (coords.size() != chart.slot_count())
        throw ConfigError("chart takes " + std::to_string(chart.slot_count()) + " coordinates, got " + std::to_string(coords.size()));
    const auto& letters = chart.sub.base.letters;
    Matrix<T> g = Matrix<T>::identity(static_cast<std::size_t>(chart.rep.dim));
    std::size_t k = 0;
    for (std::size_t l = 0; l < letters.size(); ++l) {
        const int i = letters[l];
        switch (chart.classes[l]) {
            case Sign::Zero:
                if (is_zero(coords[k])) throw DomainError("torus coordinate at position " + std::to_string(l + 1) + " is zero");
                g = g * x_elem(chart.rep, i, coords[k++]);
                break;
            case Sign::Plus: g = g * lift<T>(sdot(chart.rep, i)); break;
            case Sign::Minus:
                g = g * y_elem(chart.rep, i, coords[k++]) * lift<T>(sdot_inverse(chart.rep, i));
                break;
        }
    }
    return g;
}

// Chart of the positive subexpression of v in i (the open stratum).
StratumChart open_stratum(const MatrixRep& rep, const WeylWord& i, const Word& v);

// Positive rational coordinates, reproducible under seed.
std::vector<Rational> positive_sample(const StratumChart& chart, std::uint64_t seed, std::uint64_t index = 0);

// Canonical representative of g B- : right lower-triangular column operations
// bring g to column echelon form with unit pivots at the topmost nonzero entries.
template <class T>
Matrix<T> coset_normal_form(const Matrix<T>& g) {
    Matrix<T> m = g;
    const std::size_t n = m.rows();
    std::vector<std::size_t> pivot(n, 0);
    for (std::size_t c = n; c-- > 0;) {
        // clear against the columns to the right, top pivot first, so no cleared row is refilled
        std::vector<std::size_t> order;
        for (std::size_t d = c + 1; d < n; ++d) order.push_back(d);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot[a] < pivot[b]; });
        for (std::size_t d : order) {
            const T f = m(pivot[d], c);
            if (is_zero(f)) continue;
            for (std::size_t r = 0; r < n; ++r) m(r, c) -= f * m(r, d);
        }
        std::size_t p = 0;
        while (p < n && is_zero(m(p, c))) ++p;
        if (p == n) throw SingularInput("coset representative is singular");
        pivot[c] = p;
        const T inv = T(1) / m(p, c);
        for (std::size_t r = 0; r < n; ++r) m(r, c) *= inv;
    }
    return m;
}

// Ranks of the top-right (rows 1..i, cols j..n) submatrices; a complete invariant of B- g B-.
template <class T>
std::vector<std::size_t> top_right_ranks(const Matrix<T>& g) {
    const std::size_t n = g.rows();
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.push_back(g.block(0, j, i, n - j).rank());
    return out;
}

// Ranks of the bottom-right (rows i..n, cols j..n) submatrices; a complete invariant of B+ g B-.
template <class T>
std::vector<std::size_t> bottom_right_ranks(const Matrix<T>& g) {
    const std::size_t n = g.rows();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.push_back(g.block(i, j, n - i, n - j).rank());
    return out;
}

// Sum over distinguished subexpressions of (p-1)^{|J0|} p^{|J-|}.
std::uint64_t stratum_count_formula(const WeylWord& i, const Word& v, std::uint64_t p);

// Points of B+ v B- / B- intersected with B- w B- / B- over F_p, by enumeration (type A only).
std::uint64_t cell_intersection_count(const CartanSpec& spec, const Word& v, const Word& w, std::int64_t p);

// Distinct cosets hit by all distinguished charts over F_p (type A only).
std::uint64_t chart_image_count(const WeylWord& i, const Word& v, std::int64_t p);

}  // namespace mirror
