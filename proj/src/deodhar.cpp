#include "mirror/deodhar.hpp"

#include "mirror/braid.hpp"

#include <map>
#include <set>

namespace mirror {

StratumChart make_chart(const MatrixRep& rep, const Subexpression& sub) {
    if (!(rep.spec == sub.base.spec)) throw ConfigError("chart rep does not match the word's Cartan data");
    if (!is_distinguished(sub)) throw DomainError("subexpression is not distinguished");
    StratumChart c{rep, sub, sub.classes(), {}};
    for (std::size_t l = 0; l < c.classes.size(); ++l)
        if (c.classes[l] != Sign::Plus) c.slot_positions.push_back(static_cast<int>(l + 1));
    return c;
}

StratumChart open_stratum(const MatrixRep& rep, const WeylWord& i, const Word& v) {
    return make_chart(rep, positive_subexpression(v, i));
}

std::vector<Rational> positive_sample(const StratumChart& chart, std::uint64_t seed, std::uint64_t index) {
    if (!chart.sub.jminus.empty()) throw ConfigError("positive sampling needs a chart without J- slots");
    return random_positive_sample(chart.slot_count(), seed, index);
}

namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t k = 0; k < e; ++k) r *= b;
    return r;
}

void require_type_A(const CartanSpec& spec) {
    if (spec.family != Family::A) throw ConfigError("finite-field counts are implemented for type A only");
}

std::vector<std::int64_t> flatten(const Matrix<ModP>& m) {
    std::vector<std::int64_t> k;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) k.push_back(m(i, j).v);
    return k;
}

}  // namespace

std::uint64_t stratum_count_formula(const WeylWord& i, const Word& v, std::uint64_t p) {
    std::uint64_t total = 0;
    for (const auto& s : distinguished_subexpressions(v, i)) total += ipow(p - 1, s.j0.size()) * ipow(p, s.jminus.size());
    return total;
}

std::uint64_t cell_intersection_count(const CartanSpec& spec, const Word& v, const Word& w, std::int64_t p) {
    require_type_A(spec);
    const MatrixRep rep = MatrixRep::type_A(spec.rank);
    const std::size_t n = static_cast<std::size_t>(rep.dim);
    ModulusScope scope(p);
    const Matrix<ModP> vdot = lift<ModP>(weyl_rep(rep, WeylElement::from_word(spec, v).reduced_word()));
    const Matrix<ModP> wdot = lift<ModP>(weyl_rep(rep, WeylElement::from_word(spec, w).reduced_word()));
    const auto target = top_right_ranks(wdot);

    // pi(b) = row of the nonzero entry of column b of v-dot
    std::vector<std::size_t> pos_of_row(n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t r = 0; r < n; ++r)
            if (!is_zero(vdot(r, b))) pos_of_row[r] = b;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c)
            if (pos_of_row[r] < pos_of_row[c]) slots.emplace_back(r, c);

    std::uint64_t count = 0;
    std::vector<std::int64_t> digits(slots.size(), 0);
    const std::uint64_t total = ipow(static_cast<std::uint64_t>(p), slots.size());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        Matrix<ModP> u = Matrix<ModP>::identity(n);
        for (const auto& [r, c] : slots) {
            u(r, c) = ModP::raw(static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(p)));
            rest /= static_cast<std::uint64_t>(p);
        }
        if (top_right_ranks(Matrix<ModP>(u * vdot)) == target) ++count;
    }
    return count;
}

std::uint64_t chart_image_count(const WeylWord& i, const Word& v, std::int64_t p) {
    require_type_A(i.spec);
    const MatrixRep rep = MatrixRep::type_A(i.spec.rank);
    ModulusScope scope(p);
    std::set<std::vector<std::int64_t>> seen;
    for (const auto& sub : distinguished_subexpressions(v, i)) {
        const StratumChart chart = make_chart(rep, sub);
        const std::size_t m = chart.slot_count();
        std::vector<std::int64_t> radix(m);
        std::uint64_t total = 1;
        for (std::size_t k = 0; k < m; ++k) {
            radix[k] = chart.slot_is_torus(k) ? p - 1 : p;
            total *= static_cast<std::uint64_t>(radix[k]);
        }
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t rest = idx;
            std::vector<ModP> coords(m);
            for (std::size_t k = 0; k < m; ++k) {
                std::int64_t d = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(radix[k]));
                rest /= static_cast<std::uint64_t>(radix[k]);
                coords[k] = ModP::raw(chart.slot_is_torus(k) ? d + 1 : d);
            }
            seen.insert(flatten(coset_normal_form(chart_point(chart, coords))));
        }
    }
    return seen.size();
}

}  // namespace mirror
