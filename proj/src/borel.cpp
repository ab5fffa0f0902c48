#include "mirror/borel.hpp"

#include <map>
#include <mutex>

namespace mirror {

Parabolic Parabolic::make(int n, std::vector<int> fixed) {
    if (n < 1) throw ConfigError("rank must be at least 1");
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
    for (int i : fixed)
        if (i < 1 || i > n) throw ConfigError("parabolic index " + std::to_string(i) + " out of range");
    return Parabolic{n, fixed};
}

std::vector<int> Parabolic::free_indices() const {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if (!is_fixed(i)) out.push_back(i);
    return out;
}

Word Parabolic::longest_word() const {
    Word w;
    std::size_t k = 0;
    while (k < fixed.size()) {
        std::size_t e = k;
        while (e + 1 < fixed.size() && fixed[e + 1] == fixed[e] + 1) ++e;
        const int lo = fixed[k], hi = fixed[e];
        for (int start = lo; start <= hi; ++start)
            for (int j = hi; j >= start; --j) w.push_back(j);
        k = e + 1;
    }
    return w;
}

Parabolic Parabolic::opposite() const {
    std::vector<int> q;
    for (int i : fixed) q.push_back(n + 1 - i);
    return make(n, q);
}

std::string Parabolic::label() const {
    std::string s = "A" + std::to_string(n) + " I_P={";
    for (std::size_t k = 0; k < fixed.size(); ++k) s += (k ? "," : "") + std::to_string(fixed[k]);
    return s + "}";
}

namespace {
struct ParabolicCache {
    std::mutex mu;
    std::map<std::pair<int, std::vector<int>>, std::pair<Matrix<Rational>, Matrix<Rational>>> reps;

    const std::pair<Matrix<Rational>, Matrix<Rational>>& get(const Parabolic& P) {
        std::lock_guard<std::mutex> lock(mu);
        const auto key = std::make_pair(P.n, P.fixed);
        auto it = reps.find(key);
        if (it == reps.end()) {
            const MatrixRep rep = MatrixRep::type_A(P.n);
            Matrix<Rational> wp = weyl_rep(rep, P.longest_word());
            Matrix<Rational> wb = wp * longest_rep_inverse(P.n);
            it = reps.emplace(key, std::make_pair(wp, wb)).first;
        }
        return it->second;
    }
};

ParabolicCache& pcache() {
    static ParabolicCache c;
    return c;
}
}  // namespace

const Matrix<Rational>& parabolic_longest_rep(const Parabolic& P) { return pcache().get(P).first; }
const Matrix<Rational>& wbar_rep(const Parabolic& P) { return pcache().get(P).second; }

std::vector<std::size_t> monomial_rows(const Matrix<Rational>& m) {
    std::vector<std::size_t> rows(m.cols(), 0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t hits = 0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (!is_zero(m(r, c))) {
                rows[c] = r;
                ++hits;
            }
        if (hits != 1) throw InvariantViolation("Weyl representative is not monomial");
    }
    return rows;
}

}  // namespace mirror
