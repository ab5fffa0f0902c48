#include "mirror/compare.hpp"

#include <map>
#include <mutex>

namespace mirror {

namespace {
struct LongestCache {
    std::mutex mu;
    std::map<int, std::pair<Matrix<Rational>, Matrix<Rational>>> reps;

    const std::pair<Matrix<Rational>, Matrix<Rational>>& get(int n) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = reps.find(n);
        if (it == reps.end()) {
            const MatrixRep rep = MatrixRep::type_A(n);
            Matrix<Rational> w = weyl_rep(rep, longest_word(rep.spec));
            it = reps.emplace(n, std::make_pair(w, w.inverse())).first;
        }
        return it->second;
    }
};

LongestCache& cache() {
    static LongestCache c;
    return c;
}
}  // namespace

const Matrix<Rational>& longest_rep(int n) { return cache().get(n).first; }
const Matrix<Rational>& longest_rep_inverse(int n) { return cache().get(n).second; }

}  // namespace mirror
