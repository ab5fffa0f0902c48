#include "mirror/weyl.hpp"

#include "mirror/scalar.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

namespace mirror {

CartanSpec CartanSpec::type_A(int n) {
    if (n < 1) throw DomainError("type A rank must be >= 1");
    CartanSpec s;
    s.family = Family::A;
    s.rank = n;
    s.cartan.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        s.cartan[i][i] = 2;
        if (i + 1 < n) s.cartan[i][i + 1] = s.cartan[i + 1][i] = -1;
    }
    return s;
}

CartanSpec CartanSpec::B2() {
    CartanSpec s;
    s.family = Family::B2;
    s.rank = 2;
    s.cartan = {{2, -2}, {-1, 2}};
    return s;
}

CartanSpec CartanSpec::G2() {
    CartanSpec s;
    s.family = Family::G2;
    s.rank = 2;
    s.cartan = {{2, -3}, {-1, 2}};
    return s;
}

int CartanSpec::bond_order(int i, int j) const {
    check_index(i);
    check_index(j);
    if (i == j) return 1;
    switch (entry(i, j) * entry(j, i)) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: throw InvariantViolation("unsupported Cartan product");
    }
}

std::string CartanSpec::label() const {
    switch (family) {
        case Family::A: return "A" + std::to_string(rank);
        case Family::B2: return "B2";
        case Family::G2: return "G2";
    }
    return "?";
}

std::uint64_t CartanSpec::group_order() const {
    switch (family) {
        case Family::B2: return 8;
        case Family::G2: return 12;
        case Family::A: {
            std::uint64_t f = 1;
            for (int k = 2; k <= rank + 1; ++k) {
                if (f > UINT64_MAX / static_cast<std::uint64_t>(k)) return UINT64_MAX;
                f *= static_cast<std::uint64_t>(k);
            }
            return f;
        }
    }
    return 0;
}

void CartanSpec::check_index(int i) const {
    if (i < 1 || i > rank) throw ConfigError("simple index " + std::to_string(i) + " out of range for " + label());
}

bool operator==(const CartanSpec& a, const CartanSpec& b) {
    return a.family == b.family && a.rank == b.rank && a.cartan == b.cartan;
}

// ---- WeylElement -----------------------------------------------------------

WeylElement::WeylElement(const CartanSpec& spec)
    : spec_(std::make_shared<const CartanSpec>(spec)), r_(spec.rank), m_(static_cast<std::size_t>(r_ * r_), 0) {
    for (int i = 0; i < r_; ++i) m_[static_cast<std::size_t>(i * r_ + i)] = 1;
}

WeylElement WeylElement::from_word(const CartanSpec& spec, const Word& w) {
    WeylElement e(spec);
    for (int i : w) e = e.times_simple(i);
    return e;
}

WeylElement WeylElement::times_simple(int i) const {
    spec_->check_index(i);
    WeylElement r = *this;
    const int c = i - 1;
    for (int j = 0; j < r_; ++j) {
        int a = spec_->cartan[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
        if (a == 0 || j == c) continue;
        for (int row = 0; row < r_; ++row) r.m_[static_cast<std::size_t>(row * r_ + j)] -= a * m_[static_cast<std::size_t>(row * r_ + c)];
    }
    for (int row = 0; row < r_; ++row) r.m_[static_cast<std::size_t>(row * r_ + c)] = -m_[static_cast<std::size_t>(row * r_ + c)];
    return r;
}

WeylElement WeylElement::simple_times(int i) const {
    spec_->check_index(i);
    WeylElement r = *this;
    const int c = i - 1;
    for (int col = 0; col < r_; ++col) {
        int pairing = 0;
        for (int j = 0; j < r_; ++j)
            pairing += spec_->cartan[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] * m_[static_cast<std::size_t>(j * r_ + col)];
        r.m_[static_cast<std::size_t>(c * r_ + col)] -= pairing;
    }
    return r;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
    WeylElement r = *this;
    for (int i : o.reduced_word()) r = r.times_simple(i);
    return r;
}

WeylElement WeylElement::inverse() const {
    Word w = reduced_word();
    std::reverse(w.begin(), w.end());
    return from_word(*spec_, w);
}

std::vector<int> WeylElement::apply(const std::vector<int>& root) const {
    std::vector<int> out(static_cast<std::size_t>(r_), 0);
    for (int row = 0; row < r_; ++row)
        for (int j = 0; j < r_; ++j) out[static_cast<std::size_t>(row)] += m_[static_cast<std::size_t>(row * r_ + j)] * root[static_cast<std::size_t>(j)];
    return out;
}

bool WeylElement::right_descent(int i) const {
    spec_->check_index(i);
    // w(alpha_i) is a root, so its coefficients share a sign.
    for (int row = 0; row < r_; ++row) {
        int v = m_[static_cast<std::size_t>(row * r_ + i - 1)];
        if (v != 0) return v < 0;
    }
    throw InvariantViolation("zero image of a simple root");
}

bool WeylElement::left_descent(int i) const { return inverse().right_descent(i); }

int WeylElement::length() const {
    WeylElement w = *this;
    int len = 0;
    while (!w.is_identity()) {
        int i = 1;
        while (!w.right_descent(i)) ++i;
        w = w.times_simple(i);
        ++len;
    }
    return len;
}

Word WeylElement::reduced_word() const {
    // peel the smallest right descent until the identity is reached
    Word out;
    WeylElement w = *this;
    std::vector<int> rev;
    while (!w.is_identity()) {
        int i = 1;
        while (!w.right_descent(i)) ++i;
        rev.push_back(i);
        w = w.times_simple(i);
    }
    out.assign(rev.rbegin(), rev.rend());
    return out;
}

bool WeylElement::is_identity() const {
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            if (m_[static_cast<std::size_t>(i * r_ + j)] != (i == j ? 1 : 0)) return false;
    return true;
}

WeylWord WeylWord::make(const CartanSpec& spec, const Word& letters) {
    for (int i : letters) spec.check_index(i);
    WeylWord w{spec, letters, false};
    w.reduced = WeylElement::from_word(spec, letters).length() == static_cast<int>(letters.size());
    return w;
}

Word longest_word(const CartanSpec& spec) {
    if (spec.family == Family::A) {
        // concatenation of (n, ..., k) for k = 1..n
        Word w;
        for (int k = 1; k <= spec.rank; ++k)
            for (int j = spec.rank; j >= k; --j) w.push_back(j);
        return w;
    }
    const int m = spec.family == Family::B2 ? 4 : 6;
    Word w;
    for (int k = 0; k < m; ++k) w.push_back(k % 2 == 0 ? 1 : 2);
    return w;
}

int longest_length(const CartanSpec& spec) { return static_cast<int>(longest_word(spec).size()); }

std::vector<int> permutation_of(int n, const Word& w) {
    std::vector<int> perm(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) perm[static_cast<std::size_t>(k)] = k;
    // w = s_{i1}...s_{im} acting on positions; compose left to right as functions
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        int i = *it;
        for (int& x : perm) {
            if (x == i - 1) x = i;
            else if (x == i) x = i - 1;
        }
    }
    return perm;
}

int inversion_count(const std::vector<int>& perm) {
    int c = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++c;
    return c;
}

std::vector<WeylWord> reduced_words(const CartanSpec& spec, const Word& w, std::uint64_t group_guard) {
    if (spec.group_order() > group_guard)
        throw ResourceError("Weyl group of " + spec.label() + " exceeds the enumeration guard");
    std::map<std::vector<int>, std::vector<Word>> memo;
    std::function<const std::vector<Word>&(const WeylElement&)> words = [&](const WeylElement& e) -> const std::vector<Word>& {
        auto it = memo.find(e.key());
        if (it != memo.end()) return it->second;
        std::vector<Word> out;
        if (e.is_identity()) {
            out.push_back({});
        } else {
            for (int i = 1; i <= spec.rank; ++i) {
                if (!e.right_descent(i)) continue;
                for (Word pre : words(e.times_simple(i))) {
                    pre.push_back(i);
                    out.push_back(std::move(pre));
                }
            }
        }
        std::sort(out.begin(), out.end());
        return memo.emplace(e.key(), std::move(out)).first->second;
    };
    std::vector<WeylWord> result;
    for (const Word& r : words(WeylElement::from_word(spec, w))) result.push_back(WeylWord{spec, r, true});
    return result;
}

bool braid_move_at(const CartanSpec& spec, const Word& w, std::size_t p, Word& out, int& bond) {
    if (p + 1 >= w.size()) return false;
    const int a = w[p], b = w[p + 1];
    if (a == b) return false;
    const int m = spec.bond_order(a, b);
    if (p + static_cast<std::size_t>(m) > w.size()) return false;
    for (int k = 0; k < m; ++k)
        if (w[p + static_cast<std::size_t>(k)] != (k % 2 == 0 ? a : b)) return false;
    out = w;
    for (int k = 0; k < m; ++k) out[p + static_cast<std::size_t>(k)] = (k % 2 == 0 ? b : a);
    bond = m;
    return true;
}

BraidGraph braid_move_graph(const std::vector<WeylWord>& words) {
    BraidGraph g;
    g.vertices = words;
    std::map<Word, std::size_t> index;
    for (std::size_t k = 0; k < words.size(); ++k) index[words[k].letters] = k;
    for (std::size_t k = 0; k < words.size(); ++k) {
        const Word& w = words[k].letters;
        for (std::size_t p = 0; p + 1 < w.size(); ++p) {
            Word out;
            int bond = 0;
            if (!braid_move_at(words[k].spec, w, p, out, bond)) continue;
            auto it = index.find(out);
            if (it == index.end() || it->second <= k) continue;
            g.edges.push_back({k, it->second, p, bond});
        }
    }
    return g;
}

bool BraidGraph::connected() const {
    if (vertices.empty()) return true;
    std::vector<std::vector<std::size_t>> adj(vertices.size());
    for (const auto& e : edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    std::vector<bool> seen(vertices.size(), false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop();
        for (std::size_t u : adj[v])
            if (!seen[u]) {
                seen[u] = true;
                ++count;
                q.push(u);
            }
    }
    return count == vertices.size();
}

// ---- subexpressions --------------------------------------------------------

WeylElement Subexpression::product() const { return WeylElement::from_word(base.spec, letters()); }

Word Subexpression::letters() const {
    Word w;
    for (int p : positions) w.push_back(base.letters[static_cast<std::size_t>(p - 1)]);
    return w;
}

std::vector<Sign> Subexpression::classes() const {
    std::vector<Sign> c(base.letters.size(), Sign::Zero);
    for (int p : jplus) c[static_cast<std::size_t>(p - 1)] = Sign::Plus;
    for (int p : jminus) c[static_cast<std::size_t>(p - 1)] = Sign::Minus;
    return c;
}

Subexpression classify(const WeylWord& base, const std::vector<int>& positions) {
    Subexpression s{base, positions, {}, {}, {}};
    std::set<int> chosen(positions.begin(), positions.end());
    WeylElement cur(base.spec);
    for (int k = 1; k <= static_cast<int>(base.letters.size()); ++k) {
        int i = base.letters[static_cast<std::size_t>(k - 1)];
        if (!chosen.count(k)) {
            s.j0.push_back(k);
            continue;
        }
        (cur.right_descent(i) ? s.jminus : s.jplus).push_back(k);
        cur = cur.times_simple(i);
    }
    return s;
}

namespace {
// Walk the running products; report whether every skipped letter (and, if strict,
// every chosen letter) is an ascent.
bool ascent_condition(const Subexpression& s, bool strict) {
    std::set<int> chosen(s.positions.begin(), s.positions.end());
    WeylElement cur(s.base.spec);
    for (int k = 1; k <= static_cast<int>(s.base.letters.size()); ++k) {
        int i = s.base.letters[static_cast<std::size_t>(k - 1)];
        bool take = chosen.count(k) > 0;
        if ((!take || strict) && cur.right_descent(i)) return false;
        if (take) cur = cur.times_simple(i);
    }
    return true;
}
}  // namespace

bool is_distinguished(const Subexpression& s) { return ascent_condition(s, false); }
bool is_positive(const Subexpression& s) { return ascent_condition(s, true); }

std::vector<Subexpression> distinguished_subexpressions(const Word& v, const WeylWord& i) {
    const WeylElement target = WeylElement::from_word(i.spec, v);
    std::vector<Subexpression> out;
    std::vector<int> chosen;
    std::function<void(std::size_t, const WeylElement&)> rec = [&](std::size_t k, const WeylElement& cur) {
        if (k == i.letters.size()) {
            if (cur == target) out.push_back(classify(i, chosen));
            return;
        }
        int letter = i.letters[k];
        if (cur.right_descent(letter)) {
            chosen.push_back(static_cast<int>(k + 1));
            rec(k + 1, cur.times_simple(letter));
            chosen.pop_back();
            return;
        }
        rec(k + 1, cur);
        chosen.push_back(static_cast<int>(k + 1));
        rec(k + 1, cur.times_simple(letter));
        chosen.pop_back();
    };
    rec(0, WeylElement(i.spec));
    std::sort(out.begin(), out.end(), [](const Subexpression& a, const Subexpression& b) { return a.positions < b.positions; });
    return out;
}

Subexpression positive_subexpression(const Word& v, const WeylWord& i) {
    WeylElement u = WeylElement::from_word(i.spec, v);
    std::vector<int> pos;
    for (int k = static_cast<int>(i.letters.size()); k >= 1; --k) {
        int letter = i.letters[static_cast<std::size_t>(k - 1)];
        if (u.right_descent(letter)) {
            pos.push_back(k);
            u = u.times_simple(letter);
        }
    }
    if (!u.is_identity()) throw DomainError(word_to_string(v) + " is not below " + word_to_string(i.letters) + " in Bruhat order");
    std::reverse(pos.begin(), pos.end());
    return classify(i, pos);
}

bool bruhat_leq(const CartanSpec& spec, const Word& v, const Word& w) {
    const WeylElement target = WeylElement::from_word(spec, v);
    const Word rw = WeylElement::from_word(spec, w).reduced_word();
    std::set<std::vector<int>> reach{WeylElement(spec).key()};
    std::vector<WeylElement> elems{WeylElement(spec)};
    for (int letter : rw) {
        std::vector<WeylElement> next = elems;
        for (const auto& e : elems) {
            WeylElement f = e.times_simple(letter);
            if (reach.insert(f.key()).second) next.push_back(f);
        }
        elems = std::move(next);
    }
    return reach.count(target.key()) > 0;
}

std::string word_to_string(const Word& w) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
    os << ")";
    return os.str();
}

}  // namespace mirror
