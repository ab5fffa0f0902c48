#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirror {

enum class Family { A, B2, G2 };

// Cartan data. Simple indices are 1-based throughout the public API.
// cartan[i][j] = <alpha_j, alpha_i^vee>, so s_i(alpha_j) = alpha_j - cartan[i][j] alpha_i.
// For B2 and G2 index 1 is the short root and index 2 the long root.
struct CartanSpec {
    Family family = Family::A;
    int rank = 1;
    std::vector<std::vector<int>> cartan;

    static CartanSpec type_A(int n);
    static CartanSpec B2();
    static CartanSpec G2();

    int entry(int i, int j) const { return cartan[i - 1][j - 1]; }
    int bond_order(int i, int j) const;
    std::string label() const;
    std::uint64_t group_order() const;
    void check_index(int i) const;
};

bool operator==(const CartanSpec& a, const CartanSpec& b);

using Word = std::vector<int>;

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Group element as its integer action on the root lattice (columns = images of simple roots).
class WeylElement {
public:
    explicit WeylElement(const CartanSpec& spec);
    static WeylElement from_word(const CartanSpec& spec, const Word& w);

    const CartanSpec& spec() const { return *spec_; }
    int rank() const { return r_; }
    WeylElement times_simple(int i) const;   // w s_i
    WeylElement simple_times(int i) const;   // s_i w
    WeylElement operator*(const WeylElement& o) const;
    WeylElement inverse() const;

    std::vector<int> apply(const std::vector<int>& root) const;
    bool right_descent(int i) const;  // l(w s_i) < l(w)
    bool left_descent(int i) const;   // l(s_i w) < l(w)
    int length() const;
    Word reduced_word() const;
    bool is_identity() const;

    const std::vector<int>& key() const { return m_; }
    bool operator==(const WeylElement& o) const { return m_ == o.m_; }
    bool operator!=(const WeylElement& o) const { return m_ != o.m_; }
    bool operator<(const WeylElement& o) const { return m_ < o.m_; }

private:
    std::shared_ptr<const CartanSpec> spec_;
    int r_;
    std::vector<int> m_;  // r x r, row-major
};

struct WeylWord {
    CartanSpec spec;
    Word letters;
    bool reduced = false;

    static WeylWord make(const CartanSpec& spec, const Word& letters);
    WeylElement element() const { return WeylElement::from_word(spec, letters); }
    std::size_t size() const { return letters.size(); }
};

Word longest_word(const CartanSpec& spec);
int longest_length(const CartanSpec& spec);

// Type A permutation model: s_i swaps i and i+1. perm[k] is the image of k (0-based).
std::vector<int> permutation_of(int n, const Word& w);
int inversion_count(const std::vector<int>& perm);

// Complete set of reduced words of the element represented by w, in lexicographic order.
std::vector<WeylWord> reduced_words(const CartanSpec& spec, const Word& w,
                                    std::uint64_t group_guard = 1000000);

struct BraidEdge {
    std::size_t from = 0, to = 0;
    std::size_t position = 0;  // 0-based start of the rewritten span
    int bond_order = 2;
};

struct BraidGraph {
    std::vector<WeylWord> vertices;
    std::vector<BraidEdge> edges;
    bool connected() const;
};

BraidGraph braid_move_graph(const std::vector<WeylWord>& words);

// Apply a braid move at position p (0-based) if the span matches an alternating pattern.
bool braid_move_at(const CartanSpec& spec, const Word& w, std::size_t p, Word& out, int& bond);

enum class Sign { Zero, Plus, Minus };

struct Subexpression {
    WeylWord base;
    std::vector<int> positions;  // 1-based, strictly increasing
    std::vector<int> j0, jplus, jminus;

    WeylElement product() const;
    Word letters() const;
    std::vector<Sign> classes() const;  // per position of base: Zero/Plus/Minus
};

// Classify an arbitrary subset of positions of a reduced word.
Subexpression classify(const WeylWord& base, const std::vector<int>& positions);
bool is_distinguished(const Subexpression& s);
bool is_positive(const Subexpression& s);

std::vector<Subexpression> distinguished_subexpressions(const Word& v, const WeylWord& i);
Subexpression positive_subexpression(const Word& v, const WeylWord& i);

// Bruhat order v <= w via the subword property on a reduced word of w.
bool bruhat_leq(const CartanSpec& spec, const Word& v, const Word& w);

std::string word_to_string(const Word& w);

}  // namespace mirror
