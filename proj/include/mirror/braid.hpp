#pragma once

#include "mirror/chevalley.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mirror {

// One factor of a group-identity pattern: x_i(.), y_j(.), s_i, ...
struct PatternFactor {
    enum Kind { X, Y, S } kind;
    int role;  // 0 -> i, 1 -> j
};

using Pattern = std::vector<PatternFactor>;

// "xi xj si yj" -> factors
Pattern parse_pattern(const std::string& text);
std::string pattern_to_string(const Pattern& p);

struct IdentityRow {
    std::string label;
    Pattern lhs, rhs;
    std::size_t arity = 0;       // number of arguments consumed by the lhs
    bool up_to_lower = false;    // rhs^{-1} lhs must lie in U_-
    std::function<std::vector<Rational>(const std::vector<Rational>&)> rhs_args;
};

enum class RepKind { A2, A3, B2, G2 };

struct CoordTransform {
    int id = 0;                  // 0..15
    std::size_t arity = 0;
    int sign = 1;
    int bond_order = 3;
    RepKind rep = RepKind::A2;
    int role_i = 1, role_j = 2;  // simple indices realizing the roles i, j in the rep
    std::vector<IdentityRow> rows;  // rows[0] is the identity defining the coordinate change

    std::string name() const { return "C" + std::to_string(id); }
};

const std::vector<CoordTransform>& transform_catalogue();
const CoordTransform& transform(int id);
MatrixRep rep_for(RepKind kind);

template <class T>
struct TransformEval {
    std::vector<T> out;
    std::vector<std::pair<std::string, T>> intermediates;  // named denominators and auxiliary polynomials
};

// Closed-form coordinate change; throws SingularInput naming a vanishing denominator.
template <class T>
TransformEval<T> evaluate_transform(int id, const std::vector<T>& t);

template <class T>
std::vector<T> apply(const CoordTransform& tr, const std::vector<T>& coords) {
    return evaluate_transform<T>(tr.id, coords).out;
}

// Inverse of C3 via the same formulas on the reversed tuple.
template <class T>
std::vector<T> apply_c3_inverse(const std::vector<T>& coords) {
    std::vector<T> r(coords.rbegin(), coords.rend());
    std::vector<T> out = evaluate_transform<T>(3, r).out;
    return std::vector<T>(out.rbegin(), out.rend());
}

Matrix<Rational> evaluate_pattern(const MatrixRep& rep, const Pattern& p, int role_i, int role_j,
                                  const std::vector<Rational>& args);

// Unit lower triangular and supported on the lower unipotent pattern of the rep.
bool in_lower_unipotent(const MatrixRep& rep, const Matrix<Rational>& m);

bool verify_identity_row(const CoordTransform& tr, const IdentityRow& row, const MatrixRep& rep,
                         const std::vector<Rational>& sample);
// All rows of the transform; configuration errors on rep/pattern mismatch.
bool verify_identity(const CoordTransform& tr, const MatrixRep& rep, const std::vector<Rational>& sample);

struct JacobianResult {
    Rational ratio;  // Jac * (t_1...t_m) / (L^1...L^m)
    int sign = 1;
};

JacobianResult jacobian_check(const CoordTransform& tr, const std::vector<Rational>& sample);

// Positive rational sample suitable for the transform's arity.
std::vector<Rational> random_positive_sample(std::size_t arity, std::uint64_t seed, std::uint64_t index,
                                             int bits = 30);

struct BraidStep {
    CartanSpec spec;
    Word from, to;
    std::vector<int> transforms;  // C-ids realizing the chart transition
};

int transport_sign(const std::vector<BraidStep>& path);

}  // namespace mirror
