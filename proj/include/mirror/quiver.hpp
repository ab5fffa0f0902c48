#pragma once

#include "mirror/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mirror {

// Staircase quiver for SL(n+1)/B. Vertex v_ij sits in row i, column j (1 <= j <= i <= n+1).
// c_ij : v_{i+1,j} -> v_ij (1 <= j <= i <= n), d_ij : v_ij -> v_{i,j-1} (2 <= j <= i <= n+1).
struct QuiverVertex {
    int i = 0, j = 0;
    bool diagonal() const { return i == j; }
    int depth() const { return i - j; }
};

struct QuiverArrow {
    enum Kind { C, D } kind = C;
    int i = 0, j = 0;
    std::size_t head = 0, tail = 0;  // vertex indices
    std::string name() const { return (kind == C ? "c" : "d") + std::to_string(i) + std::to_string(j); }
};

// sigma[d_top] * sigma[c_right] = sigma[c_left] * sigma[d_bottom]
struct QuiverBox {
    std::size_t d_top, c_right, c_left, d_bottom;
};

class Quiver {
public:
    explicit Quiver(int n);

    int rank() const { return n_; }
    const std::vector<QuiverVertex>& vertices() const { return vertices_; }
    const std::vector<QuiverArrow>& arrows() const { return arrows_; }
    const std::vector<QuiverBox>& boxes() const { return boxes_; }
    std::vector<std::size_t> lower_vertices() const;  // V_-, in row-major order
    std::size_t vertex(int i, int j) const;
    std::size_t c(int i, int j) const;
    std::size_t d(int i, int j) const;

private:
    int n_;
    std::vector<QuiverVertex> vertices_;
    std::vector<QuiverArrow> arrows_;
    std::vector<QuiverBox> boxes_;
    std::vector<std::size_t> vindex_, cindex_, dindex_;
};

Quiver build_quiver(int n);

// Arrow values sigma_a = t_head / t_tail.
template <class T>
std::vector<T> point_from_vertices(const Quiver& Q, const std::vector<T>& t) {
    std::vector<T> s;
    for (const auto& a : Q.arrows()) s.push_back(t[a.head] / t[a.tail]);
    return s;
}

// Vertex values with diagonal fixed by the fiber: t_ii = prod_{k >= i} q_k, t_{n+1,n+1} = 1.
template <class T>
std::vector<T> diagonal_from_q(int n, const std::vector<T>& q) {
    std::vector<T> d(static_cast<std::size_t>(n + 1), T(1));
    for (int i = n; i >= 1; --i) d[static_cast<std::size_t>(i - 1)] = d[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i - 1)];
    return d;
}

template <class T>
std::vector<T> q_tilde(const Quiver& Q, const std::vector<T>& sigma) {
    std::vector<T> q;
    for (int i = 1; i <= Q.rank(); ++i) q.push_back(sigma[Q.c(i, i)] * sigma[Q.d(i + 1, i + 1)]);
    return q;
}

template <class T>
bool box_relations_hold(const Quiver& Q, const std::vector<T>& sigma, double tol = 0.0) {
    for (const auto& b : Q.boxes()) {
        const T diff = sigma[b.d_top] * sigma[b.c_right] - sigma[b.c_left] * sigma[b.d_bottom];
        if (ScalarTraits<T>::exact ? !is_zero(diff) : magnitude(diff) > tol) return false;
    }
    return true;
}

template <class T>
T phase(const std::vector<T>& sigma) {
    T s(0);
    for (const auto& x : sigma) s += x;
    return s;
}

// (lambda_{k+1} - lambda_k) for depth k; lambda may be empty (non-equivariant).
template <class T>
T depth_shift(const std::vector<T>& lambda, int k) {
    if (lambda.empty()) return T(0);
    return T(lambda[static_cast<std::size_t>(k)] - lambda[static_cast<std::size_t>(k - 1)]);
}

// Per v in V_- (order of lower_vertices): inflow - outflow + (lambda_{k+1} - lambda_k).
template <class T>
std::vector<T> critical_residual(const Quiver& Q, const std::vector<T>& sigma, const std::vector<T>& lambda) {
    std::vector<T> out;
    for (std::size_t v : Q.lower_vertices()) {
        T r = depth_shift(lambda, Q.vertices()[v].depth());
        for (std::size_t a = 0; a < Q.arrows().size(); ++a) {
            if (Q.arrows()[a].head == v) r += sigma[a];
            if (Q.arrows()[a].tail == v) r -= sigma[a];
        }
        out.push_back(r);
    }
    return out;
}

template <class T>
struct ArrowWeights {
    std::vector<T> arrow;                 // weight per arrow, satisfying the vertex contract
    std::vector<T> net;                   // per vertex: sum over heads minus sum over tails
    std::vector<std::optional<T>> closed_form;  // explicit formula where its indices are defined
    std::vector<std::optional<T>> shifted;  // bottom-row closed form with indices shifted by one
};

template <class T>
ArrowWeights<T> equivariant_weights(const Quiver& Q, const std::vector<T>& lambda) {
    const int n = Q.rank();
    if (lambda.size() != static_cast<std::size_t>(n + 1)) throw ConfigError("lambda needs n+1 entries");
    auto lam = [&](int i) { return lambda[static_cast<std::size_t>(i - 1)]; };
    auto partial = [&](int m) {
        T s(0);
        for (int k = 1; k <= m; ++k) s += lam(k);
        return s;
    };
    const T half = T(1) / T(2);
    ArrowWeights<T> w;
    const std::size_t na = Q.arrows().size();
    w.arrow.assign(na, T(0));
    w.closed_form.assign(na, std::nullopt);
    w.shifted.assign(na, std::nullopt);
    for (std::size_t a = 0; a < na; ++a) {
        const auto& ar = Q.arrows()[a];
        if (ar.kind == QuiverArrow::C) {
            w.arrow[a] = ar.j == 1 ? T(lam(ar.i) + half * partial(ar.i - 1)) : T(half * lam(ar.i - ar.j + 1));
            w.closed_form[a] = w.arrow[a];
        } else if (ar.i < n + 1) {
            w.arrow[a] = T(-(half * lam(ar.i - ar.j + 1)));
            w.closed_form[a] = w.arrow[a];
        } else {
            if (n + 1 - ar.j >= 1) w.closed_form[a] = T(-lam(n + 1 - ar.j) - half * partial(n - ar.j));
            w.shifted[a] = T(-lam(n + 2 - ar.j) - half * partial(n + 1 - ar.j));
        }
    }
    // bottom row: solve the contract at v_{n+1,j} for d_{n+1,j+1}, sweeping left to right
    for (int j = 1; j <= n; ++j) {
        T val = depth_shift(lambda, n + 1 - j) + w.arrow[Q.c(n, j)];
        if (j >= 2) val += w.arrow[Q.d(n + 1, j)];
        w.arrow[Q.d(n + 1, j + 1)] = val;
    }
    w.net.assign(Q.vertices().size(), T(0));
    for (std::size_t a = 0; a < na; ++a) {
        w.net[Q.arrows()[a].head] += w.arrow[a];
        w.net[Q.arrows()[a].tail] -= w.arrow[a];
    }
    for (std::size_t v : Q.lower_vertices()) {
        if (!(w.net[v] == depth_shift(lambda, Q.vertices()[v].depth())) && ScalarTraits<T>::exact)
            throw InvariantViolation("weight contract fails at a lower vertex");
    }
    return w;
}

// Logarithmic chart: T per vertex with sum of diagonal entries 0.
// Value F~(exp differences) + sum_a lambda_a (T_head - T_tail), the correction taken as sum_v T_v net(v).
template <class T, class ExpFn>
T phase_equivariant(const Quiver& Q, const std::vector<T>& logs, const std::vector<T>& lambda, ExpFn expf) {
    T s(0);
    for (const auto& a : Q.arrows()) s += expf(logs[a.head] - logs[a.tail]);
    if (!lambda.empty()) {
        const ArrowWeights<T> w = equivariant_weights(Q, lambda);
        for (std::size_t v = 0; v < Q.vertices().size(); ++v) s += logs[v] * w.net[v];
    }
    return s;
}

// Sum of logs at depth k (S_k); S_0 and S_{n+1} are taken as 0.
template <class T>
std::vector<T> depth_sums(const Quiver& Q, const std::vector<T>& logs) {
    std::vector<T> S(static_cast<std::size_t>(Q.rank() + 2), T(0));
    for (std::size_t v = 0; v < Q.vertices().size(); ++v) {
        const int k = Q.vertices()[v].depth();
        if (k >= 1) S[static_cast<std::size_t>(k)] += logs[v];
    }
    return S;
}

// diag(S_{k-1} - S_k), k = 1..n+1.
template <class T>
Matrix<T> gamma_R(const Quiver& Q, const std::vector<T>& logs) {
    const std::vector<T> S = depth_sums(Q, logs);
    std::vector<T> d;
    for (int k = 1; k <= Q.rank() + 1; ++k) d.push_back(S[static_cast<std::size_t>(k - 1)] - S[static_cast<std::size_t>(k)]);
    return Matrix<T>::diagonal(d);
}

}  // namespace mirror
