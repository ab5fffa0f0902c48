#include "mirror/braid.hpp"

#include <random>
#include <set>
#include <sstream>

namespace mirror {

Pattern parse_pattern(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    Pattern p;
    while (in >> tok) {
        if (tok.size() != 2 || (tok[1] != 'i' && tok[1] != 'j')) throw ConfigError("bad pattern token '" + tok + "'");
        PatternFactor f{PatternFactor::X, tok[1] == 'i' ? 0 : 1};
        switch (tok[0]) {
            case 'x': f.kind = PatternFactor::X; break;
            case 'y': f.kind = PatternFactor::Y; break;
            case 's': f.kind = PatternFactor::S; break;
            default: throw ConfigError("bad pattern token '" + tok + "'");
        }
        p.push_back(f);
    }
    return p;
}

std::string pattern_to_string(const Pattern& p) {
    std::string s;
    for (const auto& f : p) {
        if (!s.empty()) s += ' ';
        s += f.kind == PatternFactor::X ? 'x' : f.kind == PatternFactor::Y ? 'y' : 's';
        s += f.role == 0 ? 'i' : 'j';
    }
    return s;
}

// ---- closed forms ----------------------------------------------------------

namespace {

template <class T>
struct Builder {
    TransformEval<T> ev;
    const T& note(const std::string& name, const T& v) {
        ev.intermediates.emplace_back(name, v);
        return ev.intermediates.back().second;
    }
    T div(const T& num, const T& den, const std::string& what) {
        if (is_zero(den)) throw SingularInput("vanishing denominator " + what);
        return num / den;
    }
};

template <class T>
T pw(const T& x, int k) {
    T r(1);
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
}

void need(std::size_t got, std::size_t want, int id) {
    if (got != want)
        throw ConfigError("C" + std::to_string(id) + " takes " + std::to_string(want) + " coordinates, got " + std::to_string(got));
}

}  // namespace

template <class T>
TransformEval<T> evaluate_transform(int id, const std::vector<T>& t) {
    Builder<T> B;
    auto& out = B.ev.out;
    const T two(2), three(3), four(4);
    switch (id) {
        case 0: {
            need(t.size(), 2, id);
            out = {t[1], t[0]};
            break;
        }
        case 1: {
            need(t.size(), 3, id);
            const T &a = t[0], &b = t[1], &c = t[2];
            T s = B.note("a+c", a + c);
            out = {B.div(b * c, s, "a+c"), s, B.div(a * b, s, "a+c")};
            break;
        }
        case 2:
        case 5: {
            need(t.size(), 2, id);
            out = {t[1], t[0] * t[1]};
            break;
        }
        case 3: {
            need(t.size(), 4, id);
            const T &a = t[0], &b = t[1], &c = t[2], &d = t[3];
            T x = B.note("x", a * a * b + d * pw(T(a + c), 2));
            T y = B.note("y", a * b + d * (a + c));
            T ap = B.div(a * b * c, y, "y");
            T bp = B.div(y * y, x, "x");
            T cp = B.div(x, y, "y");
            T dp = B.div(b * c * c * d, x, "x");
            out = {dp, cp, bp, ap};
            break;
        }
        case 4: {
            need(t.size(), 3, id);
            const T &a = t[0], &b = t[1], &c = t[2];
            T s = B.note("a+c", a + c);
            out = {B.div(b * c, s, "a+c"), s, B.div(a * b * b * c, s, "a+c")};
            break;
        }
        case 6: {
            need(t.size(), 3, id);
            const T &a = t[0], &b = t[1], &c = t[2];
            T s = B.note("a+c", a + c);
            out = {B.div(c * c * b, s * s, "(a+c)^2"), s, B.div(a * b * c, s, "a+c")};
            break;
        }
        case 7: {
            need(t.size(), 2, id);
            out = {t[1], t[0] * t[1] * t[1]};
            break;
        }
        case 8: {
            need(t.size(), 6, id);
            const T &a = t[0], &b = t[1], &c = t[2], &d = t[3], &e = t[4], &f = t[5];
            const T ce = c + e, ac = a + c;
            const T k2 = three * a * c + two * c * c + two * c * e + two * a * e;
            const T k3 = three * a * c + three * c * c + three * c * e + two * a * e;
            T p1 = B.note("pi1", a * b * c * c * d + a * b * ce * ce * f + ac * d * e * e * f);
            T p2 = B.note("pi2", a * a * b * b * pw(c, 3) * d + a * a * b * b * pw(ce, 3) * f +
                                     ac * ac * d * d * pw(e, 3) * f + a * b * d * e * e * f * k2);
            T p3 = B.note("pi3", pw(a, 3) * b * b * pw(c, 3) * d + pw(a, 3) * b * b * pw(ce, 3) * f +
                                     pw(ac, 3) * d * d * pw(e, 3) * f + a * a * b * d * e * e * f * k3);
            T p4 = B.note("pi4", a * a * b * b * pw(c, 3) * d *
                                         (a * b * pw(c, 3) * d + two * a * b * pw(ce, 3) * f + k3 * d * e * e * f) +
                                     f * f * pw(T(a * b * ce * ce + ac * d * e * e), 3));
            T ap = B.div(a * b * c * c * d * e, p1, "pi1");
            T bp = B.div(pw(p1, 3), p4, "pi4");
            T cp = B.div(p4, p1 * p2, "pi1*pi2");
            T dp = B.div(pw(p2, 3), p3 * p4, "pi3*pi4");
            T ep = B.div(p3, p2, "pi2");
            T fp = B.div(b * pw(c, 3) * d * d * pw(e, 3) * f, p3, "pi3");
            out = {fp, ep, dp, cp, bp, ap};
            break;
        }
        case 9: {
            need(t.size(), 5, id);
            const T &a = t[0], &b = t[1], &c = t[2], &d = t[3], &e = t[4];
            const T m = c * d + a * b + a * d;
            const T inner = two * b * d * e + d * d * e + b * b * (pw(c, 3) * d + e);
            T x = B.note("x", three * a * c * d * e * m + pw(c, 3) * d * d * e + pw(a, 3) * inner);
            T y = B.note("y", c * d * e * m + a * c * d * (b + d) * e + a * a * inner);
            T z = B.note("z", e * m * (y + a * a * b * b * pw(c, 3) * d) + a * a * b * b * pw(c, 4) * d * d * (e + a * b * c * c));
            T v = B.note("v", a * a * b * b * pw(c, 3) * d + e * m * m);
            out = {B.div(b * pw(c, 3) * d * d * e, x, "x"), B.div(x, y, "y"), B.div(pw(y, 3), x * z, "x*z"),
                   B.div(z, a * b * c * c * d * v, "a*b*c^2*d*v"), B.div(pw(a, 3) * pw(b, 3) * pw(c, 6) * pw(d, 3), z, "z")};
            break;
        }
        case 10: {
            need(t.size(), 5, id);
            const T &a = t[0], &b = t[1], &c = t[2], &d = t[3], &e = t[4];
            const T inner = two * b * d * e + d * d * e + b * b * (c * d + e);
            T xp = B.note("x'", c * d * d * e + a * inner);
            T yp = B.note("y'", c * c * pw(d, 6) * pw(e, 3) + a * a * pw(inner, 3) +
                                    a * c * pw(d, 3) * (b + d) * e * e *
                                        (four * b * d * e + two * d * d * e + b * b * (three * c * d + two * e)));
            T zp = B.note("z'", c * pw(d, 3) * e * e +
                                    a * (three * b * d * d * e * e + pw(d, 3) * e * e + pw(b, 3) * pw(T(c * d + e), 2) +
                                         b * b * d * e * (two * c * d + three * e)));
            out = {B.div(b * c * d * d * e, xp, "x'"), B.div(pw(xp, 3), yp, "y'"), B.div(yp, xp * zp, "x'*z'"),
                   B.div(pw(zp, 3), a * pw(b, 3) * c * c * pw(d, 3) * yp, "a*b^3*c^2*d^3*y'"),
                   B.div(a * pw(b, 3) * c * c * pw(d, 3), zp, "z'")};
            break;
        }
        case 11: {
            need(t.size(), 4, id);
            const T &a = t[0], &b = t[1], &c = t[2], &d = t[3];
            T z1 = B.note("z1", c * d + a * (b + d));
            T z2 = B.note("z2", a * a * b + pw(T(a + c), 2) * d);
            T w = B.note("a*z1^2+c*d*z2", a * z1 * z1 + c * d * z2);
            out = {B.div(b * pw(c, 3) * d * d, w, "a*z1^2+c*d*z2"), B.div(w, z1 * z1, "z1^2"),
                   B.div(pw(z1, 3), w, "a*z1^2+c*d*z2"), B.div(a * b * c * c * d, z1, "z1")};
            break;
        }
        case 12: {
            need(t.size(), 4, id);
            const T &a = t[0], &b = t[1], &c = t[2], &d = t[3];
            T z3 = B.note("z3", a * a * b * b * pw(c, 3) + pw(T(a + c), 2) * d);
            T z4 = B.note("z4", pw(a, 3) * b * b * pw(c, 3) + pw(T(a + c), 3) * d);
            out = {B.div(b * pw(c, 3) * d, z4, "z4"), B.div(z4, z3, "z3"),
                   B.div(pw(z3, 3), pw(a, 3) * pw(b, 3) * pw(c, 6) * z4, "a^3*b^3*c^6*z4"),
                   B.div(a * a * b * b * pw(c, 4), z3, "z3")};
            break;
        }
        case 13: {
            need(t.size(), 3, id);
            const T &a = t[0], &b = t[1], &c = t[2];
            T s = B.note("a+c", a + c);
            out = {B.div(b * pw(c, 3), pw(s, 3), "(a+c)^3"), s, B.div(a * b * c * c, s, "a+c")};
            break;
        }
        case 14: {
            need(t.size(), 3, id);
            const T &a = t[0], &b = t[1], &c = t[2];
            T s = B.note("a^3*b^2+c", pw(a, 3) * b * b + c);
            out = {B.div(b * c, s, "a^3*b^2+c"), B.div(s, a * a * b * b, "a^2*b^2"), B.div(pw(a, 3) * pw(b, 3), s, "a^3*b^2+c")};
            break;
        }
        case 15: {
            need(t.size(), 2, id);
            out = {t[1], t[0] * pw(t[1], 3)};
            break;
        }
        default: throw ConfigError("unknown transform C" + std::to_string(id));
    }
    return B.ev;
}

template TransformEval<Rational> evaluate_transform<Rational>(int, const std::vector<Rational>&);
template TransformEval<Complex> evaluate_transform<Complex>(int, const std::vector<Complex>&);
template TransformEval<double> evaluate_transform<double>(int, const std::vector<double>&);
template TransformEval<Dual<Rational>> evaluate_transform<Dual<Rational>>(int, const std::vector<Dual<Rational>>&);

// ---- catalogue --------------------------------------------------------------

namespace {

using Args = std::vector<Rational>;

std::vector<Rational> outputs(int id, const Args& t) { return evaluate_transform<Rational>(id, t).out; }

IdentityRow row(const std::string& label, const std::string& lhs, const std::string& rhs, std::size_t arity, bool upto,
                std::function<Args(const Args&)> f) {
    return IdentityRow{label, parse_pattern(lhs), parse_pattern(rhs), arity, upto, std::move(f)};
}

std::vector<CoordTransform> build_catalogue() {
    std::vector<CoordTransform> cat;
    auto add = [&](int id, std::size_t arity, int sign, int bond, RepKind rep, int ri, int rj) -> CoordTransform& {
        CoordTransform tr;
        tr.id = id;
        tr.arity = arity;
        tr.sign = sign;
        tr.bond_order = bond;
        tr.rep = rep;
        tr.role_i = ri;
        tr.role_j = rj;
        cat.push_back(tr);
        return cat.back();
    };

    // simply laced
    add(0, 2, -1, 2, RepKind::A3, 1, 3).rows = {
        row("primary", "xi xj", "xj xi", 2, false, [](const Args& t) { return outputs(0, t); })};
    add(1, 3, 1, 3, RepKind::A2, 1, 2).rows = {
        row("primary", "xi xj xi", "xj xi xj", 3, false, [](const Args& t) { return outputs(1, t); })};
    add(2, 2, -1, 3, RepKind::A2, 1, 2).rows = {
        row("primary", "xi xj si", "xj si xj yi", 2, false,
            [](const Args& t) {
                Args o = outputs(2, t);
                o.push_back(-t[0]);
                return o;
            }),
        row("commutation", "xi sj si", "sj si xj", 1, false, [](const Args& t) { return Args{t[0]}; })};

    // B2, i long (index 2), j short (index 1)
    add(3, 4, -1, 4, RepKind::B2, 2, 1).rows = {
        row("primary", "xj xi xj xi", "xi xj xi xj", 4, false, [](const Args& t) { return outputs(3, t); })};
    add(4, 3, 1, 4, RepKind::B2, 2, 1).rows = {
        row("primary", "xi xj xi sj", "xj xi sj xi yj", 3, false,
            [](const Args& t) {
                Args o = outputs(4, t);
                o.push_back(-(t[0] * t[1]) / (t[0] + t[2]));
                return o;
            }),
        row("inverse", "xj xi sj xi", "xi xj xi sj yj", 3, false, [](const Args& t) {
            const Rational &a = t[0], &b = t[1], &c = t[2];
            const Rational s = c + a * a * b;
            return Args{b * c / s, s / (a * b), a * a * b * b / s, c / (a * b)};
        })};
    add(5, 2, -1, 4, RepKind::B2, 2, 1).rows = {
        row("primary", "xj xi sj si", "xi sj si xj", 2, true, [](const Args& t) { return outputs(5, t); }),
        row("inverse", "xi sj si xj", "xj xi sj si", 2, true, [](const Args& t) { return Args{t[1] / t[0], t[0]}; })};
    add(6, 3, 1, 4, RepKind::B2, 2, 1).rows = {
        row("primary", "xj xi xj si", "xi xj si xj yi", 3, false,
            [](const Args& t) {
                const Rational &a = t[0], &b = t[1], &c = t[2];
                Args o = outputs(6, t);
                o.push_back((-a * a * b - 2 * a * b * c) / ((a + c) * (a + c)));
                return o;
            }),
        row("inverse", "xi xj si xj", "xj xi xj si yi", 3, false, [](const Args& t) {
            const Rational &a = t[0], &b = t[1], &c = t[2];
            const Rational s = c + a * b;
            return Args{b * c / s, s * s / (a * b * b), a * b * b / s, (2 * a * b * c + c * c) / (a * b * b)};
        })};
    add(7, 2, -1, 4, RepKind::B2, 2, 1).rows = {
        row("primary", "xi xj si sj", "xj si sj xi", 2, true, [](const Args& t) { return outputs(7, t); }),
        row("inverse", "xj si sj xi", "xi xj si sj", 2, true, [](const Args& t) { return Args{t[1] / (t[0] * t[0]), t[0]}; }),
        row("commutation", "xi sj si sj", "sj si sj xi", 1, false, [](const Args& t) { return Args{t[0]}; }),
        row("commutation", "xj si sj si", "si sj si xj", 1, false, [](const Args& t) { return Args{t[0]}; })};

    // G2: C8-C10 with i the short root (index 1); C11-C15 with i the long root (index 2)
    add(8, 6, -1, 6, RepKind::G2, 1, 2).rows = {
        row("primary", "xi xj xi xj xi xj", "xj xi xj xi xj xi", 6, false, [](const Args& t) { return outputs(8, t); })};
    add(9, 5, 1, 6, RepKind::G2, 1, 2).rows = {
        row("primary", "xi xj xi xj si xj", "xj xi xj xi xj si", 5, true, [](const Args& t) { return outputs(9, t); })};
    add(10, 5, 1, 6, RepKind::G2, 1, 2).rows = {
        row("primary", "xj xi xj xi sj xi", "xi xj xi xj xi sj", 5, true, [](const Args& t) { return outputs(10, t); })};
    add(11, 4, -1, 6, RepKind::G2, 2, 1).rows = {
        row("primary", "xj xi xj xi sj si", "xi xj xi sj si xj", 4, true, [](const Args& t) { return outputs(11, t); })};
    add(12, 4, -1, 6, RepKind::G2, 2, 1).rows = {
        row("primary", "xj xi xj si sj xi", "xi xj xi xj si sj", 4, true, [](const Args& t) { return outputs(12, t); })};
    add(13, 3, 1, 6, RepKind::G2, 2, 1).rows = {
        row("primary", "xj xi xj si sj si", "xi xj si sj si xj", 3, true, [](const Args& t) { return outputs(13, t); })};
    add(14, 3, 1, 6, RepKind::G2, 2, 1).rows = {
        row("primary", "xj xi sj si sj xi", "xi xj xi sj si sj", 3, true, [](const Args& t) { return outputs(14, t); })};
    add(15, 2, -1, 6, RepKind::G2, 2, 1).rows = {
        row("primary", "xi xj si sj si sj", "xj si sj si sj xi", 2, true, [](const Args& t) { return outputs(15, t); }),
        row("companion", "xj xi sj si sj si", "xi sj si sj si xj", 2, true, [](const Args& t) { return Args{t[1], t[0] * t[1]}; }),
        row("commutation", "xi sj si sj si sj", "sj si sj si sj xi", 1, false, [](const Args& t) { return Args{t[0]}; }),
        row("commutation", "si sj si sj si xj", "xj si sj si sj si", 1, false, [](const Args& t) { return Args{t[0]}; })};
    return cat;
}

}  // namespace

const std::vector<CoordTransform>& transform_catalogue() {
    static const std::vector<CoordTransform> cat = build_catalogue();
    return cat;
}

const CoordTransform& transform(int id) {
    const auto& cat = transform_catalogue();
    if (id < 0 || id >= static_cast<int>(cat.size())) throw ConfigError("unknown transform C" + std::to_string(id));
    return cat[static_cast<std::size_t>(id)];
}

MatrixRep rep_for(RepKind kind) {
    switch (kind) {
        case RepKind::A2: return MatrixRep::type_A(2);
        case RepKind::A3: return MatrixRep::type_A(3);
        case RepKind::B2: return MatrixRep::B2();
        case RepKind::G2: return MatrixRep::G2();
    }
    throw ConfigError("unknown rep kind");
}

// ---- verification -----------------------------------------------------------

Matrix<Rational> evaluate_pattern(const MatrixRep& rep, const Pattern& p, int role_i, int role_j, const std::vector<Rational>& args) {
    Matrix<Rational> g = Matrix<Rational>::identity(static_cast<std::size_t>(rep.dim));
    std::size_t k = 0;
    for (const auto& f : p) {
        const int idx = f.role == 0 ? role_i : role_j;
        if (f.kind == PatternFactor::S) {
            g = g * sdot(rep, idx);
            continue;
        }
        if (k >= args.size()) throw ConfigError("pattern consumes more arguments than supplied");
        const Rational& s = args[k++];
        g = g * (f.kind == PatternFactor::X ? x_elem(rep, idx, s) : y_elem(rep, idx, s));
    }
    if (k != args.size()) throw ConfigError("pattern leaves arguments unused");
    return g;
}

bool in_lower_unipotent(const MatrixRep& rep, const Matrix<Rational>& m) {
    if (!m.is_lower_triangular() || !m.has_unit_diagonal()) return false;
    // support of the associative algebra generated by the f_i
    const std::size_t n = static_cast<std::size_t>(rep.dim);
    std::set<std::pair<std::size_t, std::size_t>> support;
    std::vector<Matrix<Rational>> layer(rep.f.begin(), rep.f.end());
    for (int depth = 0; depth < rep.dim && !layer.empty(); ++depth) {
        std::vector<Matrix<Rational>> next;
        for (const auto& a : layer) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!is_zero(a(i, j))) support.insert({i, j});
            for (const auto& f : rep.f) {
                Matrix<Rational> b = a * f;
                if (!b.is_zero_matrix()) next.push_back(b);
            }
        }
        layer = std::move(next);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!is_zero(m(i, j)) && !support.count({i, j})) return false;
    return true;
}

namespace {
void check_rep_matches(const CoordTransform& tr, const MatrixRep& rep) {
    if (tr.role_i == tr.role_j) throw ConfigError(tr.name() + " requires distinct simple indices for i and j");
    rep.spec.check_index(tr.role_i);
    rep.spec.check_index(tr.role_j);
    if (rep.spec.bond_order(tr.role_i, tr.role_j) != tr.bond_order)
        throw ConfigError(tr.name() + " needs bond order " + std::to_string(tr.bond_order) + ", rep " + rep.name + " has " +
                          std::to_string(rep.spec.bond_order(tr.role_i, tr.role_j)));
}
}  // namespace

bool verify_identity_row(const CoordTransform& tr, const IdentityRow& r, const MatrixRep& rep, const std::vector<Rational>& sample) {
    check_rep_matches(tr, rep);
    if (sample.size() < r.arity) throw ConfigError("sample too short for " + tr.name() + " " + r.label);
    std::vector<Rational> lhs_args(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(r.arity));
    Matrix<Rational> lhs = evaluate_pattern(rep, r.lhs, tr.role_i, tr.role_j, lhs_args);
    Matrix<Rational> rhs = evaluate_pattern(rep, r.rhs, tr.role_i, tr.role_j, r.rhs_args(lhs_args));
    if (!r.up_to_lower) return lhs == rhs;
    return in_lower_unipotent(rep, rhs.inverse() * lhs);
}

bool verify_identity(const CoordTransform& tr, const MatrixRep& rep, const std::vector<Rational>& sample) {
    for (const auto& r : tr.rows)
        if (!verify_identity_row(tr, r, rep, sample)) return false;
    return true;
}

JacobianResult jacobian_check(const CoordTransform& tr, const std::vector<Rational>& sample) {
    const std::size_t m = tr.arity;
    if (sample.size() != m) throw ConfigError(tr.name() + " takes " + std::to_string(m) + " coordinates");
    std::vector<Dual<Rational>> vars;
    for (std::size_t k = 0; k < m; ++k) vars.push_back(Dual<Rational>::variable(sample[k], k, m));
    std::vector<Dual<Rational>> L = evaluate_transform<Dual<Rational>>(tr.id, vars).out;
    Matrix<Rational> jac(m, m);
    Rational prod_t(1), prod_l(1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) jac(i, k) = L[i].deriv(k);
        prod_t *= sample[i];
        prod_l *= L[i].v;
    }
    if (sgn(prod_l) == 0) throw SingularInput("transform output vanishes");
    JacobianResult r;
    r.ratio = jac.determinant() * prod_t / prod_l;
    r.sign = sgn(r.ratio) >= 0 ? 1 : -1;
    return r;
}

std::vector<Rational> random_positive_sample(std::size_t arity, std::uint64_t seed, std::uint64_t index, int bits) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 gen(seq);
    const std::uint64_t top = (bits >= 63) ? UINT64_MAX : ((std::uint64_t{1} << bits) - 1);
    std::uniform_int_distribution<std::uint64_t> dist(1, top);
    std::vector<Rational> out;
    for (std::size_t k = 0; k < arity; ++k) {
        mpz_class num, den;
        num = static_cast<unsigned long>(dist(gen));
        den = static_cast<unsigned long>(dist(gen));
        Rational q(num, den);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

int transport_sign(const std::vector<BraidStep>& path) {
    int sign = 1;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const BraidStep& s = path[k];
        if (k > 0 && path[k - 1].to != s.from) throw ConfigError("braid path is not contiguous at step " + std::to_string(k));
        bool one_move = false;
        for (std::size_t p = 0; p + 1 < s.from.size() && !one_move; ++p) {
            Word out;
            int bond = 0;
            if (braid_move_at(s.spec, s.from, p, out, bond) && out == s.to) one_move = true;
        }
        if (!one_move) throw ConfigError("step " + std::to_string(k) + " is not a single braid move");
        if (s.transforms.empty()) throw ConfigError("step " + std::to_string(k) + " has no transform decomposition");
        for (int id : s.transforms) sign *= transform(id).sign;
    }
    return sign;
}

// ---- representation validation ----------------------------------------------

ValidationReport validate_rep(const MatrixRep& rep, std::uint64_t seed) {
    ValidationReport rep_out;
    auto record = [&](const std::string& name, bool ok) {
        rep_out.checks.push_back(name);
        if (!ok) {
            rep_out.ok = false;
            rep_out.failures.push_back(name);
        }
    };
    const int r = rep.spec.rank;
    std::vector<Matrix<Rational>> h;
    for (int i = 1; i <= r; ++i) h.push_back(commutator(rep.raising(i), rep.lowering(i)));
    for (int i = 1; i <= r; ++i) {
        const std::string si = std::to_string(i);
        record("[e" + si + ",f" + si + "] diagonal", h[static_cast<std::size_t>(i - 1)].is_diagonal());
        record("[rho,e" + si + "] = e" + si, commutator(rep.rho, rep.raising(i)) == rep.raising(i));
        for (int j = 1; j <= r; ++j) {
            const std::string sj = std::to_string(j);
            const Rational a(rep.spec.entry(i, j));
            record("[h" + si + ",e" + sj + "] = a" + si + sj + " e" + sj,
                   commutator(h[static_cast<std::size_t>(i - 1)], rep.raising(j)) == a * rep.raising(j));
            if (i == j) continue;
            record("[e" + si + ",f" + sj + "] = 0", commutator(rep.raising(i), rep.lowering(j)).is_zero_matrix());
            const int power = 1 - rep.spec.entry(i, j);
            Matrix<Rational> ue = rep.raising(j), uf = rep.lowering(j);
            for (int k = 0; k < power; ++k) {
                ue = commutator(rep.raising(i), ue);
                uf = commutator(rep.lowering(i), uf);
            }
            record("Serre e" + si + " e" + sj, ue.is_zero_matrix());
            record("Serre f" + si + " f" + sj, uf.is_zero_matrix());
        }
    }
    auto braid_check = [&](int id) {
        const CoordTransform& tr = transform(id);
        bool ok = true;
        try {
            for (std::uint64_t k = 0; k < 10 && ok; ++k)
                ok = verify_identity_row(tr, tr.rows[0], rep, random_positive_sample(tr.arity, seed, k));
        } catch (const ConfigError&) {
            ok = false;
        }
        record("braid identity " + tr.name(), ok);
    };
    if (rep.spec.family == Family::B2) braid_check(3);
    if (rep.spec.family == Family::G2) braid_check(8);
    return rep_out;
}

}  // namespace mirror
