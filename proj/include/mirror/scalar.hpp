#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirror {

using Rational = mpq_class;
using Complex = std::complex<double>;

// Forward-mode dual number with up to Cap derivative directions, stored inline.
// Nesting Dual<Dual<T>> yields second derivatives.
inline constexpr std::size_t kDualCapacity = 8;

template <class T>
struct Dual {
    T v{0};
    std::array<T, kDualCapacity> d{};
    std::size_t n = 0;  // active directions; entries past n stay zero

    Dual() = default;
    Dual(int x) : v(x) {}
    Dual(const T& x) : v(x) {}

    static Dual variable(const T& value, std::size_t index, std::size_t width) {
        if (width > kDualCapacity) throw std::length_error("dual width exceeds capacity");
        Dual r(value);
        r.n = width;
        r.d[index] = T(1);
        return r;
    }
    const T& deriv(std::size_t k) const { return d[k]; }
    std::size_t width() const { return n; }
};

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
    Dual<T> r(a.v + b.v);
    r.n = std::max(a.n, b.n);
    for (std::size_t k = 0; k < r.n; ++k) r.d[k] = a.d[k] + b.d[k];
    return r;
}
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
    Dual<T> r(a.v - b.v);
    r.n = std::max(a.n, b.n);
    for (std::size_t k = 0; k < r.n; ++k) r.d[k] = a.d[k] - b.d[k];
    return r;
}
template <class T>
Dual<T> operator-(const Dual<T>& a) {
    Dual<T> r(-a.v);
    r.n = a.n;
    for (std::size_t k = 0; k < a.n; ++k) r.d[k] = -a.d[k];
    return r;
}
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    Dual<T> r(a.v * b.v);
    r.n = std::max(a.n, b.n);
    for (std::size_t k = 0; k < r.n; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
    return r;
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T inv = T(1) / b.v;
    Dual<T> r(a.v * inv);
    r.n = std::max(a.n, b.n);
    for (std::size_t k = 0; k < r.n; ++k) r.d[k] = (a.d[k] - r.v * b.d[k]) * inv;
    return r;
}
template <class T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { return a = a + b; }
template <class T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { return a = a - b; }
template <class T>
Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { return a = a * b; }
template <class T>
Dual<T>& operator/=(Dual<T>& a, const Dual<T>& b) { return a = a / b; }
template <class T>
bool operator==(const Dual<T>& a, const Dual<T>& b) {
    if (!(a.v == b.v)) return false;
    for (std::size_t k = 0; k < std::max(a.n, b.n); ++k)
        if (!(a.d[k] == b.d[k])) return false;
    return true;
}

// exp and log lift through the dual structure.
template <class T>
Dual<T> exp(const Dual<T>& a) {
    using std::exp;
    Dual<T> r(exp(a.v));
    r.n = a.n;
    for (std::size_t k = 0; k < a.n; ++k) r.d[k] = r.v * a.d[k];
    return r;
}
template <class T>
Dual<T> log(const Dual<T>& a) {
    using std::log;
    Dual<T> r(log(a.v));
    r.n = a.n;
    for (std::size_t k = 0; k < a.n; ++k) r.d[k] = a.d[k] / a.v;
    return r;
}

// Prime field element; the modulus is a thread-local setting.
struct ModP {
    static thread_local std::int64_t modulus;
    std::int64_t v = 0;

    ModP() = default;
    ModP(int x) : v(norm(x)) {}
    static ModP raw(std::int64_t x) {
        ModP r;
        r.v = norm(x);
        return r;
    }
    static std::int64_t norm(std::int64_t x) {
        std::int64_t p = modulus;
        x %= p;
        return x < 0 ? x + p : x;
    }
    ModP inverse() const;
};

class ModulusScope {
public:
    explicit ModulusScope(std::int64_t p) : saved_(ModP::modulus) { ModP::modulus = p; }
    ~ModulusScope() { ModP::modulus = saved_; }
    ModulusScope(const ModulusScope&) = delete;
    ModulusScope& operator=(const ModulusScope&) = delete;

private:
    std::int64_t saved_;
};

inline ModP operator+(ModP a, ModP b) { return ModP::raw(a.v + b.v); }
inline ModP operator-(ModP a, ModP b) { return ModP::raw(a.v - b.v); }
inline ModP operator-(ModP a) { return ModP::raw(-a.v); }
inline ModP operator*(ModP a, ModP b) { return ModP::raw(a.v * b.v); }
inline ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
inline ModP& operator+=(ModP& a, ModP b) { return a = a + b; }
inline ModP& operator-=(ModP& a, ModP b) { return a = a - b; }
inline ModP& operator*=(ModP& a, ModP b) { return a = a * b; }
inline ModP& operator/=(ModP& a, ModP b) { return a = a / b; }
inline bool operator==(ModP a, ModP b) { return a.v == b.v; }

// ---- scalar traits -------------------------------------------------------

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
    static Rational from_rational(const Rational& x) { return x; }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
    static double magnitude(const Complex& x) { return std::abs(x); }
    static Complex from_rational(const Rational& x) { return Complex(x.get_d(), 0.0); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static bool is_zero(double x) { return x == 0.0; }
    static double magnitude(double x) { return std::fabs(x); }
    static double from_rational(const Rational& x) { return x.get_d(); }
};

template <>
struct ScalarTraits<ModP> {
    static constexpr bool exact = true;
    static bool is_zero(const ModP& x) { return x.v == 0; }
    static double magnitude(const ModP& x) { return x.v == 0 ? 0.0 : 1.0; }
    static ModP from_rational(const Rational& x);
};

template <class T>
struct ScalarTraits<Dual<T>> {
    static constexpr bool exact = ScalarTraits<T>::exact;
    // Structural zero tests look at the value part only.
    static bool is_zero(const Dual<T>& x) { return ScalarTraits<T>::is_zero(x.v); }
    static double magnitude(const Dual<T>& x) { return ScalarTraits<T>::magnitude(x.v); }
    static Dual<T> from_rational(const Rational& x) { return Dual<T>(ScalarTraits<T>::from_rational(x)); }
};

template <class T>
bool is_zero(const T& x) { return ScalarTraits<T>::is_zero(x); }
template <class T>
double magnitude(const T& x) { return ScalarTraits<T>::magnitude(x); }
template <class T>
T from_rational(const Rational& x) { return ScalarTraits<T>::from_rational(x); }

// Value part of a possibly nested dual.
inline const Complex& base_value(const Complex& x) { return x; }
inline const Rational& base_value(const Rational& x) { return x; }
inline const double& base_value(const double& x) { return x; }
template <class T>
auto base_value(const Dual<T>& x) -> decltype(base_value(x.v)) { return base_value(x.v); }

class SingularInput : public std::runtime_error {
public:
    explicit SingularInput(const std::string& what) : std::runtime_error("singular input: " + what) {}
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an internal invariant fails; maps to exit code 3.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

std::string to_string(const Rational& x);
std::string to_string(const Complex& x);
// Shortest round-trip decimal, always with a fractional part ("-2.0").
std::string format_real(double x);
Rational parse_rational(const std::string& s);
Complex parse_complex(const std::string& s);

}  // namespace mirror
