#include "mirror/scalar.hpp"

#include <charconv>
#include <regex>

namespace mirror {

thread_local std::int64_t ModP::modulus = 2147483629;

ModP ModP::inverse() const {
    if (v == 0) throw SingularInput("inverse of zero mod p");
    // extended Euclid
    std::int64_t a = v, m = modulus, x0 = 1, x1 = 0;
    while (m != 0) {
        std::int64_t q = a / m;
        std::int64_t t = a - q * m;
        a = m;
        m = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    return ModP::raw(x0);
}

ModP ScalarTraits<ModP>::from_rational(const Rational& x) {
    mpz_class p(static_cast<long>(ModP::modulus));
    mpz_class num = x.get_num() % p;
    mpz_class den = x.get_den() % p;
    if (den == 0) throw SingularInput("denominator divisible by p");
    return ModP::raw(num.get_si()) / ModP::raw(den.get_si());
}

std::string to_string(const Rational& x) { return x.get_str(); }

namespace {
std::string format_double(double x) {
    if (x == 0.0) return std::signbit(x) ? "-0.0" : "0.0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".ein") == std::string::npos) s += ".0";
    return s;
}
}  // namespace

std::string to_string(const Complex& x) {
    return format_double(x.real()) + (std::signbit(x.imag()) ? "" : "+") + format_double(x.imag()) + "i";
}

std::string format_real(double x) { return format_double(x == 0.0 ? 0.0 : x); }

Rational parse_rational(const std::string& text) {
    static const std::regex frac(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
    static const std::regex dec(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, frac)) {
        mpz_class den(m[2].str());
        if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
        Rational r(mpz_class(m[1].str()), den);
        r.canonicalize();
        return r;
    }
    if (std::regex_match(text, m, dec) && (m[2].length() + m[3].length()) > 0) {
        std::string digits = m[2].str() + m[3].str();
        mpz_class num(digits.empty() ? "0" : digits);
        long exp10 = -static_cast<long>(m[3].length());
        if (m[4].matched) exp10 += std::stol(m[4].str());
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        Rational r = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
        r.canonicalize();
        return m[1].str() == "-" ? Rational(-r) : r;
    }
    throw ConfigError("not a rational number: '" + text + "'");
}

Complex parse_complex(const std::string& text) {
    static const std::regex re_real(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*$)");
    static const std::regex re_imag(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*[ij]\s*$)");
    static const std::regex re_both(
        R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([+-])\s*((?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*[ij]\s*$)");
    static const std::regex re_frac(R"(^\s*[+-]?\d+\s*/\s*\d+\s*$)");
    auto num = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return std::stod(s);
    };
    std::smatch m;
    if (std::regex_match(text, m, re_frac)) return Complex(parse_rational(text).get_d(), 0.0);
    if (std::regex_match(text, m, re_real)) return Complex(std::stod(m[1].str()), 0.0);
    if (std::regex_match(text, m, re_imag)) return Complex(0.0, num(m[1].str()));
    if (std::regex_match(text, m, re_both)) {
        double im = num(m[3].str());
        return Complex(std::stod(m[1].str()), m[2].str() == "-" ? -im : im);
    }
    throw ConfigError("not a complex number: '" + text + "'");
}

}  // namespace mirror
