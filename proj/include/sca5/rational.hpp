#pragma once

// Exact arithmetic used everywhere probabilities or weights appear.  Values
// are kept as arbitrary-precision rationals from parsing to serialization;
// doubles exist only at the output-formatting boundary.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sca5 {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    Int acc = 1;
    for (long i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;  // exact at every stage
    }
    return acc;
}

inline Int pow_int(Int base, unsigned exp) {
    Int acc = 1;
    while (exp) {
        if (exp & 1u) acc *= base;
        base *= base;
        exp >>= 1u;
    }
    return acc;
}

inline Rational pow_rational(const Rational& base, int exp) {
    if (exp == 0) return 1;
    if (exp < 0) {
        if (base == 0) throw std::domain_error("pow_rational: zero to a negative power");
        return Rational(pow_int(denominator(base), unsigned(-exp)),
                        pow_int(numerator(base), unsigned(-exp)));
    }
    return Rational(pow_int(numerator(base), unsigned(exp)),
                    pow_int(denominator(base), unsigned(exp)));
}

// Lossless "p/q" rendering used by all reports.
inline std::string rational_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto parse_int = [](std::string_view s) -> Int {
        if (s.empty()) throw std::invalid_argument("rational: empty component");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("rational: sign without digits");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("rational: expected p/q with integer p, q");
        return Int(std::string(s));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const Int num = parse_int(text.substr(0, slash));
    const Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Exact rational noise level in [0, 1]; never silently rounded.
struct NoiseParam {
    Rational alpha;

    explicit NoiseParam(Rational a) : alpha(std::move(a)) {
        if (alpha < 0 || alpha > 1) throw std::invalid_argument("alpha: must lie in [0, 1]");
    }

    static NoiseParam parse(std::string_view text) { return NoiseParam(parse_rational(text)); }

    // Strictly between 0 and 1; required by the closed-form weights.
    bool interior() const { return alpha > 0 && alpha < 1; }
};

// Raised when a request is outside a method's supported assumptions and the
// caller should fall back to another route (e.g. component-level evaluation).
struct unsupported_precondition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an exhaustive enumeration would exceed the configured budget.
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sca5
