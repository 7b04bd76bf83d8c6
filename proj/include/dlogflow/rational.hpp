#ifndef DLOGFLOW_RATIONAL_HPP
#define DLOGFLOW_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dlogflow {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown when operands disagree on nvars, truncation order or vector length.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation's domain precondition is violated.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown on malformed textual input (tree encodings, rationals, JSON).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Parses "p", "-p" or "p/q". Zero denominators are rejected.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
        throw parse_error("malformed rational '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den);
    if (d == 0) throw parse_error("zero denominator in '" + s + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

/// "p" for integers, otherwise "p/q".
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline Rational power(const Rational& base, unsigned e)
{
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace dlogflow

#endif
