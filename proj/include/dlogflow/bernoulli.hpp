#ifndef DLOGFLOW_BERNOULLI_HPP
#define DLOGFLOW_BERNOULLI_HPP

#include <vector>

#include "rational.hpp"
#include "ratpoly.hpp"

namespace dlogflow {

/// Truncated power series in a single variable x, coefficients of x^0..x^(size-1).
template <class C>
using UniSeries = std::vector<C>;

template <class C>
UniSeries<C> uni_mul(const UniSeries<C>& a, const UniSeries<C>& b, std::size_t len)
{
    UniSeries<C> r(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// num / den for a denominator with invertible rational constant term.
template <class C>
UniSeries<C> uni_div(const UniSeries<C>& num, const UniSeries<Rational>& den, std::size_t len)
{
    if (den.empty() || is_zero(den[0])) throw domain_error("uni_div: denominator constant term is zero");
    const Rational inv = 1 / den[0];
    UniSeries<C> q(len);
    for (std::size_t n = 0; n < len; ++n) {
        C acc = n < num.size() ? num[n] : C();
        for (std::size_t k = 1; k <= n && k < den.size(); ++k) acc -= q[n - k] * den[k];
        q[n] = acc * inv;
    }
    return q;
}

/// exp(g) for g with zero constant term, via n e_n = sum_k k g_k e_{n-k}.
template <class C>
UniSeries<C> uni_exp(const UniSeries<C>& g, std::size_t len)
{
    if (!g.empty() && !is_zero(g[0])) throw domain_error("uni_exp: nonzero constant term");
    UniSeries<C> e(len);
    if (len == 0) return e;
    e[0] = C(1);
    for (std::size_t n = 1; n < len; ++n) {
        C acc{};
        for (std::size_t k = 1; k <= n && k < g.size(); ++k) acc += g[k] * e[n - k] * Rational(static_cast<unsigned long>(k));
        e[n] = acc * Rational(1, static_cast<unsigned long>(n));
    }
    return e;
}

/// ln(1 + x) to x^(len-1).
inline UniSeries<Rational> log_one_plus_x(std::size_t len)
{
    UniSeries<Rational> r(len);
    for (std::size_t n = 1; n < len; ++n) r[n] = Rational((n % 2) ? 1 : -1, static_cast<unsigned long>(n));
    return r;
}

/// (e^x - 1)/x = sum x^k/(k+1)!
inline UniSeries<Rational> expm1_over_x(std::size_t len)
{
    UniSeries<Rational> r(len);
    for (std::size_t k = 0; k < len; ++k) r[k] = 1 / factorial(static_cast<unsigned>(k + 1));
    return r;
}

/// b_0..b_{count-1} from x/(e^x - 1) = sum b_n x^n/n!, by exact series division.
inline std::vector<Rational> bernoulli_numbers(std::size_t count)
{
    auto q = uni_div(UniSeries<Rational>{Rational(1)}, expm1_over_x(count), count);
    for (std::size_t n = 0; n < count; ++n) q[n] *= factorial(static_cast<unsigned>(n));
    return q;
}

inline Rational bernoulli_number(unsigned n) { return bernoulli_numbers(2 * n + 2)[n]; }

/// B_n(t) from x e^{tx}/(e^x - 1) = sum B_n(t) x^n/n!, dividing e^{tx} by (e^x - 1)/x.
inline RatPoly bernoulli_polynomial(unsigned n)
{
    const std::size_t len = 2 * n + 2;
    UniSeries<RatPoly> etx(len);
    for (std::size_t k = 0; k < len; ++k)
        etx[k] = RatPoly::monomial(k, 1 / factorial(static_cast<unsigned>(k)));
    auto q = uni_div(etx, expm1_over_x(len), len);
    return q[n] * factorial(n);
}

} // namespace dlogflow

#endif
