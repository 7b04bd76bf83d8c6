#ifndef DLOGFLOW_RATPOLY_HPP
#define DLOGFLOW_RATPOLY_HPP

#include <algorithm>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace dlogflow {

/// Dense univariate polynomial in t over Q. Trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
class RatPoly {
public:
    RatPoly() = default;
    RatPoly(const Rational& c) // NOLINT: constants embed implicitly
    {
        if (!dlogflow::is_zero(c)) coeffs_.push_back(c);
    }
    RatPoly(int c) : RatPoly(Rational(c)) {} // NOLINT
    explicit RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static RatPoly t() { return monomial(1, 1); }
    static RatPoly monomial(std::size_t degree, const Rational& c)
    {
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return RatPoly(std::move(v));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

    Rational operator()(const Rational& x) const
    {
        Rational r = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
        return r;
    }

    RatPoly& operator+=(const RatPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    RatPoly& operator-=(const RatPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    RatPoly& operator*=(const RatPoly& o)
    {
        *this = *this * o;
        return *this;
    }
    RatPoly& operator*=(const Rational& c)
    {
        if (dlogflow::is_zero(c)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& x : coeffs_) x *= c;
        return *this;
    }
    RatPoly& operator/=(const Rational& c)
    {
        if (dlogflow::is_zero(c)) throw domain_error("RatPoly division by zero");
        for (auto& x : coeffs_) x /= c;
        return *this;
    }

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator-(RatPoly a)
    {
        for (auto& x : a.coeffs_) x = -x;
        return a;
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(RatPoly a, const Rational& c) { return a *= c; }
    friend RatPoly operator*(const Rational& c, RatPoly a) { return a *= c; }
    friend RatPoly operator/(RatPoly a, const Rational& c) { return a /= c; }
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Formal derivative d/dt.
    RatPoly derivative() const
    {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> r(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) r[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
        return RatPoly(std::move(r));
    }

    /// p(t + c).
    RatPoly shifted(const Rational& c) const
    {
        RatPoly r;
        RatPoly lin(std::vector<Rational>{c, Rational(1)});
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * lin + RatPoly(*it);
        return r;
    }

    /// Ascending "p/q" list.
    std::vector<std::string> to_strings() const
    {
        std::vector<std::string> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(dlogflow::to_string(c));
        return out;
    }

    std::string to_string() const
    {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (dlogflow::is_zero(coeffs_[k])) continue;
            std::string c = dlogflow::to_string(coeffs_[k]);
            if (!s.empty()) {
                if (c[0] == '-') {
                    s += " - ";
                    c.erase(0, 1);
                } else {
                    s += " + ";
                }
            }
            if (k == 0) {
                s += c;
                continue;
            }
            if (c == "-1") c = "-";
            else if (c == "1") c = "";
            else c += "*";
            s += c + (k == 1 ? "t" : "t^" + std::to_string(k));
        }
        return s;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && dlogflow::is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

inline bool is_zero(const RatPoly& p) { return p.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << p.to_string(); }

/// binom(t, k) = t(t-1)...(t-k+1)/k!
inline RatPoly binomial_poly(unsigned k)
{
    RatPoly r(1);
    for (unsigned i = 0; i < k; ++i) r *= RatPoly(std::vector<Rational>{Rational(-static_cast<long>(i)), Rational(1)});
    return r / factorial(k);
}

/// Forward difference g(t+1) - g(t).
inline RatPoly delta(const RatPoly& g) { return g.shifted(1) - g; }

/// The unique g with delta(g) = h and g(0) = 0. Expands h in the binomial basis
/// through its forward differences at t = 0 and lifts binom(t,k) to binom(t,k+1).
inline RatPoly delta_inverse(const RatPoly& h)
{
    if (h.is_zero()) return {};
    const auto d = static_cast<unsigned>(h.degree());
    std::vector<Rational> diffs(d + 1);
    for (unsigned j = 0; j <= d; ++j) diffs[j] = h(Rational(j));
    RatPoly g;
    for (unsigned k = 0; k <= d; ++k) {
        g += binomial_poly(k + 1) * diffs[0];
        for (unsigned j = 0; j + 1 < diffs.size() - k; ++j) diffs[j] = diffs[j + 1] - diffs[j];
    }
    return g;
}

/// Lagrange interpolation through (x_i, y_i); the x_i must be distinct.
inline RatPoly interpolate(std::span<const std::pair<Rational, Rational>> points)
{
    RatPoly result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        RatPoly basis(1);
        Rational denom = 1;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            basis *= RatPoly(std::vector<Rational>{-points[j].first, Rational(1)});
            denom *= points[i].first - points[j].first;
        }
        if (is_zero(denom)) throw domain_error("interpolate: repeated node");
        result += basis * (points[i].second / denom);
    }
    return result;
}

/// Polynomial in two indeterminates t and s over Q, keyed by (deg_t, deg_s).
class RatPoly2 {
public:
    using Key = std::pair<unsigned, unsigned>;

    RatPoly2() = default;
    RatPoly2(const Rational& c) // NOLINT
    {
        if (!dlogflow::is_zero(c)) terms_.emplace(Key{0, 0}, c);
    }
    RatPoly2(int c) : RatPoly2(Rational(c)) {} // NOLINT

    static RatPoly2 in_t(const RatPoly& p)
    {
        RatPoly2 r;
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) r.add(Key{static_cast<unsigned>(k), 0}, p.coeffs()[k]);
        return r;
    }
    static RatPoly2 in_s(const RatPoly& p)
    {
        RatPoly2 r;
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) r.add(Key{0, static_cast<unsigned>(k)}, p.coeffs()[k]);
        return r;
    }
    /// p(t + s).
    static RatPoly2 sum_substitution(const RatPoly& p)
    {
        RatPoly2 r;
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
            if (dlogflow::is_zero(p.coeffs()[k])) continue;
            for (unsigned i = 0; i <= k; ++i)
                r.add(Key{i, static_cast<unsigned>(k) - i}, p.coeffs()[k] * Rational(binomial(k, i)));
        }
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rational>& terms() const { return terms_; }

    void add(const Key& k, const Rational& c)
    {
        if (dlogflow::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (dlogflow::is_zero(it->second)) terms_.erase(it);
        }
    }

    RatPoly2& operator+=(const RatPoly2& o)
    {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    RatPoly2& operator-=(const RatPoly2& o)
    {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    RatPoly2& operator*=(const RatPoly2& o)
    {
        *this = *this * o;
        return *this;
    }
    RatPoly2& operator*=(const Rational& c)
    {
        if (dlogflow::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, x] : terms_) x *= c;
        return *this;
    }

    friend RatPoly2 operator+(RatPoly2 a, const RatPoly2& b) { return a += b; }
    friend RatPoly2 operator-(RatPoly2 a, const RatPoly2& b) { return a -= b; }
    friend RatPoly2 operator-(RatPoly2 a)
    {
        for (auto& [k, x] : a.terms_) x = -x;
        return a;
    }
    friend RatPoly2 operator*(const RatPoly2& a, const RatPoly2& b)
    {
        RatPoly2 r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add(Key{ka.first + kb.first, ka.second + kb.second}, ca * cb);
        return r;
    }
    friend RatPoly2 operator*(RatPoly2 a, const Rational& c) { return a *= c; }
    friend RatPoly2 operator*(const Rational& c, RatPoly2 a) { return a *= c; }
    friend bool operator==(const RatPoly2& a, const RatPoly2& b) { return a.terms_ == b.terms_; }

    std::string to_string() const
    {
        if (is_zero()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + dlogflow::to_string(c) + ")";
            if (k.first) s += "*t^" + std::to_string(k.first);
            if (k.second) s += "*s^" + std::to_string(k.second);
        }
        return s;
    }

private:
    std::map<Key, Rational> terms_;
};

inline bool is_zero(const RatPoly2& p) { return p.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const RatPoly2& p) { return os << p.to_string(); }

} // namespace dlogflow

#endif
