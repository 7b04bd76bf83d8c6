#ifndef DLOGFLOW_SERIES_HPP
#define DLOGFLOW_SERIES_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "ratpoly.hpp"

namespace dlogflow {

/// Exponent vector of a monomial z_1^e_1 ... z_n^e_n.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

/// Truncated power series in n variables: every stored term has total degree <= trunc
/// and a nonzero coefficient. C is Rational, RatPoly or RatPoly2.
template <class C>
class Series {
public:
    using coeff_type = C;
    using term_map = std::map<Monomial, C>;

    Series(unsigned nvars, unsigned trunc) : nvars_(nvars), trunc_(trunc)
    {
        if (nvars == 0) throw dimension_error("Series: nvars must be positive");
    }

    static Series constant(unsigned nvars, unsigned trunc, const C& c)
    {
        Series s(nvars, trunc);
        s.add_term(Monomial(nvars, 0), c);
        return s;
    }
    /// z_i, 0-based index.
    static Series variable(unsigned nvars, unsigned trunc, unsigned i)
    {
        if (i >= nvars) throw dimension_error("Series::variable: index out of range");
        Series s(nvars, trunc);
        Monomial m(nvars, 0);
        m[i] = 1;
        s.add_term(m, C(1));
        return s;
    }

    unsigned nvars() const { return nvars_; }
    unsigned trunc() const { return trunc_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Accumulates c into the coefficient of m; terms beyond trunc are dropped.
    void add_term(const Monomial& m, const C& c)
    {
        if (m.size() != nvars_) throw dimension_error("Series::add_term: exponent length mismatch");
        if (total_degree(m) > trunc_ || dlogflow::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (dlogflow::is_zero(it->second)) terms_.erase(it);
        }
    }

    C coeff(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? C() : it->second;
    }

    /// Lowest total degree present; max int for the zero series.
    int order() const
    {
        int best = std::numeric_limits<int>::max();
        for (const auto& [m, c] : terms_) best = std::min(best, static_cast<int>(total_degree(m)));
        return best;
    }

    Series truncated(unsigned m) const
    {
        if (m > trunc_) throw dimension_error("Series::truncated: cannot raise truncation order");
        Series r(nvars_, m);
        for (const auto& [mono, c] : terms_)
            if (total_degree(mono) <= m) r.terms_.emplace(mono, c);
        return r;
    }

    Series homogeneous_part(unsigned d) const
    {
        Series r(nvars_, trunc_);
        for (const auto& [mono, c] : terms_)
            if (total_degree(mono) == d) r.terms_.emplace(mono, c);
        return r;
    }

    template <class F>
    auto map_coeffs(F&& f) const -> Series<std::decay_t<decltype(f(std::declval<const C&>()))>>
    {
        Series<std::decay_t<decltype(f(std::declval<const C&>()))>> r(nvars_, trunc_);
        for (const auto& [mono, c] : terms_) r.add_term(mono, f(c));
        return r;
    }

    Series& operator+=(const Series& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Series& operator-=(const Series& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Series& operator*=(const Rational& k)
    {
        if (dlogflow::is_zero(k)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= k;
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(Series a)
    {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Series operator*(Series a, const Rational& k) { return a *= k; }
    friend Series operator*(const Rational& k, Series a) { return a *= k; }

    friend Series operator*(const Series& a, const Series& b)
    {
        a.check_compatible(b);
        Series r(a.nvars_, a.trunc_);
        if (a.is_zero() || b.is_zero()) return r;
        std::vector<std::pair<const Monomial*, unsigned>> bd;
        bd.reserve(b.terms_.size());
        for (const auto& [m, c] : b.terms_) bd.emplace_back(&m, total_degree(m));
        Monomial prod(a.nvars_);
        for (const auto& [ma, ca] : a.terms_) {
            const unsigned da = total_degree(ma);
            if (da > a.trunc_) continue;
            std::size_t j = 0;
            for (const auto& [mb, cb] : b.terms_) {
                const unsigned db = bd[j++].second;
                if (da + db > a.trunc_) continue;
                for (unsigned i = 0; i < a.nvars_; ++i) prod[i] = ma[i] + mb[i];
                r.add_term(prod, ca * cb);
            }
        }
        return r;
    }

    /// Multiplication by a coefficient-ring element.
    Series scaled(const C& k) const
    {
        Series r(nvars_, trunc_);
        for (const auto& [m, c] : terms_) r.add_term(m, c * k);
        return r;
    }

    /// d/dz_i, 0-based index.
    Series partial(unsigned i) const
    {
        if (i >= nvars_) throw dimension_error("Series::partial: variable index out of range");
        Series r(nvars_, trunc_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Monomial d = m;
            --d[i];
            r.add_term(d, c * Rational(m[i]));
        }
        return r;
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        return a.nvars_ == b.nvars_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }

    void check_compatible(const Series& o) const
    {
        if (nvars_ != o.nvars_ || trunc_ != o.trunc_)
            throw dimension_error("Series: mismatched nvars/trunc (" + std::to_string(nvars_) + "," +
                                  std::to_string(trunc_) + ") vs (" + std::to_string(o.nvars_) + "," +
                                  std::to_string(o.trunc_) + ")");
    }

private:
    unsigned nvars_;
    unsigned trunc_;
    term_map terms_;
};

template <class C>
std::ostream& operator<<(std::ostream& os, const Series<C>& s)
{
    if (s.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [m, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) os << "*z" << (i + 1) << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
    }
    return os;
}

/// n-tuple of Series sharing nvars = n and the truncation order.
template <class C>
class SeriesVector {
public:
    using coeff_type = C;

    explicit SeriesVector(std::vector<Series<C>> components) : components_(std::move(components))
    {
        if (components_.empty()) throw dimension_error("SeriesVector: empty");
        for (const auto& s : components_) {
            if (s.nvars() != components_.size())
                throw dimension_error("SeriesVector: nvars must equal the number of components");
            if (s.trunc() != components_.front().trunc())
                throw dimension_error("SeriesVector: components disagree on truncation order");
        }
    }

    static SeriesVector zero(unsigned n, unsigned trunc)
    {
        return SeriesVector(std::vector<Series<C>>(n, Series<C>(n, trunc)));
    }
    /// The identity map z = (z_1, ..., z_n).
    static SeriesVector identity(unsigned n, unsigned trunc)
    {
        std::vector<Series<C>> v;
        for (unsigned i = 0; i < n; ++i) v.push_back(Series<C>::variable(n, trunc, i));
        return SeriesVector(std::move(v));
    }

    unsigned size() const { return static_cast<unsigned>(components_.size()); }
    unsigned nvars() const { return size(); }
    unsigned trunc() const { return components_.front().trunc(); }
    const Series<C>& operator[](std::size_t i) const { return components_.at(i); }
    Series<C>& operator[](std::size_t i) { return components_.at(i); }
    const std::vector<Series<C>>& components() const { return components_; }

    bool is_zero() const
    {
        return std::all_of(components_.begin(), components_.end(), [](const auto& s) { return s.is_zero(); });
    }
    int order() const
    {
        int best = std::numeric_limits<int>::max();
        for (const auto& s : components_) best = std::min(best, s.order());
        return best;
    }

    SeriesVector truncated(unsigned m) const
    {
        return transform([m](const Series<C>& s) { return s.truncated(m); });
    }
    SeriesVector homogeneous_part(unsigned d) const
    {
        return transform([d](const Series<C>& s) { return s.homogeneous_part(d); });
    }
    template <class F>
    auto map_coeffs(F&& f) const
    {
        using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
        std::vector<Series<D>> v;
        for (const auto& s : components_) v.push_back(s.map_coeffs(f));
        return SeriesVector<D>(std::move(v));
    }
    template <class F>
    SeriesVector transform(F&& f) const
    {
        std::vector<Series<C>> v;
        v.reserve(components_.size());
        for (const auto& s : components_) v.push_back(f(s));
        return SeriesVector(std::move(v));
    }

    SeriesVector& operator+=(const SeriesVector& o)
    {
        check_compatible(o);
        for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
        return *this;
    }
    SeriesVector& operator-=(const SeriesVector& o)
    {
        check_compatible(o);
        for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= o.components_[i];
        return *this;
    }
    SeriesVector& operator*=(const Rational& k)
    {
        for (auto& s : components_) s *= k;
        return *this;
    }
    friend SeriesVector operator+(SeriesVector a, const SeriesVector& b) { return a += b; }
    friend SeriesVector operator-(SeriesVector a, const SeriesVector& b) { return a -= b; }
    friend SeriesVector operator*(SeriesVector a, const Rational& k) { return a *= k; }
    friend SeriesVector operator*(const Rational& k, SeriesVector a) { return a *= k; }
    SeriesVector scaled(const C& k) const
    {
        return transform([&k](const Series<C>& s) { return s.scaled(k); });
    }
    friend bool operator==(const SeriesVector& a, const SeriesVector& b) { return a.components_ == b.components_; }

    void check_compatible(const SeriesVector& o) const
    {
        if (size() != o.size() || trunc() != o.trunc())
            throw dimension_error("SeriesVector: mismatched length/trunc");
    }

private:
    std::vector<Series<C>> components_;
};

template <class C>
std::ostream& operator<<(std::ostream& os, const SeriesVector<C>& v)
{
    os << "(";
    for (unsigned i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os << ")";
}

/// Same terms at another truncation order; terms beyond a lower order are dropped.
template <class C>
Series<C> with_trunc(const Series<C>& s, unsigned trunc)
{
    Series<C> r(s.nvars(), trunc);
    for (const auto& [m, c] : s.terms()) r.add_term(m, c);
    return r;
}
template <class C>
SeriesVector<C> with_trunc(const SeriesVector<C>& v, unsigned trunc)
{
    std::vector<Series<C>> comps;
    for (const auto& s : v.components()) comps.push_back(with_trunc(s, trunc));
    return SeriesVector<C>(std::move(comps));
}

/// Embeds a rational series into a richer coefficient ring.
template <class D>
Series<D> lift(const Series<Rational>& s)
{
    return s.map_coeffs([](const Rational& c) { return D(c); });
}
template <class D>
SeriesVector<D> lift(const SeriesVector<Rational>& v)
{
    return v.map_coeffs([](const Rational& c) { return D(c); });
}

/// g(F_1, ..., F_n), truncated at F's order. Every F_i must have zero constant term.
template <class C>
Series<C> compose(const Series<C>& g, const SeriesVector<C>& F)
{
    if (g.nvars() != F.size()) throw dimension_error("compose: g.nvars must equal the length of F");
    const Monomial origin(F.nvars(), 0);
    for (const auto& s : F.components())
        if (!dlogflow::is_zero(s.coeff(origin)))
            throw domain_error("compose: inner map has a nonzero constant term");
    const unsigned n = F.size();
    const unsigned N = F.trunc();
    std::vector<std::vector<Series<C>>> powers(n);
    for (unsigned i = 0; i < n; ++i) powers[i].push_back(Series<C>::constant(n, N, C(1)));
    auto power = [&](unsigned i, unsigned e) -> const Series<C>& {
        while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * F[i]);
        return powers[i][e];
    };
    Series<C> result(n, N);
    for (const auto& [m, c] : g.terms()) {
        if (total_degree(m) > N) continue;
        Series<C> term = Series<C>::constant(n, N, c);
        for (unsigned i = 0; i < n && !term.is_zero(); ++i)
            if (m[i]) term = term * power(i, m[i]);
        result += term;
    }
    return result;
}

template <class C>
SeriesVector<C> compose(const SeriesVector<C>& G, const SeriesVector<C>& F)
{
    return G.transform([&F](const Series<C>& g) { return compose(g, F); });
}

/// The derivation A = sum_i a_i d/dz_i.
template <class C>
class Derivation {
public:
    explicit Derivation(SeriesVector<C> coeffs) : coeffs_(std::move(coeffs)) {}

    const SeriesVector<C>& coeffs() const { return coeffs_; }

    Series<C> apply(const Series<C>& q) const
    {
        if (q.nvars() != coeffs_.size() || q.trunc() != coeffs_.trunc())
            throw dimension_error("Derivation::apply: dimension mismatch");
        Series<C> r(q.nvars(), q.trunc());
        for (unsigned i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            auto d = q.partial(i);
            if (!d.is_zero()) r += coeffs_[i] * d;
        }
        return r;
    }
    SeriesVector<C> apply(const SeriesVector<C>& q) const
    {
        return q.transform([this](const Series<C>& s) { return apply(s); });
    }

private:
    SeriesVector<C> coeffs_;
};

namespace detail {

template <class C>
void require_order_two(const Derivation<C>& A)
{
    if (A.coeffs().order() < 2)
        throw domain_error("exp_derivation: vector field must involve only monomials of degree >= 2");
}

/// A^k Q / k! for k = 0, 1, ... until the term vanishes under truncation.
template <class C, class Q>
std::vector<Q> exp_terms(const Derivation<C>& A, const Q& start)
{
    require_order_two(A);
    std::vector<Q> terms{start};
    for (unsigned k = 1;; ++k) {
        Q next = A.apply(terms.back());
        next *= Rational(1, k);
        if (next.is_zero()) break;
        terms.push_back(std::move(next));
    }
    return terms;
}

} // namespace detail

/// exp(tau A) applied to Q, exact; stops once A^k Q vanishes at the truncation order.
template <class C>
SeriesVector<C> exp_derivation(const Derivation<C>& A, const Rational& tau, const SeriesVector<C>& Q)
{
    auto terms = detail::exp_terms(A, Q);
    SeriesVector<C> r = SeriesVector<C>::zero(Q.size(), Q.trunc());
    Rational tk = 1;
    for (const auto& term : terms) {
        if (!is_zero(tk)) r += term * tk;
        tk *= tau;
    }
    return r;
}

template <class C>
Series<C> exp_derivation(const Derivation<C>& A, const Rational& tau, const Series<C>& q)
{
    auto terms = detail::exp_terms(A, q);
    Series<C> r(q.nvars(), q.trunc());
    Rational tk = 1;
    for (const auto& term : terms) {
        if (!is_zero(tk)) r += term * tk;
        tk *= tau;
    }
    return r;
}

/// exp(t A) applied to Q with t an indeterminate; coefficients land in Q[t].
inline SeriesVector<RatPoly> exp_derivation_symbolic(const Derivation<Rational>& A, const SeriesVector<Rational>& Q)
{
    auto terms = detail::exp_terms(A, Q);
    auto r = SeriesVector<RatPoly>::zero(Q.size(), Q.trunc());
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const RatPoly tk = RatPoly::monomial(k, 1);
        r += lift<RatPoly>(terms[k]).scaled(tk);
    }
    return r;
}

/// Substitutes t = tau in every coefficient.
inline SeriesVector<Rational> evaluate_at(const SeriesVector<RatPoly>& v, const Rational& tau)
{
    return v.map_coeffs([&tau](const RatPoly& p) { return p(tau); });
}

} // namespace dlogflow

#endif
