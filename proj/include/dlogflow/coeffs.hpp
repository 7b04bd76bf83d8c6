#ifndef DLOGFLOW_COEFFS_HPP
#define DLOGFLOW_COEFFS_HPP

#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "bernoulli.hpp"
#include "rational.hpp"
#include "ratpoly.hpp"
#include "tree.hpp"
#include "tree_surgery.hpp"

namespace dlogflow {

/// Memoized phi_T (D-Log coefficients) and psi_T(t) (flow polynomials), keyed by
/// canonical encoding. Entries are written once; concurrent readers are safe and
/// racing writers compute identical values.
class CoefficientTables {
public:
    /// phi_T: 1 for the singleton, otherwise
    /// -sum_{k=2}^{v(T)} (1/k!) sum_{e_1 > ... > e_{k-1}} prod_i phi(T_{e,i}).
    const Rational& phi(const RootedTree& t)
    {
        if (auto hit = find(phi_, t)) return *hit;
        Rational value = 1;
        if (!t.is_singleton()) {
            const auto& w = weights(t);
            value = 0;
            for (std::size_t k = 2; k <= t.vertex_count(); ++k) value -= w[k] / factorial(static_cast<unsigned>(k));
        }
        return store(phi_, t, std::move(value));
    }

    /// Forest extension: phi of the single component, 0 for empty or >= 2 components.
    Rational phi(const Forest& f) { return f.size() == 1 ? phi(f.trees().front()) : Rational(0); }

    /// psi_T(t) = sum_{k=1}^{v(T)} t^k/k! * W_k(T), with W_1 = phi_T.
    const RatPoly& psi(const RootedTree& t)
    {
        if (auto hit = find(psi_, t)) return *hit;
        std::vector<Rational> c(t.vertex_count() + 1);
        c[1] = phi(t);
        const auto& w = weights(t);
        for (std::size_t k = 2; k <= t.vertex_count(); ++k) c[k] = w[k] / factorial(static_cast<unsigned>(k));
        return store(psi_, t, RatPoly(std::move(c)));
    }

    /// Product of component polynomials; 1 for the empty forest.
    RatPoly psi(const Forest& f)
    {
        RatPoly r(1);
        for (const auto& t : f.trees()) r *= psi(t);
        return r;
    }

    /// Bottom-up: leaves get t, an inner vertex gets delta_inverse of the product over its children.
    const RatPoly& psi_algorithm(const RootedTree& t)
    {
        if (auto hit = find(psi_alg_, t)) return *hit;
        RatPoly value = RatPoly::t();
        if (!t.is_singleton()) {
            RatPoly product(1);
            for (const auto& c : t.children()) product *= psi_algorithm(c);
            value = delta_inverse(product);
        }
        return store(psi_alg_, t, std::move(value));
    }

    /// W_k(T) for k = 0..v(T): the sum over descending sequences of length k-1 of the
    /// product of phi over the k stripped pieces. Index 0 is unused.
    /// Splitting on the first edge: W_k(T) = sum_e phi(T'_e) W_{k-1}(T_e).
    const std::vector<Rational>& weights(const RootedTree& t)
    {
        if (auto hit = find(weights_, t)) return *hit;
        const std::size_t v = t.vertex_count();
        std::vector<Rational> w(v + 1);
        // Edges with identical (T_e, T'_e) contribute identically.
        std::map<std::pair<std::string, std::string>, std::pair<std::pair<RootedTree, RootedTree>, unsigned>> pieces;
        const TreeWithIds ids(t);
        for (int e : ids.edges()) {
            auto parts = detach(ids, e);
            auto key = std::make_pair(parts.first.encoding(), parts.second.encoding());
            auto [it, inserted] = pieces.try_emplace(key, std::move(parts), 0u);
            ++it->second.second;
        }
        for (const auto& [key, entry] : pieces) {
            const auto& [root_part, cut_part] = entry.first;
            const Rational factor = phi(cut_part) * entry.second;
            const auto& sub = weights(root_part);
            w[2] += factor * phi(root_part);
            for (std::size_t k = 3; k <= v && k - 1 <= root_part.vertex_count(); ++k) w[k] += factor * sub[k - 1];
        }
        // W_1 is phi itself; it is filled in lazily by callers that need the full table.
        return store(weights_, t, std::move(w));
    }

private:
    template <class V>
    const V* find(const std::map<std::string, V>& table, const RootedTree& t) const
    {
        std::shared_lock lock(mutex_);
        auto it = table.find(t.encoding());
        return it == table.end() ? nullptr : &it->second;
    }
    template <class V>
    const V& store(std::map<std::string, V>& table, const RootedTree& t, V value)
    {
        std::unique_lock lock(mutex_);
        return table.try_emplace(t.encoding(), std::move(value)).first->second;
    }

    mutable std::shared_mutex mutex_;
    std::map<std::string, Rational> phi_;
    std::map<std::string, RatPoly> psi_;
    std::map<std::string, RatPoly> psi_alg_;
    std::map<std::string, std::vector<Rational>> weights_;
};

/// Process-wide tables shared by the free functions below and the CLI.
inline CoefficientTables& default_tables()
{
    static CoefficientTables tables;
    return tables;
}

inline Rational phi_recurrence(const RootedTree& t) { return default_tables().phi(t); }
inline RatPoly psi_def(const RootedTree& t) { return default_tables().psi(t); }
inline RatPoly psi_algorithm(const RootedTree& t) { return default_tables().psi_algorithm(t); }
inline RatPoly psi_forest(const Forest& f) { return default_tables().psi(f); }
inline Rational phi_forest(const Forest& f) { return default_tables().phi(f); }

/// Interpolates count_strict_maps(T, n) at n = 0..v(T).
inline RatPoly order_polynomial(const RootedTree& t)
{
    std::vector<std::pair<Rational, Rational>> points;
    for (unsigned n = 0; n <= t.vertex_count(); ++n) points.emplace_back(Rational(n), Rational(count_strict_maps(t, n)));
    return interpolate(points);
}

/// The k = 1..v(T) sum of the phi recurrence, evaluated by literal enumeration of
/// descending sequences and strip_sequence. Zero for every tree with v(T) >= 2.
inline Rational r00_sum(const RootedTree& t, CoefficientTables& tables = default_tables())
{
    const TreeWithIds ids(t);
    Rational total = 0;
    for (unsigned k = 1; k <= t.vertex_count(); ++k) {
        Rational inner = 0;
        for (const auto& seq : descending_sequences(ids, k - 1)) {
            Rational prod = 1;
            for (const auto& piece : strip_sequence(ids, seq)) prod *= tables.phi(piece);
            inner += prod;
        }
        total += inner / factorial(k);
    }
    return total;
}

/// Both readings of the leaf-deletion identity for phi:
///   literal:  sum_{r=0}^{l(T)} sum_{|L|=r} phi(T \ L)  =  [d = 1] phi(T \ rt)
///   derived:  sum_{r=1}^{l(T)} sum_{|L|=r} phi(T \ L)  =  [d = 1] phi(T \ rt)
/// where d is the number of children of the root. The derived form is what the
/// two expressions for psi'_T(1) yield once phi_T cancels.
struct LeafIdentityReport {
    Rational lhs_literal;
    Rational lhs_nonempty;
    Rational rhs;
    bool literal_holds = false;
    bool holds = false;
};

inline LeafIdentityReport phi_leaf_identity(const RootedTree& t, CoefficientTables& tables = default_tables())
{
    const TreeWithIds ids(t);
    const auto leaves = ids.leaves();
    LeafIdentityReport rep;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << leaves.size()); ++mask) {
        std::set<int> chosen;
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) chosen.insert(leaves[i]);
        rep.lhs_nonempty += tables.phi(delete_leaves(ids, chosen));
    }
    rep.lhs_literal = tables.phi(t) + rep.lhs_nonempty;
    rep.rhs = t.children().size() == 1 ? tables.phi(delete_root(t)) : Rational(0);
    rep.literal_holds = rep.lhs_literal == rep.rhs;
    rep.holds = rep.lhs_nonempty == rep.rhs;
    return rep;
}

inline bool verify_phi_leaf_identity(const RootedTree& t) { return phi_leaf_identity(t).holds; }

enum class GeneratingFunction { chain, shrub, chain_psi, shrub_psi };

/// Compares tree-coefficient generating functions with their closed forms up to x^order:
///   chain:     sum phi(C_n) x^n        vs ln(1+x)
///   shrub:     sum phi(S_n) x^n/n!     vs x/(e^x - 1)
///   chain_psi: sum psi(C_n)(t) x^n     vs (1+x)^t = exp(t ln(1+x))
///   shrub_psi: sum psi(S_n)(t) x^n/n!  vs (e^{xt} - 1)/(e^x - 1)
inline bool generating_function_check(GeneratingFunction kind, unsigned order,
                                      CoefficientTables& tables = default_tables())
{
    const std::size_t len = order + 1;
    switch (kind) {
    case GeneratingFunction::chain: {
        auto ref = log_one_plus_x(len);
        for (unsigned n = 1; n <= order; ++n)
            if (tables.phi(RootedTree::chain(n)) != ref[n]) return false;
        return true;
    }
    case GeneratingFunction::shrub: {
        auto ref = uni_div(UniSeries<Rational>{Rational(1)}, expm1_over_x(len), len);
        for (unsigned n = 0; n <= order; ++n)
            if (tables.phi(RootedTree::shrub(n)) / factorial(n) != ref[n]) return false;
        return true;
    }
    case GeneratingFunction::chain_psi: {
        auto log = log_one_plus_x(len);
        UniSeries<RatPoly> tlog(len);
        for (std::size_t n = 0; n < len; ++n) tlog[n] = RatPoly::t() * log[n];
        auto ref = uni_exp(tlog, len);
        if (ref[0] != RatPoly(1)) return false;
        for (unsigned n = 1; n <= order; ++n)
            if (tables.psi(RootedTree::chain(n)) != ref[n]) return false;
        return true;
    }
    case GeneratingFunction::shrub_psi: {
        // (e^{xt} - 1)/x divided by (e^x - 1)/x.
        UniSeries<RatPoly> num(len);
        for (std::size_t k = 0; k < len; ++k)
            num[k] = RatPoly::monomial(k + 1, 1 / factorial(static_cast<unsigned>(k + 1)));
        auto ref = uni_div(num, expm1_over_x(len), len);
        for (unsigned n = 0; n <= order; ++n)
            if (tables.psi(RootedTree::shrub(n)) != ref[n] * factorial(n)) return false;
        return true;
    }
    }
    return false;
}

} // namespace dlogflow

#endif
