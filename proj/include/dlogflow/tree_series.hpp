#ifndef DLOGFLOW_TREE_SERIES_HPP
#define DLOGFLOW_TREE_SERIES_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "series.hpp"
#include "tree.hpp"
#include "tree_surgery.hpp"

namespace dlogflow {

/// Evaluates P_T(H) and the operators built from it for one fixed system H.
///
/// P_{T,i} is computed by contracting over the children c_1..c_k of the root:
///   P_{T,i} = sum_{j_1..j_k} (d_{j_1} ... d_{j_k} H_i) * prod_r P_{c_r, j_r},
/// memoized per canonical subtree, so the cost is polynomial in n rather than n^{v(T)}.
class TreeSeriesEvaluator {
public:
    explicit TreeSeriesEvaluator(SeriesVector<Rational> H) : H_(std::move(H)) {}

    const SeriesVector<Rational>& system() const { return H_; }
    unsigned nvars() const { return H_.size(); }
    unsigned trunc() const { return H_.trunc(); }

    const SeriesVector<Rational>& p_tree(const RootedTree& t)
    {
        if (auto it = p_memo_.find(t.encoding()); it != p_memo_.end()) return it->second;
        const unsigned n = nvars();
        auto result = SeriesVector<Rational>::zero(n, trunc());
        if (t.is_singleton()) {
            result = H_;
        } else {
            std::vector<const SeriesVector<Rational>*> kids;
            for (const auto& c : t.children()) kids.push_back(&p_tree(c));
            std::vector<unsigned> counts(n, 0);
            auto rec = [&](auto&& self, std::size_t r, const Series<Rational>& prod) -> void {
                if (r == kids.size()) {
                    for (unsigned i = 0; i < n; ++i) {
                        const auto& d = derivative(i, counts);
                        if (!d.is_zero()) result[i] += d * prod;
                    }
                    return;
                }
                for (unsigned j = 0; j < n; ++j) {
                    const auto& factor = (*kids[r])[j];
                    if (factor.is_zero()) continue;
                    ++counts[j];
                    self(self, r + 1, prod * factor);
                    --counts[j];
                }
            };
            rec(rec, 0, Series<Rational>::constant(n, trunc(), Rational(1)));
        }
        return p_memo_.emplace(t.encoding(), std::move(result)).first->second;
    }

    /// P_T / alpha_T.
    SeriesVector<Rational> p_script(const RootedTree& t) { return p_tree(t) * Rational(1, t.aut_size()); }

    /// D_T q = sum_i P_{T,i} d_i q.
    Series<Rational> d_tree_apply(const RootedTree& t, const Series<Rational>& q)
    {
        return Derivation<Rational>(p_tree(t)).apply(q);
    }
    Series<Rational> d_script_apply(const RootedTree& t, const Series<Rational>& q)
    {
        return d_tree_apply(t, q) * Rational(1, t.aut_size());
    }
    SeriesVector<Rational> d_script_apply(const RootedTree& t, const SeriesVector<Rational>& q)
    {
        return Derivation<Rational>(p_script(t)).apply(q);
    }

    /// d_0^{c_0} ... d_{n-1}^{c_{n-1}} H_i.
    const Series<Rational>& derivative(unsigned i, const std::vector<unsigned>& counts)
    {
        auto key = std::make_pair(i, counts);
        if (auto it = d_memo_.find(key); it != d_memo_.end()) return it->second;
        Series<Rational> d = H_[i];
        for (unsigned j = 0; j < counts.size(); ++j)
            for (unsigned k = 0; k < counts[j] && !d.is_zero(); ++k) d = d.partial(j);
        return d_memo_.emplace(std::move(key), std::move(d)).first->second;
    }

private:
    SeriesVector<Rational> H_;
    std::map<std::string, SeriesVector<Rational>> p_memo_;
    std::map<std::pair<unsigned, std::vector<unsigned>>, Series<Rational>> d_memo_;
};

inline SeriesVector<Rational> p_tree(const RootedTree& t, const SeriesVector<Rational>& H)
{
    return TreeSeriesEvaluator(H).p_tree(t);
}
inline SeriesVector<Rational> p_script(const RootedTree& t, const SeriesVector<Rational>& H)
{
    return TreeSeriesEvaluator(H).p_script(t);
}
inline Series<Rational> d_tree_apply(const RootedTree& t, const SeriesVector<Rational>& H, const Series<Rational>& q)
{
    return TreeSeriesEvaluator(H).d_tree_apply(t, q);
}
inline Series<Rational> d_script_apply(const RootedTree& t, const SeriesVector<Rational>& H, const Series<Rational>& q)
{
    return TreeSeriesEvaluator(H).d_script_apply(t, q);
}

/// Largest v(T) whose P_T(H) can be nonzero at H's truncation order: P_T has order
/// at least (d-1)v(T)+1 when H has order d >= 2. Zero when H vanishes.
inline unsigned contributing_vertex_bound(const SeriesVector<Rational>& H)
{
    if (H.is_zero()) return 0;
    const int d = H.order();
    if (d < 2) throw domain_error("tree sums need a system with only monomials of degree >= 2");
    return (H.trunc() - 1) / static_cast<unsigned>(d - 1);
}

/// H_T: one variable per vertex; H_i is the product of the variables of v_i's
/// children (so 1 at leaves). Vertices are numbered in the preorder of TreeWithIds.
inline SeriesVector<Rational> gadget_system(const RootedTree& t)
{
    const TreeWithIds ids(t);
    const unsigned m = static_cast<unsigned>(ids.vertex_count());
    std::vector<Series<Rational>> comps;
    for (int v = 1; v <= ids.vertex_count(); ++v) {
        Monomial mono(m, 0);
        for (int c : ids.children(v)) mono[c - 1] = 1;
        Series<Rational> s(m, m);
        s.add_term(mono, Rational(1));
        comps.push_back(std::move(s));
    }
    return SeriesVector<Rational>(std::move(comps));
}

/// P_{T'}(H_T): (alpha_T, 0, ..., 0) if T and T' are isomorphic, zero otherwise.
inline SeriesVector<Rational> independence_probe(const RootedTree& t, const RootedTree& t_prime)
{
    if (t.vertex_count() != t_prime.vertex_count())
        throw domain_error("independence_probe: trees must have the same number of vertices");
    return p_tree(t_prime, gadget_system(t));
}

/// Seeded values for the symbols Y_T^{(i)}, numerators in [-9, 9] and denominators
/// in {1, 2, 3}. Values are drawn up front for every tree with at most max_vertices
/// vertices and i = 1..levels, in enumeration order, so they depend only on the seed.
class SymbolValues {
public:
    SymbolValues(std::uint64_t seed, unsigned max_vertices, unsigned levels)
    {
        std::mt19937_64 rng(seed);
        for (const auto& t : enumerate_trees_up_to(max_vertices))
            for (unsigned i = 1; i <= levels; ++i) {
                const long num = static_cast<long>(rng() % 19) - 9;
                const unsigned long den = 1 + rng() % 3;
                values_.emplace(std::make_pair(t.encoding(), i), Rational(num, den));
            }
        for (auto& [key, value] : values_) value.canonicalize();
    }

    const Rational& operator()(const RootedTree& t, unsigned i) const
    {
        auto it = values_.find({t.encoding(), i});
        if (it == values_.end()) throw domain_error("no value drawn for Y_" + t.encoding() + "^(" + std::to_string(i) + ")");
        return it->second;
    }

private:
    std::map<std::pair<std::string, unsigned>, Rational> values_;
};

/// Independently computed sides of an identity between series vectors.
template <class C>
struct Sides {
    SeriesVector<C> lhs;
    SeriesVector<C> rhs;
    bool holds() const { return lhs == rhs; }
};
using IdentitySides = Sides<Rational>;

/// Both sides of the surgery lemma with the Y symbols replaced by seeded rationals:
///   sum_{v(T_1)+..+v(T_r)+v(S)=m} [Y^1_{T_1} D_{T_1}] ... [Y^r_{T_r} D_{T_r}] P_S
///   = sum_{T in T_m} sum_{e_1 > ... > e_r, T_{e,r+1} = S} Y^1_{T_{e,1}} ... Y^r_{T_{e,r}} P_T
/// (D and P normalized by alpha). H must involve only monomials of degree >= 2.
inline IdentitySides key_lemma_sides(unsigned m, unsigned r, const RootedTree& S, const SeriesVector<Rational>& H,
                                     std::uint64_t seed)
{
    if (m == 0 || r == 0) throw domain_error("key lemma: m and r must be positive");
    if (!H.is_zero() && H.order() < 2) throw domain_error("key lemma: H must involve only monomials of degree >= 2");
    const SymbolValues Y(seed, m, r);
    TreeSeriesEvaluator ev(H);
    const unsigned n = H.size();
    const auto zero = SeriesVector<Rational>::zero(n, H.trunc());

    // inner(i, b): the sum over (T_i..T_r) with total b vertices, applied to P_S.
    std::map<std::pair<unsigned, unsigned>, SeriesVector<Rational>> memo;
    auto inner = [&](auto&& self, unsigned i, unsigned budget) -> SeriesVector<Rational> {
        if (i > r) return budget == 0 ? ev.p_script(S) : zero;
        if (budget < r - i + 1) return zero;
        if (auto it = memo.find({i, budget}); it != memo.end()) return it->second;
        auto acc = zero;
        for (const auto& t : enumerate_trees_up_to(budget - (r - i))) {
            auto rest = self(self, i + 1, budget - static_cast<unsigned>(t.vertex_count()));
            if (rest.is_zero()) continue;
            acc += ev.d_script_apply(t, rest) * Y(t, i);
        }
        memo.emplace(std::make_pair(i, budget), acc);
        return acc;
    };
    IdentitySides sides{m >= S.vertex_count() ? inner(inner, 1, m - static_cast<unsigned>(S.vertex_count())) : zero,
                        zero};

    for (const auto& t : enumerate_trees(m)) {
        const TreeWithIds ids(t);
        Rational weight = 0;
        for (const auto& seq : descending_sequences(ids, r)) {
            const auto parts = strip_sequence(ids, seq);
            if (!(parts.back() == S)) continue;
            Rational prod = 1;
            for (unsigned i = 0; i < r; ++i) prod *= Y(parts[i], i + 1);
            weight += prod;
        }
        if (!is_zero(weight)) sides.rhs += ev.p_script(t) * weight;
    }
    return sides;
}

inline bool verify_key_lemma(unsigned m, unsigned r, const RootedTree& S, const SeriesVector<Rational>& H,
                             std::uint64_t seed)
{
    return key_lemma_sides(m, r, S, H, seed).holds();
}

/// The two-operator summed form, truncated at H's order:
///   sum_{T_1, T_2} Y^1_{T_1} Y^2_{T_2} D_{T_1} P_{T_2}
///   = sum_{v(T) >= 2} sum_{e} Y^1_{T'_e} Y^2_{T_e} P_T.
inline IdentitySides key_corollary_sides(const SeriesVector<Rational>& H, std::uint64_t seed)
{
    const unsigned bound = contributing_vertex_bound(H);
    const SymbolValues Y(seed, std::max(bound, 1u), 2);
    TreeSeriesEvaluator ev(H);
    const auto zero = SeriesVector<Rational>::zero(H.size(), H.trunc());
    IdentitySides sides{zero, zero};
    for (const auto& t1 : enumerate_trees_up_to(bound))
        for (const auto& t2 : enumerate_trees_up_to(bound - std::min<unsigned>(bound, t1.vertex_count())))
            sides.lhs += ev.d_script_apply(t1, ev.p_script(t2)) * (Y(t1, 1) * Y(t2, 2));
    for (unsigned v = 2; v <= bound; ++v)
        for (const auto& t : enumerate_trees(v)) {
            const TreeWithIds ids(t);
            Rational weight = 0;
            for (int e : ids.edges()) {
                auto [root_part, cut_part] = detach(ids, e);
                weight += Y(cut_part, 1) * Y(root_part, 2);
            }
            sides.rhs += ev.p_script(t) * weight;
        }
    return sides;
}

} // namespace dlogflow

#endif
