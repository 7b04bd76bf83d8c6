#ifndef DLOGFLOW_VERIFY_HPP
#define DLOGFLOW_VERIFY_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coeffs.hpp"
#include "flow.hpp"
#include "rational.hpp"
#include "ratpoly.hpp"
#include "series.hpp"
#include "tree.hpp"
#include "tree_series.hpp"
#include "tree_surgery.hpp"

namespace dlogflow {

struct VerdictCase {
    std::string descriptor;
    bool pass = false;
    std::string witness; // filled on failure, or for informational detail
};

struct VerdictReport {
    std::string suite;
    std::optional<std::uint64_t> seed;
    std::vector<VerdictCase> cases;

    bool passed() const
    {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& c : cases) n += c.pass ? 0 : 1;
        return n;
    }
    void add(std::string descriptor, bool pass, std::string witness = {})
    {
        cases.push_back({std::move(descriptor), pass, std::move(witness)});
    }
};

struct SuiteParams {
    unsigned max_vertices = 6;
    unsigned trunc = 6;
    std::uint64_t seed = 20240229;
};

/// DLOGFLOW_SEED if set and numeric, otherwise the fallback.
inline std::uint64_t seed_from_env(std::uint64_t fallback)
{
    if (const char* s = std::getenv("DLOGFLOW_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && end != s) return v;
    }
    return fallback;
}

/// All exponent vectors in n variables of total degree d.
inline std::vector<Monomial> monomials_of_degree(unsigned n, unsigned d)
{
    std::vector<Monomial> out;
    Monomial m(n, 0);
    auto rec = [&](auto&& self, unsigned i, unsigned left) -> void {
        if (i + 1 == n) {
            m[i] = left;
            out.push_back(m);
            return;
        }
        for (unsigned e = left + 1; e-- > 0;) {
            m[i] = e;
            self(self, i + 1, left - e);
        }
    };
    rec(rec, 0, d);
    return out;
}

/// A random system with terms of degree dmin..dmax: each monomial is kept with
/// probability 1/2 and gets a nonzero coefficient p/q with |p| <= 3, q in {1, 2}.
inline SeriesVector<Rational> random_system(std::mt19937_64& rng, unsigned n, unsigned dmin, unsigned dmax,
                                            unsigned trunc)
{
    auto H = SeriesVector<Rational>::zero(n, trunc);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned d = dmin; d <= dmax; ++d)
            for (const auto& m : monomials_of_degree(n, d)) {
                if (rng() % 2) continue;
                const long p = static_cast<long>(rng() % 6);
                const unsigned long q = 1 + rng() % 2;
                H[i].add_term(m, Rational(p < 3 ? p - 3 : p - 2, q));
            }
    if (H.is_zero()) H[0].add_term(monomials_of_degree(n, dmin).front(), Rational(1));
    for (unsigned i = 0; i < n; ++i) H[i] = H[i].map_coeffs([](Rational c) { c.canonicalize(); return c; });
    return H;
}

/// Seeded identity-plus-higher maps with n in 1..3, terms of degree 2..3 and
/// truncation order 4..max_trunc.
inline std::vector<FormalMap> seeded_maps(std::uint64_t seed, unsigned count, unsigned max_trunc = 6)
{
    std::mt19937_64 rng(seed);
    std::vector<FormalMap> maps;
    for (unsigned k = 0; k < count; ++k) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
        const unsigned dmax = 2 + static_cast<unsigned>(rng() % 2);
        const unsigned trunc = std::min(max_trunc, 4 + static_cast<unsigned>(rng() % 3));
        maps.push_back(FormalMap::from_higher(random_system(rng, n, 2, dmax, trunc)));
    }
    return maps;
}

namespace detail {

inline std::string describe(const RootedTree& t) { return t.encoding(); }

template <class T>
std::string show(const T& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace detail

inline VerdictReport suite_r00(const SuiteParams& p)
{
    VerdictReport rep{"r00", std::nullopt, {}};
    for (unsigned v = 2; v <= p.max_vertices; ++v)
        for (const auto& t : enumerate_trees(v)) {
            const auto s = r00_sum(t);
            rep.add(t.encoding(), is_zero(s), is_zero(s) ? "" : "sum = " + to_string(s));
        }
    return rep;
}

inline VerdictReport suite_delta(const SuiteParams& p)
{
    VerdictReport rep{"delta", std::nullopt, {}};
    auto& tables = default_tables();
    for (const auto& t : enumerate_trees_up_to(p.max_vertices)) {
        const auto lhs = delta(tables.psi(t));
        const auto rhs = tables.psi(delete_root(t));
        rep.add("root " + t.encoding(), lhs == rhs, lhs == rhs ? "" : lhs.to_string() + " vs " + rhs.to_string());
        if (t.vertex_count() < 2) continue;
        const TreeWithIds ids(t);
        const auto leaves = ids.leaves();
        RatPoly sum;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << leaves.size()); ++mask) {
            std::set<int> chosen;
            for (std::size_t i = 0; i < leaves.size(); ++i)
                if (mask & (std::uint64_t{1} << i)) chosen.insert(leaves[i]);
            sum += tables.psi(delete_leaves(ids, chosen));
        }
        rep.add("leaves " + t.encoding(), lhs == sum, lhs == sum ? "" : lhs.to_string() + " vs " + sum.to_string());
    }
    return rep;
}

inline VerdictReport suite_additive(const SuiteParams& p)
{
    VerdictReport rep{"additive", std::nullopt, {}};
    auto& tables = default_tables();
    for (const auto& t : enumerate_trees_up_to(p.max_vertices)) {
        const auto& psi = tables.psi(t);
        auto rhs = RatPoly2::in_t(psi) + RatPoly2::in_s(psi);
        const TreeWithIds ids(t);
        for (const auto& sub : rooted_subtrees(ids))
            if (sub.vertices != ids.all_vertices())
                rhs += RatPoly2::in_t(tables.psi(sub.complement)) * RatPoly2::in_s(tables.psi(sub.subtree));
        const auto lhs = RatPoly2::sum_substitution(psi);
        rep.add(t.encoding(), lhs == rhs, lhs == rhs ? "" : lhs.to_string() + " vs " + rhs.to_string());
    }
    return rep;
}

inline VerdictReport suite_omega(const SuiteParams& p)
{
    VerdictReport rep{"omega", std::nullopt, {}};
    auto& tables = default_tables();
    for (const auto& t : enumerate_trees_up_to(p.max_vertices)) {
        const auto& psi = tables.psi(t);
        std::string bad;
        for (unsigned n = 0; n <= std::max<unsigned>(5, static_cast<unsigned>(t.vertex_count())); ++n)
            if (psi(Rational(n)) != Rational(count_strict_maps(t, n))) bad += " n=" + std::to_string(n);
        const auto omega = order_polynomial(t);
        if (omega != psi) bad += " interpolant " + omega.to_string();
        rep.add(t.encoding(), bad.empty(), bad);
    }
    return rep;
}

inline VerdictReport suite_reciprocity(const SuiteParams& p)
{
    VerdictReport rep{"reciprocity", std::nullopt, {}};
    auto& tables = default_tables();
    for (const auto& t : enumerate_trees_up_to(std::max(p.max_vertices, 8u))) {
        const auto value = tables.psi(t)(Rational(-1));
        const Rational want = t.vertex_count() % 2 ? -1 : 1;
        rep.add(t.encoding(), value == want, value == want ? "" : "psi(-1) = " + to_string(value));
    }
    return rep;
}

/// psi_def against the bottom-up algorithm, the ψ(0)/ψ(1)/ψ'(0) values, both
/// derivative formulas, and the degree of ψ_T.
inline VerdictReport suite_routes(const SuiteParams& p)
{
    VerdictReport rep{"routes", std::nullopt, {}};
    auto& tables = default_tables();
    for (const auto& t : enumerate_trees_up_to(p.max_vertices)) {
        const auto& psi = tables.psi(t);
        const auto d = psi.derivative();
        std::string bad;
        if (psi != tables.psi_algorithm(t)) bad += " algorithm";
        if (!is_zero(psi(Rational(0)))) bad += " psi(0)";
        if (psi(Rational(1)) != Rational(t.is_singleton() ? 1 : 0)) bad += " psi(1)";
        if (d(Rational(0)) != tables.phi(t)) bad += " psi'(0)";
        if (psi.degree() != static_cast<int>(t.vertex_count()) || sgn(psi.coeffs().back()) <= 0) bad += " degree";
        const TreeWithIds ids(t);
        RatPoly by_edges(tables.phi(t));
        for (int e : ids.edges()) {
            auto [root_part, cut_part] = detach(ids, e);
            by_edges += tables.psi(root_part) * tables.phi(cut_part);
        }
        if (by_edges != d) bad += " edge-derivative";
        RatPoly by_subtrees(tables.phi(t));
        for (const auto& sub : rooted_subtrees(ids))
            if (sub.vertices != ids.all_vertices()) by_subtrees += tables.psi(sub.complement) * tables.phi(sub.subtree);
        if (by_subtrees != d) bad += " subtree-derivative";
        rep.add(t.encoding(), bad.empty(), bad);
    }
    return rep;
}

/// The leaf-deletion identity for phi, r >= 1 form; the literal r >= 0 reading is
/// reported in the witness whenever it disagrees.
inline VerdictReport suite_leaf(const SuiteParams& p)
{
    VerdictReport rep{"leaf", std::nullopt, {}};
    for (const auto& t : enumerate_trees_up_to(p.max_vertices)) {
        const auto r = phi_leaf_identity(t);
        std::string witness;
        if (!r.holds) witness = "lhs " + to_string(r.lhs_nonempty) + " rhs " + to_string(r.rhs);
        if (!r.literal_holds)
            witness += (witness.empty() ? "" : "; ") + std::string("with r = 0 term: lhs ") + to_string(r.lhs_literal) +
                       " rhs " + to_string(r.rhs);
        rep.add(t.encoding(), r.holds, witness);
    }
    return rep;
}

inline VerdictReport suite_generating(const SuiteParams& p)
{
    VerdictReport rep{"generating", std::nullopt, {}};
    const unsigned order = std::min(p.max_vertices + 2, 12u);
    rep.add("chain phi vs ln(1+x)", generating_function_check(GeneratingFunction::chain, order));
    rep.add("shrub phi vs x/(e^x-1)", generating_function_check(GeneratingFunction::shrub, order));
    rep.add("chain psi vs (1+x)^t", generating_function_check(GeneratingFunction::chain_psi, order));
    rep.add("shrub psi vs (e^{xt}-1)/(e^x-1)", generating_function_check(GeneratingFunction::shrub_psi, order));
    return rep;
}

inline VerdictReport suite_independence(const SuiteParams& p)
{
    VerdictReport rep{"independence", std::nullopt, {}};
    for (unsigned m = 1; m <= std::min(p.max_vertices, 6u); ++m) {
        const auto trees = enumerate_trees(m);
        for (const auto& t : trees) {
            const auto H = gadget_system(t);
            TreeSeriesEvaluator ev(H);
            for (const auto& t2 : trees) {
                auto want = SeriesVector<Rational>::zero(m, m);
                if (t == t2) want[0].add_term(Monomial(m, 0), Rational(t.aut_size()));
                const auto& got = ev.p_tree(t2);
                rep.add(t.encoding() + " x " + t2.encoding(), got == want, got == want ? "" : detail::show(got));
            }
        }
    }
    return rep;
}

/// Seeded instances of the surgery lemma: m <= min(M, 5), r <= 2, n <= 2, H
/// homogeneous of degree 2.
inline VerdictReport suite_keylemma(const SuiteParams& p, unsigned count = 20)
{
    VerdictReport rep{"keylemma", p.seed, {}};
    std::mt19937_64 rng(p.seed);
    const unsigned mmax = std::max(2u, std::min(p.max_vertices, 5u));
    for (unsigned c = 0; c < count; ++c) {
        const unsigned m = 2 + static_cast<unsigned>(rng() % (mmax - 1));
        const unsigned r = 1 + static_cast<unsigned>(rng() % std::min(2u, m - 1));
        const auto shapes = enumerate_trees_up_to(m - r);
        const auto S = shapes[rng() % shapes.size()];
        const unsigned n = 1 + static_cast<unsigned>(rng() % 2);
        const auto H = random_system(rng, n, 2, 2, m + 1);
        const std::uint64_t ys = rng();
        const auto sides = key_lemma_sides(m, r, S, H, ys);
        std::ostringstream d;
        d << "m=" << m << " r=" << r << " S=" << S.encoding() << " n=" << n << " yseed=" << ys;
        rep.add(d.str(), sides.holds(),
                sides.holds() ? "" : "seed " + std::to_string(p.seed) + ": lhs " + detail::show(sides.lhs) + " rhs " + detail::show(sides.rhs));
    }
    return rep;
}

inline VerdictReport suite_keycor(const SuiteParams& p, unsigned count = 5)
{
    VerdictReport rep{"keycor", p.seed, {}};
    std::mt19937_64 rng(p.seed ^ 0x6b6579636f72ULL);
    for (unsigned c = 0; c < count; ++c) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 2);
        const auto H = random_system(rng, n, 2, 3, std::min(p.trunc, 6u));
        const std::uint64_t ys = rng();
        const auto sides = key_corollary_sides(H, ys);
        rep.add("n=" + std::to_string(n) + " yseed=" + std::to_string(ys), sides.holds(),
                sides.holds() ? "" : detail::show(sides.lhs) + " vs " + detail::show(sides.rhs));
    }
    return rep;
}

inline std::string map_descriptor(std::size_t k, const FormalMap& F)
{
    return "map " + std::to_string(k) + " n=" + std::to_string(F.nvars()) + " N=" + std::to_string(F.trunc());
}

inline VerdictReport suite_dlog(const SuiteParams& p, unsigned count = 10)
{
    VerdictReport rep{"dlog", p.seed, {}};
    const auto maps = seeded_maps(p.seed, count, std::min(p.trunc, 6u));
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const auto& F = maps[k];
        const auto a = dlog(F);
        const bool round_trip = exp_derivation(a.derivation(), Rational(1), F.identity()) == F.map();
        const auto tree_sum = dlog_tree_sum(F);
        rep.add(map_descriptor(k, F) + " round trip", round_trip);
        rep.add(map_descriptor(k, F) + " tree sum", a.a == tree_sum, a.a == tree_sum ? "" : detail::show(a.a) + " vs " + detail::show(tree_sum));
    }
    return rep;
}

inline VerdictReport suite_inverse(const SuiteParams& p, unsigned count = 10)
{
    VerdictReport rep{"inverse", p.seed, {}};
    auto maps = seeded_maps(p.seed, count, std::min(p.trunc, 6u));
    {
        auto H = SeriesVector<Rational>::zero(1, 5);
        H[0].add_term({2}, Rational(1));
        maps.push_back(FormalMap::from_higher(H));
    }
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const auto& F = maps[k];
        const auto tree = inverse_tree(F);
        const auto solved = inverse_solver(F);
        rep.add(map_descriptor(k, F) + " tree = solver", tree == solved);
        rep.add(map_descriptor(k, F) + " left inverse", compose(tree, F.map()) == F.identity());
        rep.add(map_descriptor(k, F) + " right inverse", compose(F.map(), tree) == F.identity());
        rep.add(map_descriptor(k, F) + " flow at -1", flow(F, Rational(-1)) == tree);
    }
    auto want = SeriesVector<Rational>::zero(1, 5);
    const long c[] = {1, -1, 2, -5, 14};
    for (unsigned d = 1; d <= 5; ++d) want[0].add_term({d}, Rational(c[d - 1]));
    rep.add("z+z^2 catalan inverse", inverse_tree(maps.back()) == want);
    return rep;
}

/// Integer powers, the group law in Q[t, s], and the tree expansion of F_t.
inline VerdictReport suite_flowgroup(const SuiteParams& p, unsigned count = 10)
{
    VerdictReport rep{"flowgroup", p.seed, {}};
    const auto maps = seeded_maps(p.seed, count, std::min(p.trunc, 6u));
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const auto& F = maps[k];
        const auto name = map_descriptor(k, F);
        rep.add(name + " F_2 = F o F", flow(F, Rational(2)) == compose(F.map(), F.map()));
        rep.add(name + " F_-1 o F = z", compose(flow(F, Rational(-1)), F.map()) == F.identity());
        const auto inv = inverse_solver(F);
        rep.add(name + " F_-2 = G o G", flow(F, Rational(-2)) == compose(inv, inv));
        rep.add(name + " F_t = tree sum", flow_symbolic(F) == flow_tree_sum(F));
        const FormalMap small(with_trunc(F.map(), std::min(F.trunc(), 5u)));
        rep.add(name + " F_{t+s} = F_t o F_s", flow_group_sides(small).holds());
    }
    return rep;
}

/// exp(tA) P_S against the rooted-subtree expansion for v(S) <= 3 and S empty.
inline VerdictReport suite_exptree(const SuiteParams& p, unsigned count = 4)
{
    VerdictReport rep{"exptree", p.seed, {}};
    std::mt19937_64 rng(p.seed ^ 0x657870ULL);
    std::vector<FormalMap> maps;
    {
        auto H = SeriesVector<Rational>::zero(1, std::min(p.trunc, 6u));
        H[0].add_term({2}, Rational(1));
        maps.push_back(FormalMap::from_higher(H));
    }
    for (unsigned c = 0; c < count; ++c) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 2);
        maps.push_back(FormalMap::from_higher(random_system(rng, n, 2, 2, std::min(p.trunc, 6u))));
    }
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const auto name = map_descriptor(k, maps[k]);
        rep.add(name + " S=empty", exp_on_ptree(maps[k], std::nullopt).holds());
        for (const auto& S : enumerate_trees_up_to(3)) {
            rep.add(name + " S=" + S.encoding(), exp_on_ptree(maps[k], S).holds());
            rep.add(name + " S=" + S.encoding() + " t=-1", exp_on_ptree(maps[k], S, Rational(-1)).holds());
        }
    }
    return rep;
}

inline VerdictReport suite_nilpotent(const SuiteParams& p)
{
    VerdictReport rep{"nilpotent", std::nullopt, {}};
    auto H = SeriesVector<Rational>::zero(2, 2);
    H[0].add_term({0, 2}, Rational(1));
    const auto r = nilpotent_vanishing(H, 2, std::max(p.max_vertices, 3u));
    rep.add("H=(z2^2,0) homogeneous", r.homogeneous);
    rep.add("(JH)^2 = 0", r.jacobian_nilpotent);
    for (const auto& c : r.chains)
        rep.add("P_C" + std::to_string(c.m) + " = JH^" + std::to_string(c.m - 1) + " H",
                c.matches_jacobian_form && (!c.required_zero || c.vanishes));
    for (const auto& s : r.sums)
        rep.add("m=" + std::to_string(s.m) + " size=" + std::to_string(s.size), s.vanishes,
                s.vanishes ? "" : detail::show(s.sum));
    return rep;
}

using SuiteFn = std::function<VerdictReport(const SuiteParams&)>;

inline const std::map<std::string, SuiteFn>& suites()
{
    static const std::map<std::string, SuiteFn> registry = {
        {"r00", [](const SuiteParams& p) { return suite_r00(p); }},
        {"delta", [](const SuiteParams& p) { return suite_delta(p); }},
        {"additive", [](const SuiteParams& p) { return suite_additive(p); }},
        {"omega", [](const SuiteParams& p) { return suite_omega(p); }},
        {"reciprocity", [](const SuiteParams& p) { return suite_reciprocity(p); }},
        {"routes", [](const SuiteParams& p) { return suite_routes(p); }},
        {"leaf", [](const SuiteParams& p) { return suite_leaf(p); }},
        {"generating", [](const SuiteParams& p) { return suite_generating(p); }},
        {"independence", [](const SuiteParams& p) { return suite_independence(p); }},
        {"keylemma", [](const SuiteParams& p) { return suite_keylemma(p); }},
        {"keycor", [](const SuiteParams& p) { return suite_keycor(p); }},
        {"dlog", [](const SuiteParams& p) { return suite_dlog(p); }},
        {"inverse", [](const SuiteParams& p) { return suite_inverse(p); }},
        {"flowgroup", [](const SuiteParams& p) { return suite_flowgroup(p); }},
        {"exptree", [](const SuiteParams& p) { return suite_exptree(p); }},
        {"nilpotent", [](const SuiteParams& p) { return suite_nilpotent(p); }},
    };
    return registry;
}

} // namespace dlogflow

#endif
