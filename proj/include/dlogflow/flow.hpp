#ifndef DLOGFLOW_FLOW_HPP
#define DLOGFLOW_FLOW_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coeffs.hpp"
#include "rational.hpp"
#include "ratpoly.hpp"
#include "series.hpp"
#include "tree.hpp"
#include "tree_series.hpp"
#include "tree_surgery.hpp"

namespace dlogflow {

/// F = z + H with H of order >= 2 (identity plus higher).
class FormalMap {
public:
    explicit FormalMap(SeriesVector<Rational> F) : F_(std::move(F)), H_(F_ - SeriesVector<Rational>::identity(F_.size(), F_.trunc()))
    {
        if (F_.trunc() < 1) throw domain_error("FormalMap: truncation order must be at least 1");
        if (!H_.is_zero() && H_.order() < 2)
            throw domain_error("FormalMap: map must be the identity plus terms of degree >= 2");
    }
    static FormalMap from_higher(SeriesVector<Rational> H)
    {
        return FormalMap(SeriesVector<Rational>::identity(H.size(), H.trunc()) + H);
    }

    const SeriesVector<Rational>& map() const { return F_; }
    const SeriesVector<Rational>& higher() const { return H_; }
    unsigned nvars() const { return F_.size(); }
    unsigned trunc() const { return F_.trunc(); }
    SeriesVector<Rational> identity() const { return SeriesVector<Rational>::identity(nvars(), trunc()); }

private:
    SeriesVector<Rational> F_;
    SeriesVector<Rational> H_;
};

/// The vector field a (order >= 2) with exp(aD) z = F.
struct DLog {
    SeriesVector<Rational> a;
    Derivation<Rational> derivation() const { return Derivation<Rational>(a); }
};

/// Fixed-point refinement a <- a + (F - exp(aD) z) starting from a = H. Each
/// correction has strictly higher order than the last, so N rounds suffice.
inline DLog dlog(const FormalMap& F)
{
    const auto z = F.identity();
    SeriesVector<Rational> a = F.higher();
    for (unsigned round = 0; round <= F.trunc(); ++round) {
        auto residual = F.map() - exp_derivation(Derivation<Rational>(a), Rational(1), z);
        if (residual.is_zero()) return DLog{std::move(a)};
        a += residual;
    }
    throw domain_error("dlog: residual did not vanish within " + std::to_string(F.trunc() + 1) + " rounds");
}

/// sum_T phi_T P_T(H) over every tree that can contribute at the truncation order.
inline SeriesVector<Rational> dlog_tree_sum(const FormalMap& F, CoefficientTables& tables = default_tables())
{
    TreeSeriesEvaluator ev(F.higher());
    auto a = SeriesVector<Rational>::zero(F.nvars(), F.trunc());
    for (const auto& t : enumerate_trees_up_to(contributing_vertex_bound(F.higher())))
        if (const auto& phi = tables.phi(t); !is_zero(phi)) a += ev.p_script(t) * phi;
    return a;
}

/// F_tau = exp(tau A) z.
inline SeriesVector<Rational> flow(const FormalMap& F, const Rational& tau)
{
    return exp_derivation(dlog(F).derivation(), tau, F.identity());
}

/// F_t with t an indeterminate.
inline SeriesVector<RatPoly> flow_symbolic(const FormalMap& F)
{
    return exp_derivation_symbolic(dlog(F).derivation(), F.identity());
}

/// z + sum_T psi_T(t) P_T(H).
inline SeriesVector<RatPoly> flow_tree_sum(const FormalMap& F, CoefficientTables& tables = default_tables())
{
    TreeSeriesEvaluator ev(F.higher());
    auto r = lift<RatPoly>(F.identity());
    for (const auto& t : enumerate_trees_up_to(contributing_vertex_bound(F.higher())))
        r += lift<RatPoly>(ev.p_script(t)).scaled(tables.psi(t));
    return r;
}

/// z + sum_T (-1)^{v(T)} P_T(H).
inline SeriesVector<Rational> inverse_tree(const FormalMap& F)
{
    TreeSeriesEvaluator ev(F.higher());
    auto r = F.identity();
    for (const auto& t : enumerate_trees_up_to(contributing_vertex_bound(F.higher())))
        r += ev.p_script(t) * Rational(t.vertex_count() % 2 ? -1 : 1);
    return r;
}

/// Solves G(F) = z degree by degree: G <- G - (G o F - z), starting from G = z.
inline SeriesVector<Rational> inverse_solver(const FormalMap& F)
{
    const auto z = F.identity();
    auto G = z;
    for (unsigned round = 0; round <= F.trunc(); ++round) {
        auto residual = compose(G, F.map()) - z;
        if (residual.is_zero()) return G;
        G -= residual;
    }
    throw domain_error("inverse_solver: residual did not vanish");
}

namespace detail {

/// For each T with S < T (proper rooted subtree isomorphic to S), the forest psi sum;
/// S empty means P_S = z and contributes psi_T itself.
inline RatPoly subtree_psi_weight(const RootedTree& t, const std::optional<RootedTree>& S, CoefficientTables& tables)
{
    if (!S) return tables.psi(t);
    RatPoly w;
    const TreeWithIds ids(t);
    for (const auto& sub : rooted_subtrees(ids))
        if (sub.vertices != ids.all_vertices() && sub.subtree == *S) w += tables.psi(sub.complement);
    return w;
}

} // namespace detail

/// exp(tA) P_S against P_S + sum_T (sum_{T' < T, T' = S} psi_{T \ T'}(t)) P_T, with t
/// an indeterminate. An empty S stands for P_S = z.
inline Sides<RatPoly> exp_on_ptree(const FormalMap& F, const std::optional<RootedTree>& S,
                                   CoefficientTables& tables = default_tables())
{
    TreeSeriesEvaluator ev(F.higher());
    const auto start = S ? ev.p_script(*S) : F.identity();
    Sides<RatPoly> sides{exp_derivation_symbolic(dlog(F).derivation(), start), lift<RatPoly>(start)};
    for (const auto& t : enumerate_trees_up_to(contributing_vertex_bound(F.higher()))) {
        auto w = detail::subtree_psi_weight(t, S, tables);
        if (!w.is_zero()) sides.rhs += lift<RatPoly>(ev.p_script(t)).scaled(w);
    }
    return sides;
}

/// The same identity at a rational value of t.
inline IdentitySides exp_on_ptree(const FormalMap& F, const std::optional<RootedTree>& S, const Rational& tau,
                                  CoefficientTables& tables = default_tables())
{
    TreeSeriesEvaluator ev(F.higher());
    const auto start = S ? ev.p_script(*S) : F.identity();
    IdentitySides sides{exp_derivation(dlog(F).derivation(), tau, start), start};
    for (const auto& t : enumerate_trees_up_to(contributing_vertex_bound(F.higher()))) {
        auto w = detail::subtree_psi_weight(t, S, tables)(tau);
        if (!is_zero(w)) sides.rhs += ev.p_script(t) * w;
    }
    return sides;
}

/// F_{t+s} against F_t o F_s with t, s independent indeterminates.
inline Sides<RatPoly2> flow_group_sides(const FormalMap& F)
{
    const auto Ft = flow_symbolic(F);
    auto in_t = Ft.map_coeffs([](const RatPoly& p) { return RatPoly2::in_t(p); });
    auto in_s = Ft.map_coeffs([](const RatPoly& p) { return RatPoly2::in_s(p); });
    auto sum = Ft.map_coeffs([](const RatPoly& p) { return RatPoly2::sum_substitution(p); });
    return Sides<RatPoly2>{std::move(sum), compose(in_t, in_s)};
}

/// Square matrix of series.
using SeriesMatrix = std::vector<std::vector<Series<Rational>>>;

/// JH = (d_j H_i).
inline SeriesMatrix jacobian(const SeriesVector<Rational>& H)
{
    SeriesMatrix J(H.size());
    for (unsigned i = 0; i < H.size(); ++i)
        for (unsigned j = 0; j < H.size(); ++j) J[i].push_back(H[i].partial(j));
    return J;
}

inline SeriesMatrix matmul(const SeriesMatrix& A, const SeriesMatrix& B)
{
    const std::size_t n = A.size();
    SeriesMatrix C(n, std::vector<Series<Rational>>(n, Series<Rational>(A[0][0].nvars(), A[0][0].trunc())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (A[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

inline SeriesVector<Rational> matvec(const SeriesMatrix& A, const SeriesVector<Rational>& v)
{
    auto r = SeriesVector<Rational>::zero(v.size(), v.trunc());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            if (!A[i][j].is_zero() && !v[j].is_zero()) r[i] += A[i][j] * v[j];
    return r;
}

inline bool is_zero(const SeriesMatrix& M)
{
    for (const auto& row : M)
        for (const auto& s : row)
            if (!s.is_zero()) return false;
    return true;
}

struct ChainCheck {
    unsigned m = 0;
    bool matches_jacobian_form = false; // P_{C_m} = (JH)^{m-1} H^t
    bool vanishes = false;
    bool required_zero = false; // m >= k
};

struct HeightSum {
    unsigned m = 0;
    unsigned size = 0;
    SeriesVector<Rational> sum;
    bool vanishes = false;
};

struct NilpotentReport {
    int degree = 0; // 0 for H = 0
    unsigned series_trunc = 0;
    bool homogeneous = false;
    bool jacobian_nilpotent = false;
    std::vector<ChainCheck> chains;
    std::vector<HeightSum> sums;

    bool passed() const
    {
        if (!homogeneous || !jacobian_nilpotent) return false;
        for (const auto& c : chains)
            if (!c.matches_jacobian_form || (c.required_zero && !c.vanishes)) return false;
        for (const auto& s : sums)
            if (!s.vanishes) return false;
        return true;
    }
};

/// For homogeneous H with (JH)^k = 0: checks P_{C_m} = (JH)^{m-1} H^t for m = 1..N
/// (zero once m >= k) and sum_{T in T_size} h_{T,m} P_T = 0 for k <= m < size <= N.
/// A failed precondition is reported, and the remaining verdicts are still computed.
inline NilpotentReport nilpotent_vanishing(const SeriesVector<Rational>& H_in, unsigned k, unsigned N)
{
    NilpotentReport rep;
    if (k == 0) throw domain_error("nilpotent_vanishing: k must be positive");
    rep.homogeneous = true;
    if (!H_in.is_zero()) {
        rep.degree = H_in.order();
        rep.homogeneous = H_in.homogeneous_part(static_cast<unsigned>(rep.degree)) == H_in && rep.degree >= 2;
    }
    const unsigned d = rep.degree >= 2 ? static_cast<unsigned>(rep.degree) : 2;
    rep.series_trunc = std::max((d - 1) * N + 1, k * (d - 1));
    const auto H = with_trunc(H_in, rep.series_trunc);

    const auto J = jacobian(H);
    SeriesMatrix Jk = J;
    for (unsigned i = 1; i < k; ++i) Jk = matmul(Jk, J);
    rep.jacobian_nilpotent = is_zero(Jk);

    if (!rep.homogeneous) return rep;
    TreeSeriesEvaluator ev(H);
    auto chain_form = H; // (JH)^{m-1} H^t
    for (unsigned m = 1; m <= N; ++m) {
        const auto p = ev.p_script(RootedTree::chain(m));
        rep.chains.push_back({m, p == chain_form, p.is_zero(), m >= k});
        chain_form = matvec(J, chain_form);
    }
    for (unsigned m = k; m < N; ++m)
        for (unsigned size = m + 1; size <= N; ++size) {
            auto sum = SeriesVector<Rational>::zero(H.size(), H.trunc());
            for (const auto& t : enumerate_trees(size))
                if (auto h = height_census(t, m)) sum += ev.p_script(t) * Rational(static_cast<unsigned long>(h));
            const bool zero = sum.is_zero();
            rep.sums.push_back({m, size, std::move(sum), zero});
        }
    return rep;
}

} // namespace dlogflow

#endif
