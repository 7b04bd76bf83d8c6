#include <gtest/gtest.h>

#include "dlogflow/coeffs.hpp"
#include "oracles.hpp"

using namespace dlogflow;

namespace {

const RootedTree dot = RootedTree::singleton();

// t(t-1)...(t-n+1)/n!, built by repeated multiplication.
RatPoly falling_binomial(unsigned n)
{
    RatPoly p(1);
    for (unsigned k = 0; k < n; ++k) p *= RatPoly(std::vector<Rational>{Rational(-static_cast<long>(k)), 1});
    return p * (1 / factorial(n));
}

// Product of subtree sizes over all vertices.
unsigned long tree_factorial(const RootedTree& t)
{
    unsigned long f = t.vertex_count();
    for (const auto& c : t.children()) f *= tree_factorial(c);
    return f;
}

} // namespace

TEST(Phi, SmallExamples)
{
    EXPECT_EQ(phi_recurrence(dot), Rational(1));
    EXPECT_EQ(phi_recurrence(RootedTree::chain(2)), Rational(-1, 2));
    EXPECT_EQ(phi_recurrence(RootedTree::chain(3)), Rational(1, 3));
    EXPECT_EQ(phi_recurrence(RootedTree::shrub(2)), Rational(1, 6));
    EXPECT_EQ(phi_recurrence(RootedTree::shrub(3)), Rational(0));
    EXPECT_EQ(phi_recurrence(RootedTree::parse("((())())")), Rational(-1, 12));
}

TEST(Phi, ChainsAreAlternatingReciprocals)
{
    for (unsigned n = 1; n <= 10; ++n) {
        const Rational want(n % 2 ? 1 : -1, n);
        EXPECT_EQ(phi_recurrence(RootedTree::chain(n)), want) << n;
    }
}

TEST(Phi, ShrubsAreBernoulliNumbers)
{
    const auto b = oracle::bernoulli_by_recurrence(11);
    for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(phi_recurrence(RootedTree::shrub(n)), b[n]) << n;
}

TEST(Phi, MatchesLiteralEnumeration)
{
    for (const auto& t : enumerate_trees_up_to(7)) EXPECT_EQ(phi_recurrence(t), oracle::phi_by_enumeration(t)) << t.encoding();
}

TEST(Phi, ForestExtension)
{
    EXPECT_EQ(phi_forest(Forest()), Rational(0));
    EXPECT_EQ(phi_forest(Forest({RootedTree::chain(2)})), Rational(-1, 2));
    EXPECT_EQ(phi_forest(Forest({dot, dot})), Rational(0));
}

TEST(Phi, RecurrenceSumVanishes)
{
    EXPECT_EQ(r00_sum(dot), Rational(1));
    std::size_t count = 0;
    for (unsigned v = 2; v <= 6; ++v)
        for (const auto& t : enumerate_trees(v)) {
            EXPECT_TRUE(is_zero(r00_sum(t))) << t.encoding();
            ++count;
        }
    EXPECT_EQ(count, 36u);
}

TEST(Psi, SmallExamples)
{
    EXPECT_EQ(psi_def(dot), RatPoly::t());
    EXPECT_EQ(psi_def(RootedTree::chain(2)), RatPoly(std::vector<Rational>{0, Rational(-1, 2), Rational(1, 2)}));
    EXPECT_EQ(psi_def(RootedTree::shrub(2)), RatPoly(std::vector<Rational>{0, Rational(1, 6), Rational(-1, 2), Rational(1, 3)}));
    EXPECT_EQ(psi_forest(Forest()), RatPoly(1));
    EXPECT_EQ(psi_forest(Forest({dot, dot})), RatPoly::monomial(2, 1));
}

TEST(Psi, ChainsAreBinomials)
{
    for (unsigned n = 1; n <= 8; ++n) EXPECT_EQ(psi_def(RootedTree::chain(n)), falling_binomial(n)) << n;
}

TEST(Psi, ShrubsAreBernoulliPolynomialDifferences)
{
    const auto b = oracle::bernoulli_by_recurrence(10);
    for (unsigned n = 0; n <= 8; ++n) {
        const auto B = oracle::bernoulli_poly_by_sum(n + 1);
        const auto want = (B - RatPoly(b[n + 1])) * Rational(1, n + 1);
        EXPECT_EQ(psi_def(RootedTree::shrub(n)), want) << n;
    }
}

TEST(Psi, DefinitionMatchesBottomUpAlgorithm)
{
    for (const auto& t : enumerate_trees_up_to(7)) EXPECT_EQ(psi_def(t), psi_algorithm(t)) << t.encoding();
}

TEST(Psi, BasicValuesAndDegree)
{
    for (const auto& t : enumerate_trees_up_to(7)) {
        const auto psi = psi_def(t);
        EXPECT_TRUE(is_zero(psi(Rational(0))));
        EXPECT_EQ(psi(Rational(1)), Rational(t.is_singleton() ? 1 : 0)) << t.encoding();
        EXPECT_EQ(psi.derivative()(Rational(0)), phi_recurrence(t));
        EXPECT_EQ(psi.degree(), static_cast<int>(t.vertex_count()));
        EXPECT_EQ(psi.coeffs().back(), Rational(1, tree_factorial(t))) << t.encoding();
    }
}

TEST(Psi, DifferenceDeletesRoot)
{
    for (const auto& t : enumerate_trees_up_to(7)) EXPECT_EQ(delta(psi_def(t)), psi_forest(delete_root(t))) << t.encoding();
}

TEST(Psi, DifferenceSumsOverLeafDeletions)
{
    for (const auto& t : enumerate_trees_up_to(6)) {
        if (t.is_singleton()) continue;
        const TreeWithIds ids(t);
        const auto leaves = ids.leaves();
        RatPoly sum;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << leaves.size()); ++mask) {
            std::set<int> chosen;
            for (std::size_t i = 0; i < leaves.size(); ++i)
                if (mask & (std::uint64_t{1} << i)) chosen.insert(leaves[i]);
            sum += psi_forest(delete_leaves(ids, chosen));
        }
        EXPECT_EQ(delta(psi_def(t)), sum) << t.encoding();
    }
}

TEST(Psi, AdditiveInTime)
{
    for (const auto& t : enumerate_trees_up_to(6)) {
        const auto psi = psi_def(t);
        auto rhs = RatPoly2::in_t(psi) + RatPoly2::in_s(psi);
        const TreeWithIds ids(t);
        for (const auto& sub : rooted_subtrees(ids))
            if (sub.vertices != ids.all_vertices())
                rhs += RatPoly2::in_t(psi_forest(sub.complement)) * RatPoly2::in_s(psi_def(sub.subtree));
        EXPECT_EQ(RatPoly2::sum_substitution(psi), rhs) << t.encoding();
    }
}

TEST(Psi, CountsStrictMaps)
{
    for (const auto& t : enumerate_trees_up_to(6)) {
        const auto psi = psi_def(t);
        for (unsigned n = 0; n <= 5; ++n)
            EXPECT_EQ(psi(Rational(n)), Rational(static_cast<unsigned long>(oracle::strict_maps_brute(t, n))))
                << t.encoding() << " n=" << n;
        EXPECT_EQ(order_polynomial(t), psi) << t.encoding();
    }
}

TEST(Psi, Reciprocity)
{
    for (const auto& t : enumerate_trees_up_to(8))
        EXPECT_EQ(psi_def(t)(Rational(-1)), Rational(t.vertex_count() % 2 ? -1 : 1)) << t.encoding();
}

TEST(Psi, DerivativeByEdgesAndBySubtrees)
{
    for (const auto& t : enumerate_trees_up_to(6)) {
        const TreeWithIds ids(t);
        const auto d = psi_def(t).derivative();
        RatPoly by_edges(phi_recurrence(t));
        for (int e : ids.edges()) {
            auto [root_part, cut_part] = detach(ids, e);
            by_edges += psi_def(root_part) * phi_recurrence(cut_part);
        }
        EXPECT_EQ(by_edges, d) << t.encoding();
        RatPoly by_subtrees(phi_recurrence(t));
        for (const auto& sub : rooted_subtrees(ids))
            if (sub.vertices != ids.all_vertices()) by_subtrees += psi_forest(sub.complement) * phi_recurrence(sub.subtree);
        EXPECT_EQ(by_subtrees, d) << t.encoding();
    }
}

TEST(LeafIdentity, HoldsWithoutTheEmptySet)
{
    for (const auto& t : enumerate_trees_up_to(7)) {
        const auto r = phi_leaf_identity(t);
        EXPECT_TRUE(r.holds) << t.encoding();
        EXPECT_EQ(r.literal_holds, is_zero(phi_recurrence(t))) << t.encoding();
    }
}

TEST(LeafIdentity, LiteralReadingFailsOnTwoChain)
{
    const auto r = phi_leaf_identity(RootedTree::chain(2));
    EXPECT_EQ(r.lhs_nonempty, Rational(1));
    EXPECT_EQ(r.rhs, Rational(1));
    EXPECT_EQ(r.lhs_literal, Rational(1, 2));
    EXPECT_FALSE(r.literal_holds);
}

TEST(GeneratingFunctions, ClosedForms)
{
    for (auto kind : {GeneratingFunction::chain, GeneratingFunction::shrub, GeneratingFunction::chain_psi,
                      GeneratingFunction::shrub_psi})
        EXPECT_TRUE(generating_function_check(kind, 10));
}

TEST(Tables, IndependentInstancesAgree)
{
    CoefficientTables fresh;
    for (const auto& t : enumerate_trees_up_to(6)) {
        EXPECT_EQ(fresh.phi(t), phi_recurrence(t));
        EXPECT_EQ(fresh.psi(t), psi_def(t));
    }
}
