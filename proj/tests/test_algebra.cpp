#include <random>

#include <gtest/gtest.h>

#include "dlogflow/bernoulli.hpp"
#include "dlogflow/rational.hpp"
#include "dlogflow/ratpoly.hpp"
#include "dlogflow/series.hpp"
#include "oracles.hpp"

using namespace dlogflow;

namespace {

Series<Rational> poly1(unsigned trunc, std::initializer_list<std::pair<unsigned, long>> terms)
{
    Series<Rational> s(1, trunc);
    for (auto [d, c] : terms) s.add_term({d}, Rational(c));
    return s;
}

SeriesVector<Rational> vec1(const Series<Rational>& s) { return SeriesVector<Rational>({s}); }

} // namespace

TEST(Rational, ParsesAndCanonicalizes)
{
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
    EXPECT_EQ(parse_rational("+7"), Rational(7));
    EXPECT_THROW(parse_rational("6/-4"), parse_error);
    EXPECT_THROW(parse_rational(" 7 "), parse_error);
    EXPECT_THROW(parse_rational("1/0"), parse_error);
    EXPECT_THROW(parse_rational("abc"), parse_error);
    EXPECT_THROW(parse_rational("1.5"), parse_error);
}

TEST(Series, PartialDerivative)
{
    auto s = poly1(5, {{2, 1}});
    EXPECT_EQ(s.partial(0), poly1(5, {{1, 2}}));
}

TEST(Series, ProductOfSumAndDifference)
{
    Series<Rational> a(2, 2), b(2, 2), want(2, 2);
    a.add_term({1, 0}, 1);
    a.add_term({0, 1}, 1);
    b.add_term({1, 0}, 1);
    b.add_term({0, 1}, -1);
    want.add_term({2, 0}, 1);
    want.add_term({0, 2}, -1);
    EXPECT_EQ(a * b, want);
}

TEST(Series, ProductIsTruncated)
{
    auto s = poly1(3, {{2, 1}});
    EXPECT_TRUE((s * s).is_zero());
}

TEST(Series, RejectsMismatchedShapes)
{
    Series<Rational> a(1, 3), b(1, 4), c(2, 3);
    EXPECT_THROW(a + b, dimension_error);
    EXPECT_THROW(a * c, dimension_error);
    EXPECT_THROW(SeriesVector<Rational>({a, a}), dimension_error);
}

TEST(Series, InvariantsOnStoredTerms)
{
    Series<Rational> s(2, 3);
    s.add_term({2, 2}, 5);
    s.add_term({1, 0}, 0);
    EXPECT_TRUE(s.is_zero());
    s.add_term({1, 1}, 2);
    s.add_term({1, 1}, -2);
    EXPECT_TRUE(s.is_zero());
}

TEST(Series, RingLawsOnRandomSeries)
{
    std::mt19937_64 rng(11);
    for (int round = 0; round < 30; ++round) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
        const unsigned N = 1 + static_cast<unsigned>(rng() % 6);
        auto a = oracle::random_series(rng, n, N), b = oracle::random_series(rng, n, N), c = oracle::random_series(rng, n, N);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) - b, a);
    }
}

TEST(Series, TruncationCommutesWithProducts)
{
    std::mt19937_64 rng(5);
    for (int round = 0; round < 20; ++round) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 2);
        auto a = oracle::random_series(rng, n, 6), b = oracle::random_series(rng, n, 6);
        for (unsigned m = 0; m < 6; ++m) EXPECT_EQ((a * b).truncated(m), a.truncated(m) * b.truncated(m));
    }
}

TEST(Compose, IdentityComponent)
{
    auto F = vec1(poly1(4, {{1, 1}, {2, 1}}));
    EXPECT_EQ(compose(Series<Rational>::variable(1, 4, 0), F), F[0]);
}

TEST(Compose, SquareOfShiftedMap)
{
    auto F = vec1(poly1(4, {{1, 1}, {2, 1}}));
    EXPECT_EQ(compose(poly1(4, {{2, 1}}), F), poly1(4, {{2, 1}, {3, 2}, {4, 1}}));
}

TEST(Compose, KnownInverse)
{
    auto F = vec1(poly1(4, {{1, 1}, {2, 1}}));
    auto G = poly1(4, {{1, 1}, {2, -1}, {3, 2}, {4, -5}});
    EXPECT_EQ(compose(G, F), Series<Rational>::variable(1, 4, 0));
}

TEST(Compose, RejectsConstantTerm)
{
    auto F = vec1(poly1(4, {{0, 1}, {1, 1}}));
    EXPECT_THROW(compose(poly1(4, {{1, 1}}), F), domain_error);
}

TEST(Derivation, AppliesVectorField)
{
    Derivation<Rational> A(vec1(poly1(5, {{2, 1}})));
    EXPECT_EQ(A.apply(poly1(5, {{1, 1}})), poly1(5, {{2, 1}}));
    EXPECT_EQ(A.apply(poly1(5, {{2, 1}})), poly1(5, {{3, 2}}));

    Series<Rational> a1(2, 4), q(2, 4), want(2, 4);
    a1.add_term({0, 2}, 1);
    q.add_term({1, 0}, 1);
    want.add_term({0, 2}, 1);
    Derivation<Rational> B(SeriesVector<Rational>({a1, Series<Rational>(2, 4)}));
    EXPECT_EQ(B.apply(q), want);
}

TEST(ExpDerivation, ZeroTimeIsIdentity)
{
    Derivation<Rational> A(vec1(poly1(5, {{2, 3}, {4, 1}})));
    auto Q = vec1(poly1(5, {{1, 1}, {3, 2}}));
    EXPECT_EQ(exp_derivation(A, Rational(0), Q), Q);
}

TEST(ExpDerivation, UnitTimeHandExpansion)
{
    // z + z^2 + (z^2)(2z)/2 = z + z^2 + z^3
    Derivation<Rational> A(vec1(poly1(3, {{2, 1}})));
    auto Q = SeriesVector<Rational>::identity(1, 3);
    EXPECT_EQ(exp_derivation(A, Rational(1), Q), vec1(poly1(3, {{1, 1}, {2, 1}, {3, 1}})));
}

TEST(ExpDerivation, SymbolicTime)
{
    // A z = z^2 and A^2 z / 2 = z^3, so the z^3 coefficient is t^2.
    Derivation<Rational> A(vec1(poly1(3, {{2, 1}})));
    auto r = exp_derivation_symbolic(A, SeriesVector<Rational>::identity(1, 3));
    EXPECT_EQ(r[0].coeff({1}), RatPoly(1));
    EXPECT_EQ(r[0].coeff({2}), RatPoly::t());
    EXPECT_EQ(r[0].coeff({3}), RatPoly::monomial(2, 1));
    for (long k = -3; k <= 3; ++k)
        EXPECT_EQ(evaluate_at(r, Rational(k)), exp_derivation(A, Rational(k), SeriesVector<Rational>::identity(1, 3)));
}

TEST(ExpDerivation, RequiresOrderTwo)
{
    Derivation<Rational> A(vec1(poly1(3, {{1, 1}})));
    EXPECT_THROW(exp_derivation(A, Rational(1), SeriesVector<Rational>::identity(1, 3)), domain_error);
}

TEST(ExpDerivation, ComposesAlongTime)
{
    std::mt19937_64 rng(3);
    for (int round = 0; round < 5; ++round) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 2);
        Derivation<Rational> A(oracle::random_vector(rng, n, 5, 2));
        const auto z = SeriesVector<Rational>::identity(n, 5);
        const Rational s(1, 2), t(-2, 3);
        EXPECT_EQ(exp_derivation(A, s + t, z), compose(exp_derivation(A, t, z), exp_derivation(A, s, z)));
    }
}

TEST(ExpDerivation, TruncationConsistency)
{
    std::mt19937_64 rng(8);
    for (int round = 0; round < 5; ++round) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
        Derivation<Rational> A(oracle::random_vector(rng, n, 6, 2));
        auto full = exp_derivation(A, Rational(3, 2), SeriesVector<Rational>::identity(n, 6));
        for (unsigned m = 2; m < 6; ++m) {
            Derivation<Rational> Am(A.coeffs().truncated(m));
            EXPECT_EQ(full.truncated(m), exp_derivation(Am, Rational(3, 2), SeriesVector<Rational>::identity(n, m)));
        }
    }
}

TEST(DeltaInverse, Examples)
{
    EXPECT_EQ(delta_inverse(RatPoly(1)), RatPoly::t());
    EXPECT_EQ(delta_inverse(RatPoly::t()), RatPoly(std::vector<Rational>{0, Rational(-1, 2), Rational(1, 2)}));
    EXPECT_EQ(delta_inverse(RatPoly::monomial(2, 1)),
              RatPoly(std::vector<Rational>{0, Rational(1, 6), Rational(-1, 2), Rational(1, 3)}));
    EXPECT_TRUE(delta_inverse(RatPoly()).is_zero());
}

TEST(DeltaInverse, InvertsForwardDifference)
{
    std::mt19937_64 rng(2);
    for (int round = 0; round < 40; ++round) {
        std::vector<Rational> c(1 + rng() % 9);
        for (auto& x : c) {
            x = Rational(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4);
            x.canonicalize();
        }
        const RatPoly h(c);
        const auto g = delta_inverse(h);
        EXPECT_EQ(delta(g), h);
        EXPECT_TRUE(is_zero(g(Rational(0))));
        if (!h.is_zero()) {
            EXPECT_EQ(g.degree(), h.degree() + 1);
        }
    }
}

TEST(Interpolate, RecoversPolynomial)
{
    const RatPoly p(std::vector<Rational>{3, Rational(-1, 2), 0, Rational(2, 7)});
    std::vector<std::pair<Rational, Rational>> pts;
    for (int k = -1; k <= 2; ++k) pts.emplace_back(Rational(k), p(Rational(k)));
    EXPECT_EQ(interpolate(pts), p);
}

TEST(RatPoly2, SumSubstitutionExpandsBinomially)
{
    auto p = RatPoly2::sum_substitution(RatPoly::monomial(2, 1));
    auto t = RatPoly2::in_t(RatPoly::t()), s = RatPoly2::in_s(RatPoly::t());
    EXPECT_EQ(p, t * t + Rational(2) * t * s + s * s);
}

TEST(Bernoulli, Numbers)
{
    EXPECT_EQ(bernoulli_number(0), Rational(1));
    EXPECT_EQ(bernoulli_number(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli_number(3), Rational(0));
    const auto ref = oracle::bernoulli_by_recurrence(15);
    for (unsigned n = 0; n < 15; ++n) EXPECT_EQ(bernoulli_number(n), ref[n]) << n;
}

TEST(Bernoulli, Polynomials)
{
    EXPECT_EQ(bernoulli_polynomial(0), RatPoly(1));
    EXPECT_EQ(bernoulli_polynomial(1), RatPoly(std::vector<Rational>{Rational(-1, 2), 1}));
    EXPECT_EQ(bernoulli_polynomial(2), RatPoly(std::vector<Rational>{Rational(1, 6), -1, 1}));
    for (unsigned n = 0; n <= 12; ++n) {
        const auto B = bernoulli_polynomial(n);
        EXPECT_EQ(B, oracle::bernoulli_poly_by_sum(n)) << n;
        EXPECT_EQ(B(Rational(0)), bernoulli_number(n)) << n;
        EXPECT_EQ(delta(B), n == 0 ? RatPoly() : RatPoly::monomial(n - 1, n)) << n;
        EXPECT_EQ(bernoulli_polynomial(n + 1).derivative(), B * Rational(n + 1)) << n;
    }
}
