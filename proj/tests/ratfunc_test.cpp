#include "support.h"

#include "paramsynth/errors.h"
#include "paramsynth/ratfunc/gcd.h"

#include <gtest/gtest.h>

using namespace paramsynth;
using namespace paramsynth::testing;

namespace {

Polynomial randomPolynomial(std::mt19937_64& rng, std::size_t vars, int maxTerms = 4, int maxExp = 2) {
    std::uniform_int_distribution<int> termCount(1, maxTerms);
    std::uniform_int_distribution<int> exp(0, maxExp);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::vector<Term> terms;
    int count = termCount(rng);
    for (int i = 0; i < count; ++i) {
        std::vector<Monomial::Factor> factors;
        for (VariableId v = 0; v < vars; ++v) {
            factors.emplace_back(v, exp(rng));
        }
        int c = coeff(rng);
        Rational coefficient(c == 0 ? 1 : c, 1 + (i % 3));
        coefficient.canonicalize();
        terms.push_back(Term{coefficient, Monomial::fromFactors(factors)});
    }
    return Polynomial::fromTerms(terms);
}

RationalFunction randomFunction(std::mt19937_64& rng, std::size_t vars) {
    Polynomial den = randomPolynomial(rng, vars, 3, 1);
    if (den.isZero()) {
        den = Polynomial(Rational(1));
    }
    return RationalFunction(randomPolynomial(rng, vars), den);
}

class RatfuncTest : public ::testing::Test {
protected:
    VariablePool pool{std::vector<std::string>{"p", "q", "r"}};
    RationalFunction f(std::string const& text) { return rf(text, pool); }
};

}  // namespace

TEST_F(RatfuncTest, MonomialOrderIsGradedWithEarlierVariablesFirst) {
    auto p = Monomial::variable(0);
    auto q = Monomial::variable(1);
    EXPECT_LT(Monomial(), p);
    EXPECT_LT(p, q);
    EXPECT_LT(q, p * p);
    EXPECT_LT(p * p, p * q);
    EXPECT_LT(p * q, q * q);
    EXPECT_EQ((p * q).divide(q), p);
    EXPECT_FALSE(p.divide(q).has_value());
}

TEST_F(RatfuncTest, PolynomialRingOperations) {
    auto p = f("p").numerator();
    auto q = f("q").numerator();
    auto oneMinusP = f("1-p").numerator();
    EXPECT_TRUE((p + oneMinusP).isOne());
    EXPECT_EQ((p * q).toString(pool), "p*q");
    Polynomial product = oneMinusP * f("1-q").numerator();
    EXPECT_EQ(product.toString(pool), "1 - p - q + p*q");

    std::mt19937_64 rng(7);
    for (int i = 0; i < 5; ++i) {
        auto u = randomPoint(rng, 2);
        EXPECT_EQ(product.evaluate(u), (1 - u.at(0)) * (1 - u.at(1)));
    }
}

TEST_F(RatfuncTest, CancellationOnDivision) {
    auto stays = f("q") / f("1 - q*q");
    EXPECT_EQ(stays.toString(pool), "q/(1 - q^2)");

    auto reduced = f("q - q^2") / f("1 - q^2");
    EXPECT_EQ(reduced, f("q/(1+q)"));
    EXPECT_EQ(reduced.toString(pool), "q/(1 + q)");

    auto g = f("1 - p + p*q");
    EXPECT_TRUE((g / g).isOne());
    EXPECT_THROW(g / f("0"), DivisionByZeroFunction);
}

TEST_F(RatfuncTest, EvaluateExamples) {
    auto die = f("p*(1-q)*(1-p)/(1-p*q)");
    EXPECT_EQ(*die.evaluate(point({"2/5", "7/10"})), R("1/10"));
    EXPECT_EQ(*die.evaluate(point({"1/2", "1/2"})), R("1/6"));
    EXPECT_EQ(*f("1-p+p*q").evaluate(point({"1/2", "3/10"})), R("13/20"));
    EXPECT_FALSE(f("1/p").evaluate(point({"0"})).has_value());
    EXPECT_THROW(f("q").evaluate(point({"1/2"})), MissingParameter);
}

TEST_F(RatfuncTest, SemanticEquality) {
    EXPECT_TRUE(semanticallyEqual(f("(q-q^2)/(1-q^2)"), f("q/(1+q)")));
    EXPECT_FALSE(semanticallyEqual(f("p"), f("q")));
    EXPECT_TRUE(semanticallyEqual(f("0"), RationalFunction(Polynomial(), f("1+p").numerator())));
}

TEST_F(RatfuncTest, Stats) {
    EXPECT_EQ(f("1-p+p*q").stats(), (FunctionStats{2, 0, 3, 1}));
    EXPECT_EQ(f("1").stats(), (FunctionStats{0, 0, 1, 1}));
    auto die = f("p*(1-q)*(1-p)/(1-p*q)");
    EXPECT_EQ(die.stats(), (FunctionStats{3, 2, 4, 2}));
    EXPECT_EQ(die.toString(pool), "(p - p^2 - p*q + p^2*q)/(1 - p*q)");
}

TEST_F(RatfuncTest, Multilinearity) {
    EXPECT_TRUE(f("p*q").isMultilinear());
    EXPECT_FALSE(f("p^2").isMultilinear());
    EXPECT_TRUE(isLocallyMonotoneForm(f("1/(1+p)")));
}

TEST_F(RatfuncTest, DecimalsAreExact) {
    EXPECT_EQ(f("0.4"), f("2/5"));
    EXPECT_EQ(R("0.125"), R("1/8"));
    EXPECT_EQ(R("-1.5"), R("-3/2"));
}

TEST_F(RatfuncTest, ParserReportsColumns) {
    try {
        parseExpression("p + * q", pool);
        FAIL() << "expected a parse error";
    } catch (ParseError const& e) {
        EXPECT_EQ(e.column(), 5u);
    }
    EXPECT_THROW(parseExpression("p + x", pool), ParseError);
    EXPECT_THROW(parseExpression("(p", pool), ParseError);
    EXPECT_THROW(parseExpression("1/0", pool), ParseError);
    EXPECT_THROW(parseExpression("", pool), ParseError);
}

TEST_F(RatfuncTest, GcdOfSharedFactor) {
    auto a = f("(1-q)*(1+q)").numerator();
    auto b = f("q*(1-q)").numerator();
    EXPECT_EQ(gcd(a, b), f("1-q").numerator());
    EXPECT_TRUE(gcd(f("p").numerator(), f("q").numerator()).isOne());
}

TEST_F(RatfuncTest, GcdRecoversRandomCommonFactors) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        Polynomial common = randomPolynomial(rng, 3, 3, 1);
        Polynomial a = randomPolynomial(rng, 3, 3, 2);
        Polynomial b = randomPolynomial(rng, 3, 3, 2);
        if (common.isZero() || a.isZero() || b.isZero()) {
            continue;
        }
        Polynomial g = gcd(common * a, common * b);
        EXPECT_TRUE((common * a).divide(g).second.isZero());
        EXPECT_TRUE((common * b).divide(g).second.isZero());
        EXPECT_TRUE(g.divide(common).second.isZero()) << g.toString(pool) << " vs " << common.toString(pool);
    }
}

TEST_F(RatfuncTest, EvaluationIsAHomomorphism) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = randomFunction(rng, 3);
        auto b = randomFunction(rng, 3);
        auto u = randomPoint(rng, 3, Rational(-2), Rational(2));
        auto av = a.evaluate(u);
        auto bv = b.evaluate(u);
        if (!av || !bv) {
            continue;
        }
        EXPECT_EQ(*(a + b).evaluate(u), *av + *bv);
        EXPECT_EQ(*(a - b).evaluate(u), *av - *bv);
        EXPECT_EQ(*(a * b).evaluate(u), *av * *bv);
        if (!b.isZero() && *bv != 0) {
            auto quotient = (a / b).evaluate(u);
            ASSERT_TRUE(quotient.has_value());
            EXPECT_EQ(*quotient, *av / *bv);
        }
    }
}

TEST_F(RatfuncTest, AdditiveInverseIsEmpty) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = randomPolynomial(rng, 3);
        EXPECT_TRUE((a + (-a)).terms().empty());
    }
}

TEST_F(RatfuncTest, SemanticEqualityIsAnEquivalence) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = randomFunction(rng, 2);
        Polynomial scale = randomPolynomial(rng, 2, 2, 1);
        if (scale.isZero()) {
            continue;
        }
        RationalFunction b(a.numerator() * scale, a.denominator() * scale);
        RationalFunction c(b.numerator() * Rational(3), b.denominator() * Rational(3));
        EXPECT_TRUE(semanticallyEqual(a, a));
        EXPECT_EQ(semanticallyEqual(a, b), semanticallyEqual(b, a));
        EXPECT_TRUE(semanticallyEqual(a, b));
        EXPECT_TRUE(semanticallyEqual(b, c));
        EXPECT_TRUE(semanticallyEqual(a, c));
    }
}

TEST_F(RatfuncTest, CancellationPreservesSemantics) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = randomFunction(rng, 2);
        Polynomial common = randomPolynomial(rng, 2, 2, 1);
        if (common.isZero()) {
            continue;
        }
        RationalFunction padded(a.numerator() * common, a.denominator() * common);
        RationalFunction reduced = padded.simplified();
        EXPECT_LE(reduced.stats().denominatorTerms + reduced.stats().numeratorTerms,
                  padded.stats().denominatorTerms + padded.stats().numeratorTerms);
        for (int i = 0; i < 20; ++i) {
            auto u = randomPoint(rng, 2, Rational(-3), Rational(3));
            auto before = padded.evaluate(u);
            if (!before) {
                continue;
            }
            auto after = reduced.evaluate(u);
            ASSERT_TRUE(after.has_value());
            EXPECT_EQ(*before, *after);
        }
    }
}

TEST_F(RatfuncTest, PrintingRoundTrips) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = randomFunction(rng, 3);
        auto text = a.toString(pool);
        EXPECT_EQ(parseExpression(text, pool), a.simplified()) << text;
    }
}
