#pragma once

#include "paramsynth/ratfunc/instantiation.h"
#include "paramsynth/ratfunc/monomial.h"
#include "paramsynth/ratfunc/rational.h"

#include <set>
#include <string>
#include <vector>

namespace paramsynth {

struct Term {
    Rational coefficient;
    Monomial monomial;

    bool operator==(Term const& other) const = default;
};

// Canonical sparse polynomial over Q: nonzero coefficients, monomials strictly increasing.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(Rational const& constant);  // NOLINT: implicit lift of constants is intended
    Polynomial(Rational const& coefficient, Monomial monomial);
    static Polynomial variable(VariableId var);
    static Polynomial fromTerms(std::vector<Term> terms);  // normalizes arbitrary input

    std::vector<Term> const& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    bool isOne() const;
    bool isConstant() const;
    Rational constantValue() const;  // coefficient of the unit monomial
    Term const& leadingTerm() const { return terms_.back(); }
    Term const& trailingTerm() const { return terms_.front(); }
    std::size_t termCount() const { return terms_.size(); }

    std::uint32_t totalDegree() const;
    std::uint32_t degree(VariableId var) const;
    std::set<VariableId> variables() const;
    bool contains(VariableId var) const;
    bool isMultilinear() const;

    Polynomial operator+(Polynomial const& other) const;
    Polynomial operator-(Polynomial const& other) const;
    Polynomial operator-() const;
    Polynomial operator*(Polynomial const& other) const;
    Polynomial operator*(Rational const& factor) const;
    Polynomial& operator+=(Polynomial const& other) { return *this = *this + other; }
    Polynomial& operator-=(Polynomial const& other) { return *this = *this - other; }
    Polynomial& operator*=(Polynomial const& other) { return *this = *this * other; }
    Polynomial pow(unsigned exponent) const;

    bool operator==(Polynomial const& other) const = default;

    Rational evaluate(Instantiation const& point) const;
    double evaluateApprox(std::vector<double> const& point) const;

    // Coefficients with respect to var: result[i] multiplies var^i and is free of var.
    std::vector<Polynomial> coefficientsIn(VariableId var) const;
    static Polynomial fromCoefficients(VariableId var, std::vector<Polynomial> const& coefficients);

    // Multivariate division by the monomial order; remainder is zero iff the division is exact.
    std::pair<Polynomial, Polynomial> divide(Polynomial const& divisor) const;
    Polynomial divideExact(Polynomial const& divisor) const;  // throws InvalidArgument if inexact

    std::size_t hash() const;
    std::string toString(VariablePool const& pool) const;

private:
    std::vector<Term> terms_;
};

Polynomial operator*(Rational const& factor, Polynomial const& poly);

}  // namespace paramsynth
