#pragma once

#include "paramsynth/ratfunc/polynomial.h"

#include <optional>
#include <string>

namespace paramsynth {

struct FunctionStats {
    std::uint32_t numeratorDegree;
    std::uint32_t denominatorDegree;
    std::size_t numeratorTerms;
    std::size_t denominatorTerms;

    bool operator==(FunctionStats const& other) const = default;
};

// Quotient of polynomials. The denominator is nonzero and scaled so that its trailing
// (lowest-order) coefficient is 1; for probability-like denominators such as 1 - p*q this
// keeps the constant term positive. Cancellation is explicit via simplify().
class RationalFunction {
public:
    RationalFunction() : denominator_(Rational(1)) {}
    RationalFunction(Rational const& constant);   // NOLINT
    RationalFunction(Polynomial numerator);       // NOLINT
    RationalFunction(Polynomial numerator, Polynomial denominator);  // throws DivisionByZeroFunction

    Polynomial const& numerator() const { return numerator_; }
    Polynomial const& denominator() const { return denominator_; }

    bool isZero() const { return numerator_.isZero(); }
    bool isOne() const { return numerator_ == denominator_; }
    bool isConstant() const;
    bool isPolynomial() const { return denominator_.isOne(); }
    Rational constantValue() const;  // requires isConstant()
    std::set<VariableId> variables() const;

    RationalFunction operator+(RationalFunction const& other) const;
    RationalFunction operator-(RationalFunction const& other) const;
    RationalFunction operator*(RationalFunction const& other) const;
    RationalFunction operator/(RationalFunction const& other) const;  // simplified result
    RationalFunction operator-() const;
    RationalFunction& operator+=(RationalFunction const& other) { return *this = *this + other; }
    RationalFunction& operator*=(RationalFunction const& other) { return *this = *this * other; }

    // Divides numerator and denominator by their gcd.
    RationalFunction simplified() const;

    // Structural identity of the stored representation.
    bool operator==(RationalFunction const& other) const = default;

    std::optional<Rational> evaluate(Instantiation const& point) const;  // nullopt when undefined
    double evaluateApprox(std::vector<double> const& point) const;

    FunctionStats stats() const;
    bool isMultilinear() const;

    std::size_t hash() const;
    std::string toString(VariablePool const& pool) const;

private:
    struct Unchecked {};
    RationalFunction(Polynomial numerator, Polynomial denominator, Unchecked);
    void normalize();

    Polynomial numerator_;
    Polynomial denominator_;
};

bool semanticallyEqual(RationalFunction const& a, RationalFunction const& b);

// Both polynomials multilinear; the per-state common-denominator part of local monotonicity
// is checked by the lifting module.
bool isLocallyMonotoneForm(RationalFunction const& f);

}  // namespace paramsynth
