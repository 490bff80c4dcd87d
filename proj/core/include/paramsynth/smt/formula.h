#pragma once

#include "paramsynth/ratfunc/rational_function.h"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace paramsynth::smt {

enum class Comparison { Less, LessEqual, Equal, NotEqual, GreaterEqual, Greater };

std::string toString(Comparison comparison);
Comparison flip(Comparison comparison);    // a ~ b  iff  -a flip(~) -b
Comparison negate(Comparison comparison);  // not (a ~ b)  iff  a negate(~) b

// Boolean combination of polynomial constraints "p ~ 0". Immutable; children are shared.
// The smart constructors fold constants, so a constraint over a constant polynomial never
// survives as a leaf.
class Formula {
public:
    enum class Kind { True, False, Constraint, BoolVar, Not, And, Or };

    Formula() : Formula(Kind::True) {}

    static Formula top() { return Formula(Kind::True); }
    static Formula bottom() { return Formula(Kind::False); }
    static Formula constraint(Polynomial polynomial, Comparison comparison);
    static Formula boolVar(std::string name);
    static Formula negation(Formula const& inner);
    static Formula conjunction(std::vector<Formula> const& parts);
    static Formula disjunction(std::vector<Formula> const& parts);

    Kind kind() const { return kind_; }
    bool isTrue() const { return kind_ == Kind::True; }
    bool isFalse() const { return kind_ == Kind::False; }
    Polynomial const& polynomial() const { return node_->polynomial; }
    Comparison comparison() const { return node_->comparison; }
    std::string const& name() const { return node_->name; }
    std::vector<Formula> const& children() const { return node_->children; }

    // Exact truth value; unassigned Boolean variables count as false.
    bool evaluate(Instantiation const& point, std::map<std::string, bool> const& booleans = {}) const;

    std::set<VariableId> variables() const;
    std::set<std::string> booleanVariables() const;
    std::size_t constraintCount() const;

    std::string toSmtLib(VariablePool const& pool) const;
    std::string toString(VariablePool const& pool) const;

    bool operator==(Formula const& other) const;

private:
    struct Node {
        Polynomial polynomial;
        Comparison comparison = Comparison::Equal;
        std::string name;
        std::vector<Formula> children;
    };

    explicit Formula(Kind kind) : kind_(kind), node_(std::make_shared<Node>()) {}

    Kind kind_;
    std::shared_ptr<Node const> node_;
};

Formula operator&&(Formula const& a, Formula const& b);
Formula operator||(Formula const& a, Formula const& b);
Formula operator!(Formula const& a);

// lhs ~ rhs as a polynomial constraint.
Formula compare(Polynomial const& lhs, Comparison comparison, Polynomial const& rhs);

// g1/g2 ~ c turned into polynomial constraints. Equalities become g1 - c*g2 = 0 and g2 != 0;
// inequalities additionally case-split on the sign of g2. A constant positive denominator is
// multiplied through without a case split.
Formula transformRfConstraint(RationalFunction const& f, Comparison comparison, Rational const& c);

// lhs ~ rhs for rational functions, via the (unsimplified) difference lhs - rhs ~ 0.
Formula transformRfConstraint(RationalFunction const& lhs, Comparison comparison, RationalFunction const& rhs);

// SMT-LIB rendering helpers.
std::string smtNumeral(Rational const& value);
std::string smtSymbol(std::string const& name);
std::string smtPolynomial(Polynomial const& polynomial, VariablePool const& pool);

}  // namespace paramsynth::smt
