#include "paramsynth/smt/formula.h"

#include "paramsynth/errors.h"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace paramsynth::smt {

std::string toString(Comparison comparison) {
    switch (comparison) {
        case Comparison::Less:
            return "<";
        case Comparison::LessEqual:
            return "<=";
        case Comparison::Equal:
            return "=";
        case Comparison::NotEqual:
            return "!=";
        case Comparison::GreaterEqual:
            return ">=";
        case Comparison::Greater:
            return ">";
    }
    return "?";
}

Comparison flip(Comparison comparison) {
    switch (comparison) {
        case Comparison::Less:
            return Comparison::Greater;
        case Comparison::LessEqual:
            return Comparison::GreaterEqual;
        case Comparison::GreaterEqual:
            return Comparison::LessEqual;
        case Comparison::Greater:
            return Comparison::Less;
        default:
            return comparison;
    }
}

Comparison negate(Comparison comparison) {
    switch (comparison) {
        case Comparison::Less:
            return Comparison::GreaterEqual;
        case Comparison::LessEqual:
            return Comparison::Greater;
        case Comparison::Equal:
            return Comparison::NotEqual;
        case Comparison::NotEqual:
            return Comparison::Equal;
        case Comparison::GreaterEqual:
            return Comparison::Less;
        case Comparison::Greater:
            return Comparison::LessEqual;
    }
    return comparison;
}

namespace {

bool holds(Rational const& value, Comparison comparison) {
    int sign = sgn(value);
    switch (comparison) {
        case Comparison::Less:
            return sign < 0;
        case Comparison::LessEqual:
            return sign <= 0;
        case Comparison::Equal:
            return sign == 0;
        case Comparison::NotEqual:
            return sign != 0;
        case Comparison::GreaterEqual:
            return sign >= 0;
        case Comparison::Greater:
            return sign > 0;
    }
    return false;
}

}  // namespace

Formula Formula::constraint(Polynomial polynomial, Comparison comparison) {
    if (polynomial.isConstant()) {
        return holds(polynomial.constantValue(), comparison) ? top() : bottom();
    }
    Formula result(Kind::Constraint);
    auto node = std::make_shared<Node>();
    node->polynomial = std::move(polynomial);
    node->comparison = comparison;
    result.node_ = std::move(node);
    return result;
}

Formula Formula::boolVar(std::string name) {
    Formula result(Kind::BoolVar);
    auto node = std::make_shared<Node>();
    node->name = std::move(name);
    result.node_ = std::move(node);
    return result;
}

Formula Formula::negation(Formula const& inner) {
    switch (inner.kind_) {
        case Kind::True:
            return bottom();
        case Kind::False:
            return top();
        case Kind::Not:
            return inner.children().front();
        case Kind::Constraint:
            return constraint(inner.polynomial(), negate(inner.comparison()));
        default:
            break;
    }
    Formula result(Kind::Not);
    auto node = std::make_shared<Node>();
    node->children.push_back(inner);
    result.node_ = std::move(node);
    return result;
}

Formula Formula::conjunction(std::vector<Formula> const& parts) {
    std::vector<Formula> flat;
    for (auto const& part : parts) {
        if (part.isFalse()) {
            return bottom();
        }
        if (part.isTrue()) {
            continue;
        }
        if (part.kind() == Kind::And) {
            flat.insert(flat.end(), part.children().begin(), part.children().end());
        } else {
            flat.push_back(part);
        }
    }
    if (flat.size() <= 1) {
        return flat.empty() ? top() : flat.front();
    }
    Formula result(Kind::And);
    auto node = std::make_shared<Node>();
    node->children = std::move(flat);
    result.node_ = std::move(node);
    return result;
}

Formula Formula::disjunction(std::vector<Formula> const& parts) {
    std::vector<Formula> flat;
    for (auto const& part : parts) {
        if (part.isTrue()) {
            return top();
        }
        if (part.isFalse()) {
            continue;
        }
        if (part.kind() == Kind::Or) {
            flat.insert(flat.end(), part.children().begin(), part.children().end());
        } else {
            flat.push_back(part);
        }
    }
    if (flat.size() <= 1) {
        return flat.empty() ? bottom() : flat.front();
    }
    Formula result(Kind::Or);
    auto node = std::make_shared<Node>();
    node->children = std::move(flat);
    result.node_ = std::move(node);
    return result;
}

bool Formula::evaluate(Instantiation const& point, std::map<std::string, bool> const& booleans) const {
    switch (kind_) {
        case Kind::True:
            return true;
        case Kind::False:
            return false;
        case Kind::Constraint:
            return holds(polynomial().evaluate(point), comparison());
        case Kind::BoolVar: {
            auto it = booleans.find(name());
            return it != booleans.end() && it->second;
        }
        case Kind::Not:
            return !children().front().evaluate(point, booleans);
        case Kind::And:
            return std::all_of(children().begin(), children().end(),
                               [&](Formula const& f) { return f.evaluate(point, booleans); });
        case Kind::Or:
            return std::any_of(children().begin(), children().end(),
                               [&](Formula const& f) { return f.evaluate(point, booleans); });
    }
    return false;
}

std::set<VariableId> Formula::variables() const {
    std::set<VariableId> result;
    if (kind_ == Kind::Constraint) {
        result = polynomial().variables();
    }
    for (auto const& child : node_->children) {
        auto inner = child.variables();
        result.insert(inner.begin(), inner.end());
    }
    return result;
}

std::set<std::string> Formula::booleanVariables() const {
    std::set<std::string> result;
    if (kind_ == Kind::BoolVar) {
        result.insert(name());
    }
    for (auto const& child : node_->children) {
        auto inner = child.booleanVariables();
        result.insert(inner.begin(), inner.end());
    }
    return result;
}

std::size_t Formula::constraintCount() const {
    std::size_t count = kind_ == Kind::Constraint ? 1 : 0;
    for (auto const& child : node_->children) {
        count += child.constraintCount();
    }
    return count;
}

bool Formula::operator==(Formula const& other) const {
    if (kind_ != other.kind_) {
        return false;
    }
    switch (kind_) {
        case Kind::True:
        case Kind::False:
            return true;
        case Kind::Constraint:
            return comparison() == other.comparison() && polynomial() == other.polynomial();
        case Kind::BoolVar:
            return name() == other.name();
        default:
            return children() == other.children();
    }
}

std::string smtNumeral(Rational const& value) {
    Rational magnitude = abs(value);
    std::string body;
    if (magnitude.get_den() == 1) {
        body = magnitude.get_num().get_str(10) + ".0";
    } else {
        body = "(/ " + magnitude.get_num().get_str(10) + ".0 " + magnitude.get_den().get_str(10) + ".0)";
    }
    return sgn(value) < 0 ? "(- " + body + ")" : body;
}

std::string smtSymbol(std::string const& name) {
    static std::set<std::string> const reserved{
        "and", "or", "not", "let", "true", "false", "assert", "ite", "distinct", "forall", "exists",
        "par", "as", "_", "!", "abs", "div", "mod", "to_real", "to_int", "is_int", "root-obj", "Real", "Int",
        "Bool", "NUMERAL", "DECIMAL", "STRING", "BINARY", "HEXADECIMAL"};
    auto simpleChar = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("~!@$%^&*_+=<>.?/-").find(c) !=
                                                                  std::string_view::npos;
    };
    bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name.front())) &&
                  std::all_of(name.begin(), name.end(), simpleChar) && !reserved.count(name);
    return simple ? name : "|" + name + "|";
}

std::string smtPolynomial(Polynomial const& polynomial, VariablePool const& pool) {
    if (polynomial.isZero()) {
        return "0.0";
    }
    std::vector<std::string> terms;
    for (auto const& term : polynomial.terms()) {
        std::vector<std::string> factors;
        if (term.coefficient != 1 || term.monomial.isConstant()) {
            factors.push_back(smtNumeral(term.coefficient));
        }
        for (auto const& [var, exponent] : term.monomial.factors()) {
            for (std::uint32_t i = 0; i < exponent; ++i) {
                factors.push_back(smtSymbol(pool.name(var)));
            }
        }
        if (factors.size() == 1) {
            terms.push_back(factors.front());
        } else {
            std::string product = "(*";
            for (auto const& f : factors) {
                product += " " + f;
            }
            terms.push_back(product + ")");
        }
    }
    if (terms.size() == 1) {
        return terms.front();
    }
    std::string sum = "(+";
    for (auto const& t : terms) {
        sum += " " + t;
    }
    return sum + ")";
}

std::string Formula::toSmtLib(VariablePool const& pool) const {
    auto list = [&](std::string head) {
        for (auto const& child : children()) {
            head += " " + child.toSmtLib(pool);
        }
        return head + ")";
    };
    switch (kind_) {
        case Kind::True:
            return "true";
        case Kind::False:
            return "false";
        case Kind::Constraint: {
            std::string poly = smtPolynomial(polynomial(), pool);
            if (comparison() == Comparison::NotEqual) {
                return "(not (= " + poly + " 0.0))";
            }
            return "(" + smt::toString(comparison()) + " " + poly + " 0.0)";
        }
        case Kind::BoolVar:
            return smtSymbol(name());
        case Kind::Not:
            return list("(not");
        case Kind::And:
            return list("(and");
        case Kind::Or:
            return list("(or");
    }
    return "";
}

std::string Formula::toString(VariablePool const& pool) const {
    auto joined = [&](std::string const& op) {
        std::string result;
        for (auto const& child : children()) {
            if (!result.empty()) {
                result += " " + op + " ";
            }
            bool nested = child.kind() == Kind::And || child.kind() == Kind::Or;
            result += nested ? "(" + child.toString(pool) + ")" : child.toString(pool);
        }
        return result;
    };
    switch (kind_) {
        case Kind::True:
            return "true";
        case Kind::False:
            return "false";
        case Kind::Constraint:
            return polynomial().toString(pool) + " " + smt::toString(comparison()) + " 0";
        case Kind::BoolVar:
            return name();
        case Kind::Not:
            return "not (" + children().front().toString(pool) + ")";
        case Kind::And:
            return joined("and");
        case Kind::Or:
            return joined("or");
    }
    return "";
}

Formula operator&&(Formula const& a, Formula const& b) {
    return Formula::conjunction({a, b});
}

Formula operator||(Formula const& a, Formula const& b) {
    return Formula::disjunction({a, b});
}

Formula operator!(Formula const& a) {
    return Formula::negation(a);
}

Formula compare(Polynomial const& lhs, Comparison comparison, Polynomial const& rhs) {
    return Formula::constraint(lhs - rhs, comparison);
}

namespace {

Formula fractionConstraint(Polynomial const& numerator, Comparison comparison, Polynomial const& denominator) {
    if (denominator.isConstant()) {
        Rational d = denominator.constantValue();
        return Formula::constraint(numerator, sgn(d) > 0 ? comparison : flip(comparison));
    }
    Formula defined = Formula::constraint(denominator, Comparison::NotEqual);
    if (comparison == Comparison::Equal || comparison == Comparison::NotEqual) {
        return Formula::constraint(numerator, comparison) && defined;
    }
    Formula positive = Formula::constraint(denominator, Comparison::Greater) && Formula::constraint(numerator, comparison);
    Formula negative = Formula::constraint(denominator, Comparison::Less) && Formula::constraint(numerator, flip(comparison));
    return defined && (positive || negative);
}

}  // namespace

Formula transformRfConstraint(RationalFunction const& f, Comparison comparison, Rational const& c) {
    return fractionConstraint(f.numerator() - f.denominator() * c, comparison, f.denominator());
}

Formula transformRfConstraint(RationalFunction const& lhs, Comparison comparison, RationalFunction const& rhs) {
    RationalFunction difference = lhs - rhs;
    return fractionConstraint(difference.numerator(), comparison, difference.denominator());
}

}  // namespace paramsynth::smt
