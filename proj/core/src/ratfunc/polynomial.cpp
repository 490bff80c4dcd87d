#include "paramsynth/ratfunc/polynomial.h"

#include "paramsynth/errors.h"

#include <algorithm>
#include <cmath>

namespace paramsynth {

Polynomial::Polynomial(Rational const& constant) {
    if (constant != 0) {
        terms_.push_back(Term{constant, Monomial()});
    }
}

Polynomial::Polynomial(Rational const& coefficient, Monomial monomial) {
    if (coefficient != 0) {
        terms_.push_back(Term{coefficient, std::move(monomial)});
    }
}

Polynomial Polynomial::variable(VariableId var) {
    return Polynomial(Rational(1), Monomial::variable(var));
}

Polynomial Polynomial::fromTerms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](Term const& a, Term const& b) { return a.monomial < b.monomial; });
    Polynomial result;
    result.terms_.reserve(terms.size());
    for (auto& term : terms) {
        if (!result.terms_.empty() && result.terms_.back().monomial == term.monomial) {
            result.terms_.back().coefficient += term.coefficient;
            if (result.terms_.back().coefficient == 0) {
                result.terms_.pop_back();
            }
        } else if (term.coefficient != 0) {
            result.terms_.push_back(std::move(term));
        }
    }
    return result;
}

bool Polynomial::isOne() const {
    return terms_.size() == 1 && terms_.front().monomial.isConstant() && terms_.front().coefficient == 1;
}

bool Polynomial::isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.isConstant());
}

Rational Polynomial::constantValue() const {
    if (!terms_.empty() && terms_.front().monomial.isConstant()) {
        return terms_.front().coefficient;
    }
    return Rational(0);
}

std::uint32_t Polynomial::totalDegree() const {
    return terms_.empty() ? 0 : terms_.back().monomial.totalDegree();
}

std::uint32_t Polynomial::degree(VariableId var) const {
    std::uint32_t result = 0;
    for (auto const& term : terms_) {
        result = std::max(result, term.monomial.degree(var));
    }
    return result;
}

std::set<VariableId> Polynomial::variables() const {
    std::set<VariableId> result;
    for (auto const& term : terms_) {
        for (auto const& factor : term.monomial.factors()) {
            result.insert(factor.first);
        }
    }
    return result;
}

bool Polynomial::contains(VariableId var) const {
    return std::any_of(terms_.begin(), terms_.end(), [var](Term const& t) { return t.monomial.contains(var); });
}

bool Polynomial::isMultilinear() const {
    return std::all_of(terms_.begin(), terms_.end(), [](Term const& t) { return t.monomial.isMultilinear(); });
}

Polynomial Polynomial::operator+(Polynomial const& other) const {
    if (other.isZero()) {
        return *this;
    }
    if (isZero()) {
        return other;
    }
    Polynomial result;
    result.terms_.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end() || (a != terms_.end() && a->monomial < b->monomial)) {
            result.terms_.push_back(*a++);
        } else if (a == terms_.end() || b->monomial < a->monomial) {
            result.terms_.push_back(*b++);
        } else {
            Rational sum = a->coefficient + b->coefficient;
            if (sum != 0) {
                result.terms_.push_back(Term{std::move(sum), a->monomial});
            }
            ++a;
            ++b;
        }
    }
    return result;
}

Polynomial Polynomial::operator-() const {
    Polynomial result = *this;
    for (auto& term : result.terms_) {
        term.coefficient = -term.coefficient;
    }
    return result;
}

Polynomial Polynomial::operator-(Polynomial const& other) const {
    return *this + (-other);
}

Polynomial Polynomial::operator*(Rational const& factor) const {
    if (factor == 0) {
        return Polynomial();
    }
    Polynomial result = *this;
    for (auto& term : result.terms_) {
        term.coefficient *= factor;
    }
    return result;
}

Polynomial Polynomial::operator*(Polynomial const& other) const {
    if (isZero() || other.isZero()) {
        return Polynomial();
    }
    if (other.isConstant()) {
        return *this * other.terms_.front().coefficient;
    }
    if (isConstant()) {
        return other * terms_.front().coefficient;
    }
    std::vector<Term> products;
    products.reserve(terms_.size() * other.terms_.size());
    for (auto const& a : terms_) {
        for (auto const& b : other.terms_) {
            products.push_back(Term{a.coefficient * b.coefficient, a.monomial * b.monomial});
        }
    }
    return fromTerms(std::move(products));
}

Polynomial operator*(Rational const& factor, Polynomial const& poly) {
    return poly * factor;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result(Rational(1));
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1U) {
            result = result * base;
        }
        exponent >>= 1U;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return result;
}

Rational Polynomial::evaluate(Instantiation const& point) const {
    Rational result(0);
    for (auto const& term : terms_) {
        Rational value = term.coefficient;
        for (auto const& [var, exp] : term.monomial.factors()) {
            Rational const& x = point.at(var);
            if (exp == 1) {
                value *= x;
            } else {
                value *= power(x, exp);
            }
        }
        result += value;
    }
    return result;
}

double Polynomial::evaluateApprox(std::vector<double> const& point) const {
    double result = 0.0;
    for (auto const& term : terms_) {
        double value = term.coefficient.get_d();
        for (auto const& [var, exp] : term.monomial.factors()) {
            if (var >= point.size()) {
                throw MissingParameter("no value for parameter id " + std::to_string(var));
            }
            value *= exp == 1 ? point[var] : std::pow(point[var], static_cast<double>(exp));
        }
        result += value;
    }
    return result;
}

std::vector<Polynomial> Polynomial::coefficientsIn(VariableId var) const {
    std::vector<std::vector<Term>> buckets(degree(var) + 1);
    for (auto const& term : terms_) {
        buckets[term.monomial.degree(var)].push_back(Term{term.coefficient, term.monomial.withoutVariable(var)});
    }
    std::vector<Polynomial> result;
    result.reserve(buckets.size());
    for (auto& bucket : buckets) {
        result.push_back(fromTerms(std::move(bucket)));
    }
    return result;
}

Polynomial Polynomial::fromCoefficients(VariableId var, std::vector<Polynomial> const& coefficients) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        Monomial power = Monomial::variable(var, static_cast<std::uint32_t>(i));
        for (auto const& term : coefficients[i].terms_) {
            terms.push_back(Term{term.coefficient, term.monomial * power});
        }
    }
    return fromTerms(std::move(terms));
}

std::pair<Polynomial, Polynomial> Polynomial::divide(Polynomial const& divisor) const {
    if (divisor.isZero()) {
        throw DivisionByZeroFunction("polynomial division by zero");
    }
    if (divisor.isConstant()) {
        return {*this * (Rational(1) / divisor.terms_.front().coefficient), Polynomial()};
    }
    Term const& lead = divisor.leadingTerm();
    std::vector<Term> quotient;
    std::vector<Term> remainder;
    Polynomial rest = *this;
    while (!rest.isZero()) {
        Term const& top = rest.leadingTerm();
        if (auto factor = top.monomial.divide(lead.monomial)) {
            Term step{top.coefficient / lead.coefficient, std::move(*factor)};
            rest = rest - divisor * Polynomial(step.coefficient, step.monomial);
            quotient.push_back(std::move(step));
        } else {
            remainder.push_back(top);
            rest.terms_.pop_back();
        }
    }
    return {fromTerms(std::move(quotient)), fromTerms(std::move(remainder))};
}

Polynomial Polynomial::divideExact(Polynomial const& divisor) const {
    auto [quotient, remainder] = divide(divisor);
    if (!remainder.isZero()) {
        throw InvalidArgument("polynomial division is not exact");
    }
    return quotient;
}

std::size_t Polynomial::hash() const {
    std::size_t seed = terms_.size();
    for (auto const& term : terms_) {
        std::size_t h = term.monomial.hash() ^ (std::hash<std::string>{}(term.coefficient.get_str()) << 1);
        seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
}

std::string Polynomial::toString(VariablePool const& pool) const {
    if (terms_.empty()) {
        return "0";
    }
    std::string result;
    bool first = true;
    for (auto const& term : terms_) {
        Rational magnitude = abs(term.coefficient);
        bool negative = term.coefficient < 0;
        if (first) {
            if (negative) {
                result += '-';
            }
        } else {
            result += negative ? " - " : " + ";
        }
        first = false;
        if (term.monomial.isConstant()) {
            result += magnitude.get_str();
        } else if (magnitude == 1) {
            result += term.monomial.toString(pool);
        } else {
            result += magnitude.get_str() + "*" + term.monomial.toString(pool);
        }
    }
    return result;
}

}  // namespace paramsynth
