#include "paramsynth/ratfunc/rational_function.h"

#include "paramsynth/errors.h"
#include "paramsynth/ratfunc/gcd.h"

namespace paramsynth {

RationalFunction::RationalFunction(Rational const& constant)
    : numerator_(constant), denominator_(Rational(1)) {}

RationalFunction::RationalFunction(Polynomial numerator)
    : numerator_(std::move(numerator)), denominator_(Rational(1)) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (denominator_.isZero()) {
        throw DivisionByZeroFunction("rational function with zero denominator");
    }
    normalize();
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator, Unchecked)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    normalize();
}

void RationalFunction::normalize() {
    if (numerator_.isZero()) {
        denominator_ = Polynomial(Rational(1));
        return;
    }
    Rational scale = denominator_.trailingTerm().coefficient;
    if (scale != 1) {
        Rational inverse = Rational(1) / scale;
        numerator_ = numerator_ * inverse;
        denominator_ = denominator_ * inverse;
    }
}

bool RationalFunction::isConstant() const {
    return numerator_.isConstant() && denominator_.isConstant();
}

Rational RationalFunction::constantValue() const {
    if (!isConstant()) {
        throw InvalidArgument("rational function is not constant");
    }
    return numerator_.constantValue() / denominator_.constantValue();
}

std::set<VariableId> RationalFunction::variables() const {
    auto result = numerator_.variables();
    auto more = denominator_.variables();
    result.insert(more.begin(), more.end());
    return result;
}

RationalFunction RationalFunction::operator+(RationalFunction const& other) const {
    if (other.isZero()) {
        return *this;
    }
    if (isZero()) {
        return other;
    }
    if (denominator_ == other.denominator_) {
        return RationalFunction(numerator_ + other.numerator_, denominator_, Unchecked{});
    }
    if (other.isPolynomial()) {
        return RationalFunction(numerator_ + other.numerator_ * denominator_, denominator_, Unchecked{});
    }
    if (isPolynomial()) {
        return RationalFunction(numerator_ * other.denominator_ + other.numerator_, other.denominator_, Unchecked{});
    }
    return RationalFunction(numerator_ * other.denominator_ + other.numerator_ * denominator_,
                            denominator_ * other.denominator_, Unchecked{});
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction result = *this;
    result.numerator_ = -result.numerator_;
    return result;
}

RationalFunction RationalFunction::operator-(RationalFunction const& other) const {
    return *this + (-other);
}

RationalFunction RationalFunction::operator*(RationalFunction const& other) const {
    if (isZero() || other.isZero()) {
        return RationalFunction();
    }
    if (isPolynomial() && other.isPolynomial()) {
        return RationalFunction(numerator_ * other.numerator_);
    }
    return RationalFunction(numerator_ * other.numerator_, denominator_ * other.denominator_, Unchecked{});
}

RationalFunction RationalFunction::operator/(RationalFunction const& other) const {
    if (other.isZero()) {
        throw DivisionByZeroFunction("division by the zero function");
    }
    if (isZero()) {
        return RationalFunction();
    }
    return RationalFunction(numerator_ * other.denominator_, denominator_ * other.numerator_, Unchecked{}).simplified();
}

RationalFunction RationalFunction::simplified() const {
    if (isZero() || denominator_.isConstant()) {
        return *this;
    }
    Polynomial common = gcd(numerator_, denominator_);
    if (common.isConstant()) {
        return *this;
    }
    return RationalFunction(numerator_.divideExact(common), denominator_.divideExact(common), Unchecked{});
}

std::optional<Rational> RationalFunction::evaluate(Instantiation const& point) const {
    Rational den = denominator_.evaluate(point);
    Rational num = numerator_.evaluate(point);
    if (den == 0) {
        return std::nullopt;
    }
    return Rational(num / den);
}

double RationalFunction::evaluateApprox(std::vector<double> const& point) const {
    return numerator_.evaluateApprox(point) / denominator_.evaluateApprox(point);
}

FunctionStats RationalFunction::stats() const {
    return FunctionStats{numerator_.totalDegree(), denominator_.totalDegree(), numerator_.termCount(),
                         denominator_.termCount()};
}

bool RationalFunction::isMultilinear() const {
    return numerator_.isMultilinear() && denominator_.isMultilinear();
}

std::size_t RationalFunction::hash() const {
    return numerator_.hash() * 31 + denominator_.hash();
}

std::string RationalFunction::toString(VariablePool const& pool) const {
    std::string num = numerator_.toString(pool);
    if (isPolynomial()) {
        return num;
    }
    if (numerator_.termCount() > 1) {
        num = "(" + num + ")";
    }
    std::string den = denominator_.toString(pool);
    bool bareDenominator = denominator_.termCount() == 1 && denominator_.leadingTerm().coefficient == 1 &&
                           denominator_.leadingTerm().monomial.factors().size() == 1;
    return num + "/" + (bareDenominator ? den : "(" + den + ")");
}

bool semanticallyEqual(RationalFunction const& a, RationalFunction const& b) {
    return (a.numerator() * b.denominator() - b.numerator() * a.denominator()).isZero();
}

bool isLocallyMonotoneForm(RationalFunction const& f) {
    return f.isMultilinear();
}

}  // namespace paramsynth
