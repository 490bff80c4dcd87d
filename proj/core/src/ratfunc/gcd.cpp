#include "paramsynth/ratfunc/gcd.h"

#include <algorithm>
#include <optional>
#include <vector>

namespace paramsynth {

namespace {

Polynomial normalizeUnit(Polynomial const& a) {
    if (a.isZero()) {
        return a;
    }
    return a * (Rational(1) / a.trailingTerm().coefficient);
}

std::optional<VariableId> mainVariable(Polynomial const& a, Polynomial const& b) {
    std::optional<VariableId> result;
    for (auto const* poly : {&a, &b}) {
        for (auto const& term : poly->terms()) {
            if (auto v = term.monomial.maxVariable(); v && (!result || *v > *result)) {
                result = v;
            }
        }
    }
    return result;
}

using Univariate = std::vector<Rational>;  // index = degree, no trailing zeros

void trim(Univariate& u) {
    while (!u.empty() && u.back() == 0) {
        u.pop_back();
    }
}

Univariate remainder(Univariate a, Univariate const& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rational factor = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[i + shift] -= factor * b[i];
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

std::size_t univariateGcdDegree(Univariate a, Univariate b) {
    while (!b.empty()) {
        Univariate r = remainder(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// Image of a in Q[var] after fixing every other variable at the given values.
Univariate specialize(Polynomial const& a, VariableId var, std::vector<Rational> const& values) {
    Univariate result(a.degree(var) + 1);
    for (auto const& term : a.terms()) {
        Rational value = term.coefficient;
        std::uint32_t exponent = 0;
        for (auto const& [v, e] : term.monomial.factors()) {
            if (v == var) {
                exponent = e;
            } else {
                value *= power(values[v], e);
            }
        }
        result[exponent] += value;
    }
    trim(result);
    return result;
}

// Sound certificate that gcd(a, b) does not involve var: the images under a substitution that
// keeps both leading coefficients nonzero preserve the degree of any common factor in var.
bool provablyFreeOf(Polynomial const& a, Polynomial const& b, VariableId var) {
    VariableId maxVar = 0;
    for (auto const* poly : {&a, &b}) {
        for (auto v : poly->variables()) {
            maxVar = std::max(maxVar, v);
        }
    }
    std::vector<Rational> values(maxVar + 1);
    for (int attempt = 0; attempt < 3; ++attempt) {
        for (VariableId v = 0; v <= maxVar; ++v) {
            values[v] = Rational(static_cast<long>(2 + 3 * v + 7 * attempt), static_cast<long>(5 + attempt + v));
            values[v].canonicalize();
        }
        Univariate ua = specialize(a, var, values);
        Univariate ub = specialize(b, var, values);
        if (ua.size() != a.degree(var) + 1 || ub.size() != b.degree(var) + 1) {
            continue;  // a leading coefficient vanished; try another point
        }
        return univariateGcdDegree(std::move(ua), std::move(ub)) == 0;
    }
    return false;
}

}  // namespace

Polynomial content(Polynomial const& a, VariableId var) {
    Polynomial result;
    for (auto const& coefficient : a.coefficientsIn(var)) {
        if (coefficient.isZero()) {
            continue;
        }
        result = result.isZero() ? normalizeUnit(coefficient) : gcd(result, coefficient);
        if (result.isConstant()) {
            return Polynomial(Rational(1));
        }
    }
    return result;
}

Polynomial primitivePart(Polynomial const& a, VariableId var) {
    if (a.isZero()) {
        return a;
    }
    return normalizeUnit(a.divideExact(content(a, var)));
}

Polynomial pseudoRemainder(Polynomial const& a, Polynomial const& b, VariableId var) {
    std::uint32_t degreeB = b.degree(var);
    Polynomial leadB = b.coefficientsIn(var).back();
    Polynomial rest = a;
    while (!rest.isZero()) {
        std::uint32_t degreeRest = rest.degree(var);
        if (degreeRest < degreeB) {
            break;
        }
        Polynomial leadRest = rest.coefficientsIn(var).back();
        Polynomial shift(Rational(1), Monomial::variable(var, degreeRest - degreeB));
        rest = leadB * rest - leadRest * shift * b;
    }
    return rest;
}

Polynomial gcd(Polynomial const& a, Polynomial const& b) {
    if (a.isZero()) {
        return normalizeUnit(b);
    }
    if (b.isZero()) {
        return normalizeUnit(a);
    }
    if (a.isConstant() || b.isConstant()) {
        return Polynomial(Rational(1));
    }
    VariableId var = *mainVariable(a, b);
    if (!a.contains(var)) {
        return gcd(a, content(b, var));
    }
    if (!b.contains(var)) {
        return gcd(content(a, var), b);
    }
    Polynomial contentA = content(a, var);
    Polynomial contentB = content(b, var);
    Polynomial common = gcd(contentA, contentB);
    if (provablyFreeOf(a, b, var)) {
        return normalizeUnit(common);
    }
    Polynomial first = a.divideExact(contentA);
    Polynomial second = b.divideExact(contentB);
    if (first.degree(var) < second.degree(var)) {
        std::swap(first, second);
    }
    while (!second.isZero()) {
        Polynomial remainder = pseudoRemainder(first, second, var);
        first = std::move(second);
        if (remainder.isZero()) {
            break;
        }
        if (!remainder.contains(var)) {
            // A nonzero remainder free of var means the primitive parts are coprime.
            return normalizeUnit(common);
        }
        second = primitivePart(remainder, var);
    }
    return normalizeUnit(common * primitivePart(first, var));
}

}  // namespace paramsynth
