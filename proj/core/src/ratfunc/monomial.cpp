#include "paramsynth/ratfunc/monomial.h"

#include "paramsynth/errors.h"

#include <algorithm>
#include <functional>

namespace paramsynth {

Monomial Monomial::variable(VariableId var, std::uint32_t exponent) {
    Monomial result;
    if (exponent > 0) {
        result.factors_.emplace_back(var, exponent);
        result.totalDegree_ = exponent;
    }
    return result;
}

Monomial Monomial::fromFactors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    Monomial result;
    for (auto const& [var, exp] : factors) {
        if (exp == 0) {
            continue;
        }
        if (!result.factors_.empty() && result.factors_.back().first == var) {
            result.factors_.back().second += exp;
        } else {
            result.factors_.emplace_back(var, exp);
        }
        result.totalDegree_ += exp;
    }
    return result;
}

std::uint32_t Monomial::degree(VariableId var) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                               [](Factor const& f, VariableId v) { return f.first < v; });
    return (it != factors_.end() && it->first == var) ? it->second : 0;
}

bool Monomial::isMultilinear() const {
    return std::all_of(factors_.begin(), factors_.end(), [](Factor const& f) { return f.second <= 1; });
}

std::optional<VariableId> Monomial::maxVariable() const {
    if (factors_.empty()) {
        return std::nullopt;
    }
    return factors_.back().first;
}

Monomial Monomial::operator*(Monomial const& other) const {
    Monomial result;
    result.factors_.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            result.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            result.factors_.push_back(*b++);
        } else {
            result.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    result.totalDegree_ = totalDegree_ + other.totalDegree_;
    return result;
}

std::optional<Monomial> Monomial::divide(Monomial const& divisor) const {
    Monomial result;
    auto b = divisor.factors_.begin();
    for (auto const& [var, exp] : factors_) {
        if (b != divisor.factors_.end() && b->first < var) {
            return std::nullopt;
        }
        if (b != divisor.factors_.end() && b->first == var) {
            if (b->second > exp) {
                return std::nullopt;
            }
            if (b->second < exp) {
                result.factors_.emplace_back(var, exp - b->second);
            }
            ++b;
        } else {
            result.factors_.emplace_back(var, exp);
        }
    }
    if (b != divisor.factors_.end()) {
        return std::nullopt;
    }
    result.totalDegree_ = totalDegree_ - divisor.totalDegree_;
    return result;
}

Monomial Monomial::withoutVariable(VariableId var) const {
    Monomial result;
    for (auto const& factor : factors_) {
        if (factor.first != var) {
            result.factors_.push_back(factor);
            result.totalDegree_ += factor.second;
        }
    }
    return result;
}

std::strong_ordering Monomial::operator<=>(Monomial const& other) const {
    if (totalDegree_ != other.totalDegree_) {
        return totalDegree_ <=> other.totalDegree_;
    }
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() && b != other.factors_.end()) {
        if (a->first != b->first) {
            // The side holding the smaller variable has the larger exponent on it.
            return a->first < b->first ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (a->second != b->second) {
            return a->second > b->second ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        ++a;
        ++b;
    }
    // Equal total degree and one side exhausted means both are exhausted.
    return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const {
    std::size_t seed = 0x9e3779b9;
    for (auto const& [var, exp] : factors_) {
        seed ^= std::hash<std::uint64_t>{}((std::uint64_t(var) << 32) | exp) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
}

std::string Monomial::toString(VariablePool const& pool) const {
    std::string result;
    for (auto const& [var, exp] : factors_) {
        if (!result.empty()) {
            result += '*';
        }
        result += pool.name(var);
        if (exp > 1) {
            result += '^' + std::to_string(exp);
        }
    }
    return result.empty() ? "1" : result;
}

}  // namespace paramsynth
