#pragma once

#include "paramsynth/ratfunc/variables.h"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace paramsynth {

// Power product of variables. Ordered graded-lexicographically: total degree first, then
// by exponent vectors where a larger exponent on a smaller variable id sorts earlier, so
// 1 < p < q < p^2 < p*q < q^2 for ids p < q.
class Monomial {
public:
    using Factor = std::pair<VariableId, std::uint32_t>;

    Monomial() = default;
    static Monomial variable(VariableId var, std::uint32_t exponent = 1);
    static Monomial fromFactors(std::vector<Factor> factors);

    std::vector<Factor> const& factors() const { return factors_; }
    std::uint32_t totalDegree() const { return totalDegree_; }
    std::uint32_t degree(VariableId var) const;
    bool isConstant() const { return factors_.empty(); }
    bool isMultilinear() const;
    bool contains(VariableId var) const { return degree(var) > 0; }
    std::optional<VariableId> maxVariable() const;

    Monomial operator*(Monomial const& other) const;
    std::optional<Monomial> divide(Monomial const& divisor) const;
    Monomial withoutVariable(VariableId var) const;

    bool operator==(Monomial const& other) const = default;
    std::strong_ordering operator<=>(Monomial const& other) const;

    std::size_t hash() const;
    std::string toString(VariablePool const& pool) const;

private:
    std::vector<Factor> factors_;
    std::uint32_t totalDegree_ = 0;
};

}  // namespace paramsynth
