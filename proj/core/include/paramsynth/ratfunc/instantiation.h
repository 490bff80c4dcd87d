#pragma once

#include "paramsynth/ratfunc/rational.h"
#include "paramsynth/ratfunc/variables.h"

#include <string>
#include <vector>

namespace paramsynth {

// Assignment of rational values to variable ids; slots may be unset.
class Instantiation {
public:
    Instantiation() = default;
    explicit Instantiation(std::size_t slots) : values_(slots), assigned_(slots, false) {}
    explicit Instantiation(std::vector<Rational> values);

    void set(VariableId var, Rational value);
    bool has(VariableId var) const { return var < assigned_.size() && assigned_[var]; }
    Rational const& at(VariableId var) const;  // throws MissingParameter
    std::size_t size() const { return values_.size(); }
    bool complete() const;

    bool operator==(Instantiation const& other) const;
    bool operator<(Instantiation const& other) const;

    // "p=2/5, q=7/10" over the first size() pool variables.
    std::string toString(VariablePool const& pool) const;

private:
    std::vector<Rational> values_;
    std::vector<bool> assigned_;
};

// Parses "p=2/5, q=0.7"; every name must be known to the pool.
Instantiation parseInstantiation(std::string_view text, VariablePool const& pool);

}  // namespace paramsynth
