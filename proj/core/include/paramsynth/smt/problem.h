#pragma once

#include "paramsynth/smt/formula.h"

namespace paramsynth::smt {

// A formula together with the real variables it ranges over. The first parameterCount
// variables of the pool are the model parameters, in model order.
struct Problem {
    VariablePool variables;
    std::size_t parameterCount = 0;
    Formula formula;

    std::vector<VariableId> parameters() const;
    // A complete SMT-LIB script: declarations, one assertion, check-sat.
    std::string toScript() const;
};

}  // namespace paramsynth::smt
