#include "paramsynth/smt/problem.h"

namespace paramsynth::smt {

std::vector<VariableId> Problem::parameters() const {
    std::vector<VariableId> result;
    for (VariableId v = 0; v < parameterCount; ++v) {
        result.push_back(v);
    }
    return result;
}

std::string Problem::toScript() const {
    std::string script = "(set-logic QF_NRA)\n";
    for (VariableId v = 0; v < variables.size(); ++v) {
        script += "(declare-fun " + smtSymbol(variables.name(v)) + " () Real)\n";
    }
    for (auto const& name : formula.booleanVariables()) {
        script += "(declare-fun " + smtSymbol(name) + " () Bool)\n";
    }
    script += "(assert " + formula.toSmtLib(variables) + ")\n";
    script += "(check-sat)\n(exit)\n";
    return script;
}

}  // namespace paramsynth::smt
