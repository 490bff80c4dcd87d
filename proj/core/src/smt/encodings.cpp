#include "paramsynth/smt/encodings.h"

#include "paramsynth/elimination/solution_function.h"
#include "paramsynth/models/check_concrete.h"
#include "paramsynth/models/graph.h"

#include <algorithm>

namespace paramsynth::smt {

namespace {

// One real variable x_s per state, named so that it cannot collide with a parameter.
struct StateVariables {
    VariablePool pool;
    std::vector<VariableId> ids;

    StateVariables(ParametricModel const& model) : pool(model.parameters()) {
        std::string prefix = "x";
        auto clashes = [&](std::string const& candidate) {
            for (StateId s = 0; s < model.stateCount(); ++s) {
                if (pool.find(candidate + std::to_string(s))) {
                    return true;
                }
            }
            return false;
        };
        while (clashes(prefix)) {
            prefix += "_";
        }
        for (StateId s = 0; s < model.stateCount(); ++s) {
            ids.push_back(pool.intern(prefix + std::to_string(s)));
        }
    }

    RationalFunction x(StateId s) const { return RationalFunction(Polynomial::variable(ids[s])); }
};

RationalFunction rowValue(ParametricModel const& model, StateVariables const& vars, std::size_t row, bool withReward) {
    RationalFunction value = withReward ? model.reward(row) : RationalFunction();
    for (auto const& entry : model.row(row)) {
        value += entry.value * vars.x(entry.target);
    }
    return value;
}

Formula threshold(StateVariables const& vars, ParametricModel const& model, Comparison comparison,
                  Rational const& bound) {
    return compare(Polynomial::variable(vars.ids[model.initialState()]), comparison, Polynomial(bound));
}

Formula pinned(StateVariables const& vars, StateId s, Rational const& value) {
    return compare(Polynomial::variable(vars.ids[s]), Comparison::Equal, Polynomial(value));
}

void requireKind(Specification const& spec, std::initializer_list<SpecKind> kinds, char const* context) {
    for (auto kind : kinds) {
        if (spec.kind == kind) {
            return;
        }
    }
    throw UnsupportedSpecification(std::string(context) + " does not support '" + spec.toString() + "'");
}

// A diverging expected reward is +infinity at every graph-preserving point.
RegionQueries divergingReward(VariablePool pool, std::size_t parameterCount, Specification const& spec) {
    RegionQueries queries;
    queries.variables = std::move(pool);
    queries.parameterCount = parameterCount;
    queries.violating = spec.isUpperBound() ? Formula::top() : Formula::bottom();
    queries.satisfying = !queries.violating;
    return queries;
}

// Some strategy has value x_init ~ bound: each state picks one Bellman row. Spurious solutions
// on end components make a sat answer inconclusive until re-validated.
Formula someStrategy(ParametricModel const& model, StateVariables const& vars, std::vector<bool> const& targets,
                     std::vector<bool> const& reachable, Comparison comparison, Rational const& bound) {
    auto cannotReach = reachStates(model, targets).cannotReach;
    std::vector<Formula> parts;
    for (StateId s = 0; s < model.stateCount(); ++s) {
        if (!reachable[s]) {
            continue;
        }
        if (targets[s]) {
            parts.push_back(pinned(vars, s, 1));
        } else if (cannotReach[s]) {
            parts.push_back(pinned(vars, s, 0));
        } else {
            std::vector<Formula> choices;
            for (std::size_t row = model.firstRow(s); row < model.rowEnd(s); ++row) {
                choices.push_back(transformRfConstraint(vars.x(s), Comparison::Equal, rowValue(model, vars, row, false)));
            }
            parts.push_back(Formula::disjunction(choices));
        }
    }
    parts.push_back(threshold(vars, model, comparison, bound));
    return Formula::conjunction(parts);
}

// Every strategy has value x_init ~ bound: x bounds the optimum from the safe side, so the
// constraints hold for some x iff the extremal value does.
Formula everyStrategy(ParametricModel const& model, StateVariables const& vars, std::vector<bool> const& targets,
                      std::vector<bool> const& reachable, Comparison comparison, Rational const& bound) {
    bool lower = comparison == Comparison::Greater || comparison == Comparison::GreaterEqual;
    auto zero = lower ? prob0E(model, targets) : reachStates(model, targets).cannotReach;
    Comparison rowComparison = lower ? Comparison::LessEqual : Comparison::GreaterEqual;
    std::vector<Formula> parts;
    for (StateId s = 0; s < model.stateCount(); ++s) {
        if (!reachable[s]) {
            continue;
        }
        if (targets[s]) {
            parts.push_back(pinned(vars, s, 1));
        } else if (zero[s]) {
            parts.push_back(pinned(vars, s, 0));
        } else {
            Polynomial x = Polynomial::variable(vars.ids[s]);
            parts.push_back(lower ? compare(x, Comparison::LessEqual, Polynomial(Rational(1)))
                                  : compare(x, Comparison::GreaterEqual, Polynomial(Rational(0))));
            for (std::size_t row = model.firstRow(s); row < model.rowEnd(s); ++row) {
                parts.push_back(transformRfConstraint(vars.x(s), rowComparison, rowValue(model, vars, row, false)));
            }
        }
    }
    parts.push_back(threshold(vars, model, comparison, bound));
    return Formula::conjunction(parts);
}

std::vector<std::vector<std::size_t>> memorylessStrategies(ParametricModel const& model,
                                                           std::vector<bool> const& relevant, std::size_t cap) {
    std::vector<std::size_t> base(model.stateCount());
    std::vector<StateId> choiceStates;
    std::size_t count = 1;
    for (StateId s = 0; s < model.stateCount(); ++s) {
        base[s] = model.firstRow(s);
        if (relevant[s] && model.actionCount(s) > 1) {
            choiceStates.push_back(s);
            count *= model.actionCount(s);
            if (count > cap) {
                throw StrategyCapExceeded("more than " + std::to_string(cap) + " memoryless strategies");
            }
        }
    }
    std::vector<std::vector<std::size_t>> strategies{base};
    for (StateId s : choiceStates) {
        std::vector<std::vector<std::size_t>> extended;
        for (auto const& strategy : strategies) {
            for (std::size_t row = model.firstRow(s); row < model.rowEnd(s); ++row) {
                extended.push_back(strategy);
                extended.back()[s] = row;
            }
        }
        strategies = std::move(extended);
    }
    return strategies;
}

}  // namespace


Formula regionFormula(Region const& region) {
    std::vector<Formula> bounds;
    for (VariableId v = 0; v < region.dimension(); ++v) {
        Polynomial p = Polynomial::variable(v);
        bounds.push_back(compare(p, Comparison::GreaterEqual, region.interval(v).lower));
        bounds.push_back(compare(p, Comparison::LessEqual, region.interval(v).upper));
    }
    return Formula::conjunction(bounds);
}

Comparison comparisonOf(Relation relation) {
    switch (relation) {
        case Relation::Less:
            return Comparison::Less;
        case Relation::LessEqual:
            return Comparison::LessEqual;
        case Relation::Greater:
            return Comparison::Greater;
        case Relation::GreaterEqual:
            return Comparison::GreaterEqual;
    }
    return Comparison::Equal;
}

Problem encodeGraphPreservation(ParametricModel const& model, Region const& region) {
    std::vector<Formula> preserving;
    for (std::size_t r = 0; r < model.rowCount(); ++r) {
        RationalFunction sum;
        for (auto const& entry : model.row(r)) {
            if (!entry.value.isZero()) {
                preserving.push_back(transformRfConstraint(entry.value, Comparison::Greater, Rational(0)));
            }
            sum += entry.value;
        }
        RationalFunction total = sum.simplified();
        if (!total.isOne()) {
            preserving.push_back(transformRfConstraint(total, Comparison::Equal, Rational(1)));
        }
        if (model.hasRewards()) {
            preserving.push_back(transformRfConstraint(model.reward(r), Comparison::GreaterEqual, Rational(0)));
        }
    }
    Problem problem;
    problem.variables = model.parameters();
    problem.parameterCount = model.parameterCount();
    problem.formula = regionFormula(region) && !Formula::conjunction(preserving);
    return problem;
}

Problem RegionQueries::problem(Formula const& query, Region const& region) const {
    Problem result;
    result.variables = variables;
    result.parameterCount = parameterCount;
    result.formula = Formula::conjunction({base, query, regionFormula(region)});
    return result;
}

RegionQueries encodePmc(ParametricModel const& model, Specification const& spec, EncodingForm form) {
    if (model.kind() != ModelKind::Pmc) {
        throw InvalidArgument("expected a pMC");
    }
    auto targets = targetStates(model, spec);
    Comparison holds = comparisonOf(spec.relation);
    Comparison fails = comparisonOf(negate(spec.relation));
    if (form == EncodingForm::SolutionFunctions) {
        RationalFunction f;
        try {
            f = specificationFunction(model, spec);
        } catch (RewardDiverges const&) {
            return divergingReward(model.parameters(), model.parameterCount(), spec);
        }
        RegionQueries queries;
        queries.variables = model.parameters();
        queries.parameterCount = model.parameterCount();
        queries.violating = transformRfConstraint(f, fails, spec.threshold);
        queries.satisfying = transformRfConstraint(f, holds, spec.threshold);
        return queries;
    }
    requireKind(spec, {SpecKind::ReachProb, SpecKind::ExpReward}, "the equation-system encoding");
    bool reward = spec.kind == SpecKind::ExpReward;
    auto reachable = forwardReachable(model);
    auto cannotReach = reachStates(model, targets).cannotReach;
    if (reward) {
        for (StateId s = 0; s < model.stateCount(); ++s) {
            if (reachable[s] && cannotReach[s]) {
                return divergingReward(model.parameters(), model.parameterCount(), spec);
            }
        }
    }
    StateVariables vars(model);
    std::vector<Formula> rows;
    for (StateId s = 0; s < model.stateCount(); ++s) {
        if (!reachable[s]) {
            continue;
        }
        if (targets[s]) {
            rows.push_back(pinned(vars, s, reward ? 0 : 1));
        } else if (cannotReach[s]) {
            rows.push_back(pinned(vars, s, 0));
        } else {
            std::size_t row = model.firstRow(s);
            rows.push_back(transformRfConstraint(vars.x(s), Comparison::Equal,
                                                 rowValue(model, vars, row, reward && model.hasRewards())));
        }
    }
    RegionQueries queries;
    queries.variables = vars.pool;
    queries.parameterCount = model.parameterCount();
    queries.base = Formula::conjunction(rows);
    queries.violating = threshold(vars, model, fails, spec.threshold);
    queries.satisfying = threshold(vars, model, holds, spec.threshold);
    return queries;
}

RegionQueries encodePmdp(ParametricModel const& model, Specification const& spec, Semantics semantics,
                         EncodingForm form, std::size_t strategyCap) {
    if (model.kind() == ModelKind::Pmc) {
        return encodePmc(model, spec, form);
    }
    requireKind(spec, {SpecKind::ReachProb}, "the pMDP encoding");
    auto targets = targetStates(model, spec);
    auto reachable = forwardReachable(model);
    Comparison holds = comparisonOf(spec.relation);
    Comparison fails = comparisonOf(negate(spec.relation));
    bool demonic = semantics == Semantics::Demonic;

    RegionQueries queries;
    queries.parameterCount = model.parameterCount();
    if (form == EncodingForm::SolutionFunctions) {
        std::vector<bool> relevant(model.stateCount());
        auto canReach = reachStates(model, targets).canReach;
        for (StateId s = 0; s < model.stateCount(); ++s) {
            relevant[s] = reachable[s] && canReach[s] && !targets[s];
        }
        std::vector<RationalFunction> functions;
        for (auto const& strategy : memorylessStrategies(model, relevant, strategyCap)) {
            RationalFunction f = solutionFunction(inducedChain(model, strategy), targets);
            if (std::find(functions.begin(), functions.end(), f) == functions.end()) {
                functions.push_back(std::move(f));
            }
        }
        std::vector<Formula> someFails, someHolds;
        for (auto const& f : functions) {
            someFails.push_back(transformRfConstraint(f, fails, spec.threshold));
            someHolds.push_back(transformRfConstraint(f, holds, spec.threshold));
        }
        queries.variables = model.parameters();
        if (demonic) {
            queries.violating = Formula::disjunction(someFails);
            queries.satisfying = Formula::conjunction(someHolds);
        } else {
            queries.violating = Formula::conjunction(someFails);
            queries.satisfying = Formula::disjunction(someHolds);
        }
        return queries;
    }

    StateVariables vars(model);
    queries.variables = vars.pool;
    if (demonic) {
        queries.violating = someStrategy(model, vars, targets, reachable, fails, spec.threshold);
        queries.satisfying = everyStrategy(model, vars, targets, reachable, holds, spec.threshold);
    } else {
        queries.violating = everyStrategy(model, vars, targets, reachable, fails, spec.threshold);
        queries.satisfying = someStrategy(model, vars, targets, reachable, holds, spec.threshold);
    }
    return queries;
}

Formula solutionFunctionViolation(RationalFunction const& f, Specification const& spec) {
    return transformRfConstraint(f, comparisonOf(negate(spec.relation)), spec.threshold);
}

}  // namespace paramsynth::smt
