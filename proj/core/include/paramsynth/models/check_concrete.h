#pragma once

#include "paramsynth/models/model.h"
#include "paramsynth/models/specification.h"

#include <optional>
#include <vector>

namespace paramsynth {

// Evaluates every function at the point. The result is flagged not well-defined when a value is
// undefined, negative or above one, a row does not sum to one, or a reward is negative.
ConcreteModel instantiate(ParametricModel const& model, Instantiation const& point);

// Every nonzero transition function stays nonzero at the point.
bool isGraphPreservingPoint(ParametricModel const& model, Instantiation const& point);

std::vector<bool> targetStates(SparseModel<Rational> const& model, Specification const& spec);
std::vector<bool> targetStates(ParametricModel const& model, Specification const& spec);

enum class Objective { Reachability, ExpectedReward };

struct ExactSolution {
    std::vector<ExtendedRational> values;
    std::vector<std::size_t> policy;  // chosen global row per state
    std::size_t iterations = 0;
};

// Values of the chain induced by picking policy[s] in every state.
std::vector<ExtendedRational> evaluatePolicy(SparseModel<Rational> const& model, std::vector<bool> const& targets,
                                             Objective objective, std::vector<std::size_t> const& policy);

// Exact policy iteration. Starts from initialPolicy if given, else from the first action of
// every state; switches only on strict improvement, preferring the lowest row on ties.
ExactSolution policyIteration(SparseModel<Rational> const& model, std::vector<bool> const& targets,
                              Objective objective, Direction direction,
                              std::optional<std::vector<std::size_t>> initialPolicy = std::nullopt);

// Value of the initial state; +infinity signals a diverging expected reward.
struct ConcreteResult {
    ExtendedRational value;
    std::vector<ExtendedRational> stateValues;
    std::vector<std::size_t> policy;
};

ConcreteResult checkConcrete(ConcreteModel const& model, Specification const& spec, Direction direction);

// Whether the measured value satisfies the specification's comparison.
bool satisfies(ExtendedRational const& value, Specification const& spec);

}  // namespace paramsynth
