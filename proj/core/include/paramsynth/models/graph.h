#pragma once

#include "paramsynth/models/model.h"

#include <vector>

namespace paramsynth {

// Qualitative analyses on the support graph (entries with nonzero stored value).
// Every state row group is considered; callers restrict choices by building a sub-model.

// States from which some path reaches the targets.
template<typename Value>
std::vector<bool> existsReach(SparseModel<Value> const& model, std::vector<bool> const& targets);

// States from which some strategy avoids the targets surely (Pr_min = 0).
template<typename Value>
std::vector<bool> prob0E(SparseModel<Value> const& model, std::vector<bool> const& targets);

// States from which every strategy reaches the targets almost surely.
template<typename Value>
std::vector<bool> prob1A(SparseModel<Value> const& model, std::vector<bool> const& targets);

// States reachable from the initial state.
template<typename Value>
std::vector<bool> forwardReachable(SparseModel<Value> const& model);

struct ReachPartition {
    std::vector<bool> canReach;    // ◊T
    std::vector<bool> cannotReach; // ¬◊T
};

template<typename Value>
ReachPartition reachStates(SparseModel<Value> const& model, std::vector<bool> const& targets) {
    ReachPartition result;
    result.canReach = existsReach(model, targets);
    result.cannotReach.resize(result.canReach.size());
    for (std::size_t s = 0; s < result.canReach.size(); ++s) {
        result.cannotReach[s] = !result.canReach[s];
    }
    return result;
}

// Tarjan SCCs in a deterministic order: returned list is reverse topological (sinks first).
template<typename Value>
std::vector<std::vector<StateId>> stronglyConnectedComponents(SparseModel<Value> const& model);

// The chain that takes global row policy[s] in every state; labels and rewards are kept.
ParametricModel inducedChain(ParametricModel const& model, std::vector<std::size_t> const& policy);

}  // namespace paramsynth
