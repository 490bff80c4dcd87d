#pragma once

#include "paramsynth/elimination/flexible_matrix.h"
#include "paramsynth/elimination/order.h"
#include "paramsynth/models/specification.h"

#include <functional>

namespace paramsynth {

enum class EliminationEngine { StateElimination, Gaussian, SetBased };

std::string toString(EliminationEngine engine);
EliminationEngine parseEliminationEngine(std::string_view text);

struct EliminationOptions {
    EliminationEngine engine = EliminationEngine::StateElimination;
    EliminationOrder order = EliminationOrder::Forward;
    // State elimination keeping targets as explicit absorbing states instead of the one-step vector.
    bool classic = false;
    // Set-based engine: called after every squaring and self-loop elimination round.
    std::function<void(std::size_t iteration, FlexibleMatrix const& matrix)> setBasedObserver;
};

struct EliminationDiagnostics {
    std::size_t eliminatedStates = 0;
    std::size_t setBasedIterations = 0;
    // The set-based engine hit its iteration cap and finished by state elimination.
    bool setBasedFallback = false;
};

// Pr(reach targets) from the initial state as a rational function, valid at every
// graph-preserving instantiation. Requires a pMC.
RationalFunction solutionFunction(ParametricModel const& model, std::vector<bool> const& targets,
                                  EliminationOptions const& options = {}, EliminationDiagnostics* diagnostics = nullptr);

// The reachability function of every state, by Gaussian elimination.
std::vector<RationalFunction> solutionVector(ParametricModel const& model, std::vector<bool> const& targets);

// Expected reward accumulated until reaching the targets. Throws RewardDiverges when a state
// reachable from the initial state cannot reach the targets.
RationalFunction expectedRewardFunction(ParametricModel const& model, std::vector<bool> const& targets,
                                        EliminationOptions const& options = {});

// Pr(reach targets within steps) by repeated matrix-vector products.
RationalFunction boundedReachFunction(ParametricModel const& model, std::vector<bool> const& targets,
                                      std::uint64_t steps);

// Dispatches on the specification kind.
RationalFunction specificationFunction(ParametricModel const& model, Specification const& spec,
                                       EliminationOptions const& options = {});

}  // namespace paramsynth
