#include "paramsynth/elimination/solution_function.h"

#include "paramsynth/linalg/gauss.h"
#include "paramsynth/models/check_concrete.h"
#include "paramsynth/models/graph.h"

#include <bit>
#include <deque>

namespace paramsynth {

namespace {

struct EngineName {
    EliminationEngine engine;
    char const* name;
};

constexpr EngineName engineNames[] = {
    {EliminationEngine::StateElimination, "state-elimination"},
    {EliminationEngine::Gaussian, "gaussian"},
    {EliminationEngine::SetBased, "set-based"},
};

void requirePmc(ParametricModel const& model, std::vector<bool> const& targets) {
    if (model.kind() != ModelKind::Pmc) {
        throw InvalidArgument("solution functions are computed for pMCs only");
    }
    if (targets.size() != model.stateCount()) {
        throw InvalidArgument("target vector does not match the state count");
    }
}

RationalFunction const one{Rational(1)};

// States reachable from the initial state without passing through a target.
std::vector<bool> reachableAvoiding(ParametricModel const& model, std::vector<bool> const& targets) {
    std::vector<bool> seen(model.stateCount(), false);
    std::deque<StateId> queue{model.initialState()};
    seen[model.initialState()] = true;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        if (targets[s]) {
            continue;
        }
        for (auto const& entry : model.row(model.firstRow(s))) {
            if (!entry.value.isZero() && !seen[entry.target]) {
                seen[entry.target] = true;
                queue.push_back(entry.target);
            }
        }
    }
    return seen;
}

struct System {
    FlexibleMatrix matrix;
    std::vector<StateId> unknowns;  // ascending
    std::vector<bool> anchors;      // unknowns with a direct transition into the targets
};

// Matrix over the unknown states; transitions into targets are folded into x (or kept as
// explicit entries when keepTargets), all others leaving the unknowns are dropped.
System buildSystem(ParametricModel const& model, std::vector<bool> const& targets, std::vector<bool> const& unknown,
                   bool rewards, bool keepTargets) {
    System system{FlexibleMatrix(model.stateCount()), {}, std::vector<bool>(model.stateCount(), false)};
    for (StateId s = 0; s < model.stateCount(); ++s) {
        if (!unknown[s]) {
            continue;
        }
        system.unknowns.push_back(s);
        RationalFunction x = rewards ? model.reward(model.firstRow(s)) : RationalFunction();
        for (auto const& entry : model.row(model.firstRow(s))) {
            if (targets[entry.target]) {
                system.anchors[s] = true;
                if (keepTargets) {
                    system.matrix.add(s, entry.target, entry.value);
                } else if (!rewards) {
                    x += entry.value;
                }
            } else if (unknown[entry.target]) {
                system.matrix.add(s, entry.target, entry.value);
            }
        }
        system.matrix.setOneStep(s, x);
    }
    return system;
}

void eliminateInOrder(System& system, StateId keep, EliminationOrder order, bool withOneStep,
                      EliminationDiagnostics* diagnostics) {
    std::vector<StateId> eligible;
    for (StateId s : system.unknowns) {
        if (s != keep && (!system.matrix.row(s).empty() || !system.matrix.predecessors(s).empty())) {
            eligible.push_back(s);
        }
    }
    EliminationQueue queue(order, system.matrix, eligible, system.anchors);
    while (auto s = queue.next(system.matrix)) {
        eliminateState(system.matrix, *s, withOneStep);
        if (diagnostics) {
            ++diagnostics->eliminatedStates;
        }
    }
    eliminateSelfLoop(system.matrix, keep, withOneStep);
}

bool hasInnerTransition(System const& system, std::vector<bool> const& unknown) {
    for (StateId s : system.unknowns) {
        for (auto const& [to, value] : system.matrix.row(s)) {
            if (unknown[to]) {
                return true;
            }
        }
    }
    return false;
}

// Repeated squaring: every round substitutes each equation into all others, then removes the
// self-loops this creates. Cycles whose length is not a power of two never close into loops, so
// rounds are capped and the rest is finished by state elimination.
void setBased(System& system, StateId init, std::vector<bool> const& unknown, EliminationOptions const& options,
              EliminationDiagnostics* diagnostics) {
    for (StateId s : system.unknowns) {
        eliminateSelfLoop(system.matrix, s);
    }
    std::size_t cap = std::bit_width(system.unknowns.size()) + 2;
    std::size_t iteration = 0;
    while (hasInnerTransition(system, unknown) && iteration < cap) {
        ++iteration;
        FlexibleMatrix next(system.matrix.stateCount());
        for (StateId s : system.unknowns) {
            RationalFunction x = system.matrix.oneStep(s);
            std::map<StateId, RationalFunction> row;
            for (auto const& [mid, first] : system.matrix.row(s)) {
                x += first * system.matrix.oneStep(mid);
                for (auto const& [to, second] : system.matrix.row(mid)) {
                    row[to] += first * second;
                }
            }
            for (auto& [to, value] : row) {
                next.set(s, to, value.simplified());
            }
            next.setOneStep(s, x.simplified());
        }
        system.matrix = std::move(next);
        for (StateId s : system.unknowns) {
            eliminateSelfLoop(system.matrix, s);
        }
        if (options.setBasedObserver) {
            options.setBasedObserver(iteration, system.matrix);
        }
    }
    if (diagnostics) {
        diagnostics->setBasedIterations = iteration;
    }
    if (hasInnerTransition(system, unknown)) {
        if (diagnostics) {
            diagnostics->setBasedFallback = true;
        }
        eliminateInOrder(system, init, options.order, true, diagnostics);
    }
}

// Solves (I - P) x = b over the unknowns.
std::vector<RationalFunction> gaussian(System const& system) {
    std::size_t n = system.unknowns.size();
    std::vector<std::size_t> index(system.matrix.stateCount(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        index[system.unknowns[i]] = i;
    }
    std::vector<linalg::SparseRow<RationalFunction>> rows(n);
    std::vector<RationalFunction> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        StateId s = system.unknowns[i];
        rows[i][i] = one;
        for (auto const& [to, value] : system.matrix.row(s)) {
            RationalFunction updated = rows[i][index[to]] - value;
            if (updated.isZero()) {
                rows[i].erase(index[to]);
            } else {
                rows[i][index[to]] = updated;
            }
        }
        rhs[i] = system.matrix.oneStep(s);
    }
    auto solution = linalg::solve(std::move(rows), std::move(rhs));
    for (auto& value : solution) {
        value = value.simplified();
    }
    return solution;
}

RationalFunction solveForInitial(ParametricModel const& model, std::vector<bool> const& targets,
                                 std::vector<bool> const& unknown, bool rewards, EliminationOptions const& options,
                                 EliminationDiagnostics* diagnostics) {
    StateId init = model.initialState();
    bool classic = options.classic && !rewards && options.engine == EliminationEngine::StateElimination;
    System system = buildSystem(model, targets, unknown, rewards, classic);
    switch (options.engine) {
        case EliminationEngine::StateElimination:
            eliminateInOrder(system, init, options.order, !classic, diagnostics);
            if (classic) {
                RationalFunction sum;
                for (auto const& [to, value] : system.matrix.row(init)) {
                    if (targets[to]) {
                        sum += value;
                    }
                }
                return sum.simplified();
            }
            return system.matrix.oneStep(init).simplified();
        case EliminationEngine::Gaussian: {
            auto solution = gaussian(system);
            auto it = std::lower_bound(system.unknowns.begin(), system.unknowns.end(), init);
            return solution[static_cast<std::size_t>(it - system.unknowns.begin())];
        }
        case EliminationEngine::SetBased:
            setBased(system, init, unknown, options, diagnostics);
            return system.matrix.oneStep(init).simplified();
    }
    return RationalFunction();
}

}  // namespace

std::string toString(EliminationEngine engine) {
    for (auto const& entry : engineNames) {
        if (entry.engine == engine) {
            return entry.name;
        }
    }
    return "?";
}

EliminationEngine parseEliminationEngine(std::string_view text) {
    for (auto const& entry : engineNames) {
        if (text == entry.name) {
            return entry.engine;
        }
    }
    throw InvalidArgument("unknown elimination engine '" + std::string(text) + "'");
}

RationalFunction solutionFunction(ParametricModel const& model, std::vector<bool> const& targets,
                                  EliminationOptions const& options, EliminationDiagnostics* diagnostics) {
    requirePmc(model, targets);
    StateId init = model.initialState();
    if (targets[init]) {
        return one;
    }
    auto partition = reachStates(model, targets);
    if (partition.cannotReach[init]) {
        return RationalFunction();
    }
    auto reachable = reachableAvoiding(model, targets);
    std::vector<bool> unknown(model.stateCount(), false);
    for (StateId s = 0; s < model.stateCount(); ++s) {
        unknown[s] = reachable[s] && partition.canReach[s] && !targets[s];
    }
    return solveForInitial(model, targets, unknown, false, options, diagnostics);
}

std::vector<RationalFunction> solutionVector(ParametricModel const& model, std::vector<bool> const& targets) {
    requirePmc(model, targets);
    auto partition = reachStates(model, targets);
    std::vector<bool> unknown(model.stateCount(), false);
    for (StateId s = 0; s < model.stateCount(); ++s) {
        unknown[s] = partition.canReach[s] && !targets[s];
    }
    System system = buildSystem(model, targets, unknown, false, false);
    auto solution = gaussian(system);
    std::vector<RationalFunction> result(model.stateCount());
    for (std::size_t i = 0; i < system.unknowns.size(); ++i) {
        result[system.unknowns[i]] = solution[i];
    }
    for (StateId s = 0; s < model.stateCount(); ++s) {
        if (targets[s]) {
            result[s] = one;
        }
    }
    return result;
}

RationalFunction expectedRewardFunction(ParametricModel const& model, std::vector<bool> const& targets,
                                        EliminationOptions const& options) {
    requirePmc(model, targets);
    if (!model.hasRewards()) {
        throw InvalidArgument("expected-reward function on a model without rewards");
    }
    StateId init = model.initialState();
    if (targets[init]) {
        return RationalFunction();
    }
    auto partition = reachStates(model, targets);
    auto reachable = reachableAvoiding(model, targets);
    std::vector<bool> unknown(model.stateCount(), false);
    for (StateId s = 0; s < model.stateCount(); ++s) {
        if (reachable[s] && !targets[s]) {
            if (partition.cannotReach[s]) {
                throw RewardDiverges("state " + std::to_string(s) + " is reachable but cannot reach the targets");
            }
            unknown[s] = true;
        }
    }
    return solveForInitial(model, targets, unknown, true, options, nullptr);
}

RationalFunction boundedReachFunction(ParametricModel const& model, std::vector<bool> const& targets,
                                      std::uint64_t steps) {
    requirePmc(model, targets);
    auto partition = reachStates(model, targets);
    std::vector<RationalFunction> values(model.stateCount());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        if (targets[s]) {
            values[s] = one;
        }
    }
    for (std::uint64_t step = 0; step < steps; ++step) {
        std::vector<RationalFunction> next(model.stateCount());
        for (StateId s = 0; s < model.stateCount(); ++s) {
            if (targets[s]) {
                next[s] = one;
                continue;
            }
            if (partition.cannotReach[s]) {
                continue;
            }
            RationalFunction sum;
            for (auto const& entry : model.row(model.firstRow(s))) {
                if (!values[entry.target].isZero()) {
                    sum += entry.value * values[entry.target];
                }
            }
            next[s] = sum.simplified();
        }
        if (next == values) {
            break;  // every path is shorter than the remaining bound
        }
        values = std::move(next);
    }
    return values[model.initialState()].simplified();
}

RationalFunction specificationFunction(ParametricModel const& model, Specification const& spec,
                                       EliminationOptions const& options) {
    auto targets = targetStates(model, spec);
    switch (spec.kind) {
        case SpecKind::ReachProb:
            return solutionFunction(model, targets, options);
        case SpecKind::BoundedReachProb:
            return boundedReachFunction(model, targets, spec.stepBound);
        case SpecKind::ExpReward:
            return expectedRewardFunction(model, targets, options);
    }
    return RationalFunction();
}

}  // namespace paramsynth
