#include "paramsynth/models/check_concrete.h"

#include "paramsynth/linalg/gauss.h"
#include "paramsynth/models/graph.h"

#include <deque>

namespace paramsynth {

ConcreteModel instantiate(ParametricModel const& model, Instantiation const& point) {
    auto base = SparseModel<Rational>::create(model.kind(), model.stateCount(), model.initialState());
    std::string problem;
    auto note = [&problem](std::string const& text) {
        if (problem.empty()) {
            problem = text;
        }
    };
    for (std::size_t r = 0; r < model.rowCount(); ++r) {
        StateId s = model.rowState(r);
        std::vector<Entry<Rational>> entries;
        Rational sum(0);
        for (auto const& entry : model.row(r)) {
            auto value = entry.value.evaluate(point);
            if (!value) {
                note("undefined transition " + std::to_string(s) + "->" + std::to_string(entry.target));
                value = Rational(0);
            } else if (*value < 0 || *value > 1) {
                note("transition " + std::to_string(s) + "->" + std::to_string(entry.target) + " outside [0,1]");
            }
            sum += *value;
            entries.push_back({entry.target, std::move(*value)});
        }
        if (sum != 1) {
            note("row of state " + std::to_string(s) + " sums to " + sum.get_str());
        }
        Rational reward(0);
        if (model.hasRewards()) {
            auto value = model.reward(r).evaluate(point);
            if (!value) {
                note("undefined reward at state " + std::to_string(s));
            } else if (*value < 0) {
                note("negative reward at state " + std::to_string(s));
            } else {
                reward = *value;
            }
        }
        base.addRow(s, model.actionLabel(r), std::move(entries), std::move(reward));
    }
    base.finish(model.hasRewards());
    for (auto const& [name, set] : model.labels()) {
        base.setLabel(name, set);
    }
    bool wellDefined = problem.empty();
    return ConcreteModel(std::move(base), wellDefined, std::move(problem));
}

bool isGraphPreservingPoint(ParametricModel const& model, Instantiation const& point) {
    for (std::size_t r = 0; r < model.rowCount(); ++r) {
        for (auto const& entry : model.row(r)) {
            auto value = entry.value.evaluate(point);
            if (!value || *value == 0) {
                return false;
            }
        }
    }
    return true;
}

std::vector<bool> targetStates(SparseModel<Rational> const& model, Specification const& spec) {
    return model.label(spec.target);
}

std::vector<bool> targetStates(ParametricModel const& model, Specification const& spec) {
    return model.label(spec.target);
}

namespace {

std::vector<std::vector<StateId>> policyPredecessors(SparseModel<Rational> const& model,
                                                    std::vector<std::size_t> const& policy) {
    std::vector<std::vector<StateId>> preds(model.stateCount());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        for (auto const& entry : model.row(policy[s])) {
            if (entry.value != 0) {
                preds[entry.target].push_back(s);
            }
        }
    }
    return preds;
}

std::vector<bool> closure(std::vector<std::vector<StateId>> const& preds, std::vector<bool> seed,
                          std::vector<bool> const& blocked) {
    std::deque<StateId> queue;
    for (StateId s = 0; s < seed.size(); ++s) {
        if (seed[s]) {
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId p : preds[s]) {
            if (!seed[p] && !blocked[p]) {
                seed[p] = true;
                queue.push_back(p);
            }
        }
    }
    return seed;
}

ExtendedRational rowValue(SparseModel<Rational> const& model, std::size_t row, Objective objective,
                          std::vector<ExtendedRational> const& values) {
    Rational sum(0);
    if (objective == Objective::ExpectedReward && model.hasRewards()) {
        sum = model.reward(row);
    }
    for (auto const& entry : model.row(row)) {
        if (entry.value == 0) {
            continue;
        }
        ExtendedRational const& v = values[entry.target];
        if (v.isInfinite()) {
            return ExtendedRational::infinity();
        }
        sum += entry.value * v.value();
    }
    return sum;
}

}  // namespace

std::vector<ExtendedRational> evaluatePolicy(SparseModel<Rational> const& model, std::vector<bool> const& targets,
                                             Objective objective, std::vector<std::size_t> const& policy) {
    std::size_t n = model.stateCount();
    auto preds = policyPredecessors(model, policy);
    std::vector<bool> none(n, false);
    std::vector<bool> canReach = closure(preds, targets, targets);

    std::vector<bool> solvable(n, false);
    std::vector<ExtendedRational> values(n);
    if (objective == Objective::Reachability) {
        for (StateId s = 0; s < n; ++s) {
            values[s] = targets[s] ? Rational(1) : Rational(0);
            solvable[s] = canReach[s] && !targets[s];
        }
    } else {
        std::vector<bool> stuck(n);
        for (StateId s = 0; s < n; ++s) {
            stuck[s] = !canReach[s];
        }
        std::vector<bool> diverging = closure(preds, stuck, targets);
        for (StateId s = 0; s < n; ++s) {
            if (targets[s]) {
                values[s] = Rational(0);
            } else if (diverging[s]) {
                values[s] = ExtendedRational::infinity();
            } else {
                solvable[s] = true;
            }
        }
    }

    std::vector<std::size_t> index(n, n);
    std::vector<StateId> unknowns;
    for (StateId s = 0; s < n; ++s) {
        if (solvable[s]) {
            index[s] = unknowns.size();
            unknowns.push_back(s);
        }
    }
    if (unknowns.empty()) {
        return values;
    }
    std::vector<linalg::SparseRow<Rational>> matrix(unknowns.size());
    std::vector<Rational> rhs(unknowns.size());
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
        StateId s = unknowns[i];
        std::size_t row = policy[s];
        matrix[i][i] = Rational(1);
        if (objective == Objective::ExpectedReward && model.hasRewards()) {
            rhs[i] = model.reward(row);
        }
        for (auto const& entry : model.row(row)) {
            if (entry.value == 0) {
                continue;
            }
            if (solvable[entry.target]) {
                matrix[i][index[entry.target]] -= entry.value;
            } else if (!values[entry.target].isInfinite()) {
                rhs[i] += entry.value * values[entry.target].value();
            }
        }
    }
    auto solution = linalg::solve(std::move(matrix), std::move(rhs));
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
        values[unknowns[i]] = solution[i];
    }
    return values;
}

ExactSolution policyIteration(SparseModel<Rational> const& model, std::vector<bool> const& targets,
                              Objective objective, Direction direction,
                              std::optional<std::vector<std::size_t>> initialPolicy) {
    std::size_t n = model.stateCount();
    ExactSolution result;
    if (initialPolicy) {
        result.policy = std::move(*initialPolicy);
    } else {
        result.policy.resize(n);
        for (StateId s = 0; s < n; ++s) {
            result.policy[s] = model.firstRow(s);
        }
    }

    std::vector<bool> fixed(n, false);
    if (objective == Objective::Reachability && direction == Direction::Minimize) {
        // States that can avoid the targets surely are settled at 0 with an avoiding action; this
        // leaves a unique fixed point for the remaining states.
        auto avoid = prob0E(model, targets);
        for (StateId s = 0; s < n; ++s) {
            if (!avoid[s]) {
                continue;
            }
            fixed[s] = true;
            for (std::size_t r = model.firstRow(s); r < model.rowEnd(s); ++r) {
                bool stays = true;
                for (auto const& entry : model.row(r)) {
                    if (entry.value != 0 && !avoid[entry.target]) {
                        stays = false;
                        break;
                    }
                }
                if (stays) {
                    result.policy[s] = r;
                    break;
                }
            }
        }
    }

    while (true) {
        ++result.iterations;
        result.values = evaluatePolicy(model, targets, objective, result.policy);
        bool changed = false;
        for (StateId s = 0; s < n; ++s) {
            if (targets[s] || fixed[s] || model.actionCount(s) < 2) {
                continue;
            }
            ExtendedRational best = rowValue(model, result.policy[s], objective, result.values);
            std::size_t bestRow = result.policy[s];
            for (std::size_t r = model.firstRow(s); r < model.rowEnd(s); ++r) {
                ExtendedRational candidate = rowValue(model, r, objective, result.values);
                bool better = direction == Direction::Maximize ? candidate > best : candidate < best;
                if (better) {
                    best = candidate;
                    bestRow = r;
                }
            }
            if (bestRow != result.policy[s]) {
                result.policy[s] = bestRow;
                changed = true;
            }
        }
        if (!changed) {
            return result;
        }
    }
}

namespace {

ConcreteResult boundedReach(ConcreteModel const& model, std::vector<bool> const& targets, std::uint64_t steps,
                            Direction direction) {
    std::size_t n = model.stateCount();
    std::vector<ExtendedRational> values(n);
    for (StateId s = 0; s < n; ++s) {
        values[s] = targets[s] ? Rational(1) : Rational(0);
    }
    std::vector<std::size_t> policy(n);
    for (StateId s = 0; s < n; ++s) {
        policy[s] = model.firstRow(s);
    }
    for (std::uint64_t step = 0; step < steps; ++step) {
        std::vector<ExtendedRational> next(n);
        for (StateId s = 0; s < n; ++s) {
            if (targets[s]) {
                next[s] = Rational(1);
                continue;
            }
            std::optional<ExtendedRational> best;
            for (std::size_t r = model.firstRow(s); r < model.rowEnd(s); ++r) {
                ExtendedRational v = rowValue(model, r, Objective::Reachability, values);
                if (!best || (direction == Direction::Maximize ? v > *best : v < *best)) {
                    best = v;
                    policy[s] = r;
                }
            }
            next[s] = *best;
        }
        values = std::move(next);
    }
    ConcreteResult result;
    result.value = values[model.initialState()];
    result.stateValues = std::move(values);
    result.policy = std::move(policy);
    return result;
}

}  // namespace

ConcreteResult checkConcrete(ConcreteModel const& model, Specification const& spec, Direction direction) {
    if (!model.wellDefined()) {
        throw InvalidArgument("instantiated model is not well-defined: " + model.problem());
    }
    auto targets = targetStates(model, spec);
    if (spec.kind == SpecKind::BoundedReachProb) {
        return boundedReach(model, targets, spec.stepBound, direction);
    }
    ConcreteResult result;
    Objective objective = Objective::Reachability;
    if (spec.kind == SpecKind::ExpReward) {
        if (!model.hasRewards()) {
            throw InvalidArgument("expected-reward specification on a model without rewards");
        }
        objective = Objective::ExpectedReward;
        auto proper = prob1A(model, targets);
        if (!proper[model.initialState()]) {
            if (model.kind() == ModelKind::Pmdp && direction == Direction::Minimize) {
                throw UnsupportedSpecification(
                    "minimal expected reward when some strategy misses the target is not supported");
            }
            result.value = ExtendedRational::infinity();
            result.stateValues.assign(model.stateCount(), ExtendedRational::infinity());
            for (StateId s = 0; s < model.stateCount(); ++s) {
                result.policy.push_back(model.firstRow(s));
            }
            return result;
        }
    }
    auto solution = policyIteration(model, targets, objective, direction);
    result.value = solution.values[model.initialState()];
    result.stateValues = std::move(solution.values);
    result.policy = std::move(solution.policy);
    return result;
}

bool satisfies(ExtendedRational const& value, Specification const& spec) {
    return compare(value, spec.relation, spec.threshold);
}

}  // namespace paramsynth
