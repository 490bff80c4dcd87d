#include "paramsynth/lifting/substitution.h"

#include "paramsynth/models/graph.h"
#include "paramsynth/ratfunc/gcd.h"
#include "paramsynth/regions/graph_preservation.h"

#include <algorithm>
#include <cmath>
#include <deque>

namespace paramsynth {

namespace {

constexpr double relativePrecision = 1e-8;
constexpr std::size_t maxValueIterations = 100000;

bool better(ExtendedRational const& candidate, ExtendedRational const& incumbent, Direction direction) {
    return direction == Direction::Maximize ? candidate > incumbent : candidate < incumbent;
}

bool better(double candidate, double incumbent, Direction direction) {
    return direction == Direction::Maximize ? candidate > incumbent : candidate < incumbent;
}

ExtendedRational exactRowValue(SubstitutionGame::Row const& row, std::vector<ExtendedRational> const& values,
                               bool withReward) {
    Rational sum = withReward ? row.reward : Rational(0);
    for (auto const& entry : row.entries) {
        if (entry.value == 0) {
            continue;
        }
        if (values[entry.target].isInfinite()) {
            return ExtendedRational::infinity();
        }
        sum += entry.value * values[entry.target].value();
    }
    return sum;
}

double approxRowValue(SubstitutionGame::Row const& row, std::vector<double> const& values, bool withReward) {
    double sum = withReward ? row.reward.get_d() : 0.0;
    for (auto const& entry : row.entries) {
        sum += entry.value.get_d() * values[entry.target];
    }
    return sum;
}

struct Approximation {
    std::vector<std::size_t> group;
    std::vector<std::size_t> row;
    std::size_t iterations = 0;
};

// Gauss-Seidel value iteration from 0; the extracted strategies only seed the exact phase.
Approximation approximate(SubstitutionGame const& game, Direction groupPlayer, Direction rowPlayer) {
    bool reward = game.objective == Objective::ExpectedReward;
    std::size_t n = game.stateCount();
    std::vector<double> values(n, 0.0);
    for (StateId s = 0; s < n; ++s) {
        if (game.targets[s]) {
            values[s] = reward ? 0.0 : 1.0;
        }
    }
    Approximation result;
    result.group.assign(n, 0);
    result.row.assign(n, 0);
    bool converged = false;
    while (!converged && result.iterations < maxValueIterations) {
        ++result.iterations;
        converged = true;
        for (StateId s = 0; s < n; ++s) {
            if (game.targets[s]) {
                continue;
            }
            double best = 0.0;
            for (std::size_t g = 0; g < game.states[s].size(); ++g) {
                auto const& rows = game.states[s][g].rows;
                double groupValue = 0.0;
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    double v = approxRowValue(rows[r], values, reward);
                    if (r == 0 || better(v, groupValue, rowPlayer)) {
                        groupValue = v;
                    }
                }
                if (g == 0 || better(groupValue, best, groupPlayer)) {
                    best = groupValue;
                    result.group[s] = g;
                }
            }
            double diff = std::fabs(best - values[s]);
            if (diff > relativePrecision * std::max(std::fabs(best), 1e-300) && diff > 0.0) {
                converged = false;
            }
            values[s] = best;
        }
    }
    // Row choices of the finally chosen groups.
    for (StateId s = 0; s < n; ++s) {
        if (game.targets[s]) {
            continue;
        }
        auto const& rows = game.states[s][result.group[s]].rows;
        double groupValue = 0.0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            double v = approxRowValue(rows[r], values, reward);
            if (r == 0 || better(v, groupValue, rowPlayer)) {
                groupValue = v;
                result.row[s] = r;
            }
        }
    }
    return result;
}

// The MDP left for the second player once the first player fixed a group in every state.
SparseModel<Rational> restrictToGroups(SubstitutionGame const& game, std::vector<std::size_t> const& group) {
    bool reward = game.objective == Objective::ExpectedReward;
    auto mdp = SparseModel<Rational>::create(ModelKind::Pmdp, game.stateCount(), game.initial);
    for (StateId s = 0; s < game.stateCount(); ++s) {
        auto const& rows = game.states[s][group[s]].rows;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            mdp.addRow(s, std::to_string(r), rows[r].entries, rows[r].reward);
        }
    }
    mdp.finish(reward);
    return mdp;
}

// Least common multiple of the reduced denominators of one action, if it is multilinear and
// turns every numerator into a multilinear polynomial.
bool actionIsLocallyMonotone(std::vector<RationalFunction> const& functions) {
    Polynomial common(Rational(1));
    std::vector<RationalFunction> reduced;
    for (auto const& f : functions) {
        reduced.push_back(f.simplified());
        Polynomial const& d = reduced.back().denominator();
        if (d.isConstant()) {
            continue;
        }
        Polynomial shared = gcd(common, d);
        common = common * d.divideExact(shared);
        if (!common.isMultilinear()) {
            return false;
        }
    }
    for (auto const& f : reduced) {
        if (!(f.numerator() * common.divideExact(f.denominator())).isMultilinear()) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool isLocallyMonotone(ParametricModel const& model, bool withRewards) {
    for (std::size_t r = 0; r < model.rowCount(); ++r) {
        std::vector<RationalFunction> functions;
        for (auto const& entry : model.row(r)) {
            functions.push_back(entry.value);
        }
        if (withRewards && model.hasRewards()) {
            functions.push_back(model.reward(r));
        }
        if (!actionIsLocallyMonotone(functions)) {
            return false;
        }
    }
    return true;
}

GameSolution solveGame(SubstitutionGame const& game, Direction groupPlayer, Direction rowPlayer) {
    std::size_t n = game.stateCount();
    bool reward = game.objective == Objective::ExpectedReward;
    Approximation seed = approximate(game, groupPlayer, rowPlayer);

    GameSolution solution;
    solution.valueIterations = seed.iterations;
    solution.group = seed.group;
    std::vector<std::size_t> rowSeed = seed.row;
    while (true) {
        ++solution.improvementRounds;
        auto mdp = restrictToGroups(game, solution.group);
        std::vector<std::size_t> initial(n);
        for (StateId s = 0; s < n; ++s) {
            initial[s] = mdp.firstRow(s) + std::min(rowSeed[s], mdp.actionCount(s) - 1);
        }
        auto exact = policyIteration(mdp, game.targets, game.objective, rowPlayer, initial);
        solution.values = std::move(exact.values);
        solution.row.assign(n, 0);
        for (StateId s = 0; s < n; ++s) {
            solution.row[s] = exact.policy[s] - mdp.firstRow(s);
        }

        bool improved = false;
        for (StateId s = 0; s < n; ++s) {
            if (game.targets[s] || game.states[s].size() < 2) {
                continue;
            }
            std::size_t bestGroup = solution.group[s];
            std::size_t bestRow = solution.row[s];
            ExtendedRational bestValue = solution.values[s];
            for (std::size_t g = 0; g < game.states[s].size(); ++g) {
                if (g == solution.group[s]) {
                    continue;
                }
                auto const& rows = game.states[s][g].rows;
                ExtendedRational groupValue;
                std::size_t groupRow = 0;
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    auto v = exactRowValue(rows[r], solution.values, reward);
                    if (r == 0 || better(v, groupValue, rowPlayer)) {
                        groupValue = v;
                        groupRow = r;
                    }
                }
                if (better(groupValue, bestValue, groupPlayer)) {
                    bestValue = groupValue;
                    bestGroup = g;
                    bestRow = groupRow;
                }
            }
            if (bestGroup != solution.group[s]) {
                solution.group[s] = bestGroup;
                solution.row[s] = bestRow;
                improved = true;
            }
        }
        if (!improved) {
            return solution;
        }
        rowSeed = solution.row;
    }
}

ParameterLifter::ParameterLifter(ParametricModel const& model, Specification const& spec)
    : model_(model), spec_(spec) {
    if (spec.kind == SpecKind::BoundedReachProb) {
        throw UnsupportedSpecification("parameter lifting does not support step-bounded reachability");
    }
    bool reward = spec.kind == SpecKind::ExpReward;
    if (reward && model.kind() == ModelKind::Pmdp) {
        throw UnsupportedSpecification("parameter lifting supports expected rewards on pMCs only");
    }
    if (reward && !model.hasRewards()) {
        throw InvalidArgument("expected-reward specification on a model without rewards");
    }
    targets_ = targetStates(model, spec);
    reachable_ = forwardReachable(model);
    if (reward) {
        auto canReach = existsReach(model, targets_);
        for (StateId s = 0; s < model.stateCount(); ++s) {
            if (reachable_[s] && !canReach[s]) {
                throw RewardDiverges("state " + std::to_string(s) + " is reachable but cannot reach the targets");
            }
        }
    }
    if (!isLocallyMonotone(model, reward)) {
        throw NotLocallyMonotone("some action is not of the form f/g with multilinear f and common multilinear g");
    }
    templates_.resize(model.stateCount());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        for (std::size_t row = model.firstRow(s); row < model.rowEnd(s); ++row) {
            ActionTemplate action{row, {}};
            for (auto const& entry : model.row(row)) {
                auto vars = entry.value.variables();
                action.parameters.insert(vars.begin(), vars.end());
            }
            if (reward) {
                auto vars = model.reward(row).variables();
                action.parameters.insert(vars.begin(), vars.end());
            }
            templates_[s].push_back(std::move(action));
        }
    }
}

SubstitutionGame ParameterLifter::build(Region const& region) const {
    if (region.dimension() != model_.parameterCount()) {
        throw InvalidArgument("region has " + std::to_string(region.dimension()) + " dimensions, model has " +
                              std::to_string(model_.parameterCount()) + " parameters");
    }
    auto preservation = checkGraphPreserving(model_, region);
    if (preservation.status == GraphPreservation::Status::NotPreserving) {
        throw RegionNotGraphPreserving("region " + region.toString(model_.parameters()) +
                                       " is not graph-preserving, witness " +
                                       preservation.witness->toString(model_.parameters()));
    }
    if (preservation.status == GraphPreservation::Status::NeedsSolver) {
        throw RegionNotGraphPreserving("graph preservation of region " + region.toString(model_.parameters()) +
                                       " cannot be shown by vertex checks");
    }
    bool reward = spec_.kind == SpecKind::ExpReward;
    SubstitutionGame game;
    game.initial = model_.initialState();
    game.targets = targets_;
    game.objective = reward ? Objective::ExpectedReward : Objective::Reachability;
    game.states.resize(model_.stateCount());
    for (StateId s = 0; s < model_.stateCount(); ++s) {
        for (auto const& action : templates_[s]) {
            SubstitutionGame::Group group;
            group.action = action.action;
            for (auto const& vertex : region.vertices(action.parameters)) {
                SubstitutionGame::Row row;
                for (auto const& entry : model_.row(action.action)) {
                    row.entries.push_back({entry.target, *entry.value.evaluate(vertex)});
                }
                if (reward) {
                    row.reward = *model_.reward(action.action).evaluate(vertex);
                }
                bool duplicate = std::any_of(group.rows.begin(), group.rows.end(), [&](auto const& other) {
                    return other.entries == row.entries && other.reward == row.reward;
                });
                if (duplicate) {
                    continue;
                }
                for (VariableId v : action.parameters) {
                    row.vertex.emplace_back(v, vertex.at(v));
                }
                group.rows.push_back(std::move(row));
            }
            game.states[s].push_back(std::move(group));
        }
    }
    return game;
}

Instantiation ParameterLifter::realize(SubstitutionGame const& game, GameSolution const& solution,
                                       Region const& region) const {
    std::vector<bool> visited(game.stateCount(), false);
    std::deque<StateId> queue{game.initial};
    visited[game.initial] = true;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        if (game.targets[s]) {
            continue;
        }
        for (auto const& entry : game.states[s][solution.group[s]].rows[solution.row[s]].entries) {
            if (entry.value != 0 && !visited[entry.target]) {
                visited[entry.target] = true;
                queue.push_back(entry.target);
            }
        }
    }
    Instantiation point = region.center();
    std::vector<bool> assigned(region.dimension(), false);
    for (StateId s = 0; s < game.stateCount(); ++s) {
        if (!visited[s] || game.targets[s]) {
            continue;
        }
        for (auto const& [var, value] : game.states[s][solution.group[s]].rows[solution.row[s]].vertex) {
            if (!assigned[var]) {
                assigned[var] = true;
                point.set(var, value);
            }
        }
    }
    return point;
}

RegionVerdict ParameterLifter::check(Region const& region, Semantics semantics, Refute refute) const {
    SubstitutionGame game = build(region);
    // The strategy that decides the measure: worst case for demonic, best case for angelic.
    Direction measure = (semantics == Semantics::Demonic) == spec_.isUpperBound() ? Direction::Maximize
                                                                                   : Direction::Minimize;
    GameSolution upper = solveGame(game, measure, Direction::Maximize);
    GameSolution lower = solveGame(game, measure, Direction::Minimize);

    RegionVerdict verdict;
    verdict.upperBound = upper.values[game.initial];
    verdict.lowerBound = lower.values[game.initial];
    ExtendedRational const& optimistic = spec_.isUpperBound() ? *verdict.lowerBound : *verdict.upperBound;
    ExtendedRational const& pessimistic = spec_.isUpperBound() ? *verdict.upperBound : *verdict.lowerBound;
    bool rejecting = refute == Refute::Rejecting;
    if (satisfies(pessimistic, spec_)) {
        verdict.status = RegionStatus::AllSat;
        if (!rejecting) {
            return verdict;
        }
    } else if (!satisfies(optimistic, spec_)) {
        verdict.status = RegionStatus::AllViolate;
        if (rejecting) {
            return verdict;
        }
    }

    // Try to turn the pessimistic (optimistic) vertex strategy into an actual violating
    // (satisfying) point.
    GameSolution const& witness = spec_.isUpperBound() != rejecting ? upper : lower;
    std::vector<Instantiation> candidates{realize(game, witness, region)};
    auto corners = region.vertices();
    if (corners.size() <= 16) {
        candidates.insert(candidates.end(), corners.begin(), corners.end());
    }
    for (auto const& point : candidates) {
        ConcreteModel concrete = instantiate(model_, point);
        if (!concrete.wellDefined()) {
            continue;
        }
        if (satisfies(checkConcrete(concrete, spec_, measure).value, spec_) == rejecting) {
            verdict.counterexample = point;
            return verdict;
        }
    }
    if (verdict.status == RegionStatus::Unknown) {
        verdict.note = "bound not realized by a region point";
    }
    return verdict;
}

}  // namespace paramsynth
