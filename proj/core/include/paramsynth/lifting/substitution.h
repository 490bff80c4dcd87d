#pragma once

#include "paramsynth/models/check_concrete.h"
#include "paramsynth/regions/region.h"
#include "paramsynth/regions/verdict.h"

#include <set>
#include <utility>
#include <vector>

namespace paramsynth {

// Numeric game obtained by substituting region vertices into a parametric model. Every state
// has one group per original action (the choices of the first player); a group holds one
// row per distinct vertex assignment of the parameters occurring in that action (the choices
// of the second player). For a pMC every state has exactly one group.
struct SubstitutionGame {
    struct Row {
        std::vector<Entry<Rational>> entries;
        Rational reward;
        // Values the row assigns to the parameters of its action, ascending by id.
        std::vector<std::pair<VariableId, Rational>> vertex;

        bool operator==(Row const& other) const = default;
    };
    struct Group {
        std::size_t action = 0;  // global row of the parametric model
        std::vector<Row> rows;

        bool operator==(Group const& other) const = default;
    };

    StateId initial = 0;
    std::vector<bool> targets;
    Objective objective = Objective::Reachability;
    std::vector<std::vector<Group>> states;

    std::size_t stateCount() const { return states.size(); }
    bool operator==(SubstitutionGame const& other) const = default;
};

struct GameSolution {
    std::vector<ExtendedRational> values;
    std::vector<std::size_t> group;  // per state, index into states[s]
    std::vector<std::size_t> row;    // per state, index into the chosen group's rows
    std::size_t valueIterations = 0;
    std::size_t improvementRounds = 0;
};

// Two-phase solver: floating-point value iteration proposes strategies, exact policy
// iteration (strategy improvement for the first player over exact MDP solutions for the
// second) turns them into exact optimal values.
GameSolution solveGame(SubstitutionGame const& game, Direction groupPlayer, Direction rowPlayer);

// The parameters each state depends on must appear in functions f/g_s with multilinear f and one
// multilinear g_s per action. Cached per model and specification; build() only evaluates.
class ParameterLifter {
public:
    // Throws NotLocallyMonotone, UnsupportedSpecification (step bounds; pMDP rewards) and
    // RewardDiverges (a reachable state cannot reach the targets).
    ParameterLifter(ParametricModel const& model, Specification const& spec);

    ParametricModel const& model() const { return model_; }
    Specification const& specification() const { return spec_; }

    // Requires a graph-preserving region; throws RegionNotGraphPreserving otherwise.
    SubstitutionGame build(Region const& region) const;

    // Bounds of the measure over the region and the resulting verdict. Under the demonic
    // semantics the measure is the value of the worst strategy, under the angelic one of the best.
    // Unless the verdict settles it, a vertex strategy refuting `refute` is realized as a witness.
    RegionVerdict check(Region const& region, Semantics semantics = Semantics::Demonic,
                        Refute refute = Refute::Accepting) const;

    // Parameters of the region assigned by the vertex choices of a solution, first come first
    // served along states in ascending order; unassigned parameters take the region centre.
    Instantiation realize(SubstitutionGame const& game, GameSolution const& solution, Region const& region) const;

private:
    struct ActionTemplate {
        std::size_t action;
        std::set<VariableId> parameters;
    };

    ParametricModel const& model_;
    Specification spec_;
    std::vector<bool> targets_;
    std::vector<bool> reachable_;
    std::vector<std::vector<ActionTemplate>> templates_;
};

// Whether every action of the model has the form { f/g | f multilinear } for a common multilinear g.
bool isLocallyMonotone(ParametricModel const& model, bool withRewards);

}  // namespace paramsynth
