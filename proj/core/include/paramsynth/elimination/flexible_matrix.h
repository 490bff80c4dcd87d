#pragma once

#include "paramsynth/models/model.h"

#include <map>
#include <set>
#include <vector>

namespace paramsynth {

// Mutable sparse matrix over rational functions with a synchronized predecessor index and a
// one-step vector x. x(s) collects what state s contributes directly to the measure (the
// one-step target probability, or the state reward).
class FlexibleMatrix {
public:
    using Row = std::map<StateId, RationalFunction>;

    FlexibleMatrix() = default;
    explicit FlexibleMatrix(std::size_t states);

    std::size_t stateCount() const { return rows_.size(); }
    Row const& row(StateId s) const { return rows_[s]; }
    std::set<StateId> const& predecessors(StateId s) const { return predecessors_[s]; }

    RationalFunction get(StateId from, StateId to) const;
    bool has(StateId from, StateId to) const { return rows_[from].count(to) > 0; }
    void set(StateId from, StateId to, RationalFunction value);  // zero erases
    void add(StateId from, StateId to, RationalFunction const& value);
    void erase(StateId from, StateId to);
    void clearRow(StateId s);

    RationalFunction const& oneStep(StateId s) const { return oneStep_[s]; }
    void setOneStep(StateId s, RationalFunction value) { oneStep_[s] = std::move(value); }

    std::size_t entryCount() const;
    // Predecessor index agrees with the rows.
    bool consistent() const;

private:
    std::vector<Row> rows_;
    std::vector<std::set<StateId>> predecessors_;
    std::vector<RationalFunction> oneStep_;
};

// Removes the self-loop of s by rescaling its other entries (and, if withOneStep, x(s)) with
// 1/(1 - loop). Throws AbsorbingSelfLoop when the loop is the constant one.
void eliminateSelfLoop(FlexibleMatrix& matrix, StateId s, bool withOneStep = true);

// Redirects from -> s through the successors of s; s must have no self-loop.
void eliminateTransition(FlexibleMatrix& matrix, StateId from, StateId s, bool withOneStep = true);

// Removes s from the chain: self-loop first, then every incoming transition.
void eliminateState(FlexibleMatrix& matrix, StateId s, bool withOneStep = true);

}  // namespace paramsynth
