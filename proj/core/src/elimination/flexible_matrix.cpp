#include "paramsynth/elimination/flexible_matrix.h"

namespace paramsynth {

FlexibleMatrix::FlexibleMatrix(std::size_t states) : rows_(states), predecessors_(states), oneStep_(states) {}

RationalFunction FlexibleMatrix::get(StateId from, StateId to) const {
    auto it = rows_[from].find(to);
    return it == rows_[from].end() ? RationalFunction() : it->second;
}

void FlexibleMatrix::set(StateId from, StateId to, RationalFunction value) {
    if (value.isZero()) {
        erase(from, to);
        return;
    }
    rows_[from][to] = std::move(value);
    predecessors_[to].insert(from);
}

void FlexibleMatrix::add(StateId from, StateId to, RationalFunction const& value) {
    auto it = rows_[from].find(to);
    set(from, to, it == rows_[from].end() ? value : it->second + value);
}

void FlexibleMatrix::erase(StateId from, StateId to) {
    if (rows_[from].erase(to) > 0) {
        predecessors_[to].erase(from);
    }
}

void FlexibleMatrix::clearRow(StateId s) {
    for (auto const& [to, value] : rows_[s]) {
        predecessors_[to].erase(s);
    }
    rows_[s].clear();
}

std::size_t FlexibleMatrix::entryCount() const {
    std::size_t count = 0;
    for (auto const& row : rows_) {
        count += row.size();
    }
    return count;
}

bool FlexibleMatrix::consistent() const {
    for (StateId s = 0; s < rows_.size(); ++s) {
        for (auto const& [to, value] : rows_[s]) {
            if (value.isZero() || !predecessors_[to].count(s)) {
                return false;
            }
        }
        for (StateId from : predecessors_[s]) {
            if (!rows_[from].count(s)) {
                return false;
            }
        }
    }
    return true;
}

void eliminateSelfLoop(FlexibleMatrix& matrix, StateId s, bool withOneStep) {
    if (!matrix.has(s, s)) {
        return;
    }
    RationalFunction stay = (RationalFunction(Rational(1)) - matrix.get(s, s)).simplified();
    if (stay.isZero()) {
        throw AbsorbingSelfLoop("state " + std::to_string(s) + " has a self-loop with probability one");
    }
    matrix.erase(s, s);
    std::vector<std::pair<StateId, RationalFunction>> rescaled;
    for (auto const& [to, value] : matrix.row(s)) {
        rescaled.emplace_back(to, value / stay);
    }
    for (auto& [to, value] : rescaled) {
        matrix.set(s, to, std::move(value));
    }
    if (withOneStep && !matrix.oneStep(s).isZero()) {
        matrix.setOneStep(s, matrix.oneStep(s) / stay);
    }
}

void eliminateTransition(FlexibleMatrix& matrix, StateId from, StateId s, bool withOneStep) {
    RationalFunction via = matrix.get(from, s);
    if (via.isZero()) {
        return;
    }
    matrix.erase(from, s);
    std::vector<std::pair<StateId, RationalFunction>> successors(matrix.row(s).begin(), matrix.row(s).end());
    for (auto const& [to, value] : successors) {
        matrix.add(from, to, via * value);
    }
    if (withOneStep && !matrix.oneStep(s).isZero()) {
        matrix.setOneStep(from, matrix.oneStep(from) + via * matrix.oneStep(s));
    }
}

void eliminateState(FlexibleMatrix& matrix, StateId s, bool withOneStep) {
    eliminateSelfLoop(matrix, s, withOneStep);
    std::vector<StateId> predecessors(matrix.predecessors(s).begin(), matrix.predecessors(s).end());
    for (StateId from : predecessors) {
        if (from != s) {
            eliminateTransition(matrix, from, s, withOneStep);
        }
    }
    matrix.clearRow(s);
}

}  // namespace paramsynth
