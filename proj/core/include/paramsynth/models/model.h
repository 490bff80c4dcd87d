#pragma once

#include "paramsynth/errors.h"
#include "paramsynth/ratfunc/rational_function.h"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace paramsynth {

using StateId = std::uint32_t;

enum class ModelKind { Pmc, Pmdp };

template<typename Value>
struct Entry {
    StateId target;
    Value value;

    bool operator==(Entry const& other) const = default;
};

// Row-grouped sparse storage: each state owns a contiguous group of rows (one per action),
// each row a contiguous run of entries sorted by target.
template<typename Value>
class SparseModel {
public:
    ModelKind kind() const { return kind_; }
    std::size_t stateCount() const { return groupStart_.size() - 1; }
    StateId initialState() const { return initial_; }
    std::size_t rowCount() const { return rowStart_.size() - 1; }

    std::size_t firstRow(StateId state) const { return groupStart_[state]; }
    std::size_t rowEnd(StateId state) const { return groupStart_[state + 1]; }
    std::size_t actionCount(StateId state) const { return rowEnd(state) - firstRow(state); }
    StateId rowState(std::size_t row) const { return rowState_[row]; }

    std::span<Entry<Value> const> row(std::size_t row) const {
        return {entries_.data() + rowStart_[row], rowStart_[row + 1] - rowStart_[row]};
    }
    std::string const& actionLabel(std::size_t row) const { return actionLabels_[row]; }

    bool hasRewards() const { return !rewards_.empty(); }
    Value const& reward(std::size_t row) const { return rewards_[row]; }
    std::vector<Value> const& rewards() const { return rewards_; }

    std::map<std::string, std::vector<bool>> const& labels() const { return labels_; }
    bool hasLabel(std::string const& name) const { return labels_.count(name) > 0; }
    std::vector<bool> const& label(std::string const& name) const {
        auto it = labels_.find(name);
        if (it == labels_.end()) {
            throw InvalidArgument("unknown label '" + name + "'");
        }
        return it->second;
    }

    // Builder interface; rows must be added state by state in increasing order.
    static SparseModel create(ModelKind kind, std::size_t states, StateId initial) {
        SparseModel model;
        model.kind_ = kind;
        model.initial_ = initial;
        model.groupStart_.assign(1, 0);
        model.rowStart_.assign(1, 0);
        model.pendingStates_ = states;
        return model;
    }
    void addRow(StateId state, std::string action, std::vector<Entry<Value>> entries, Value rewardValue) {
        if (state >= pendingStates_) {
            throw InvalidArgument("state " + std::to_string(state) + " out of range");
        }
        while (groupStart_.size() - 1 < state) {
            groupStart_.push_back(rowCount());
        }
        if (groupStart_.size() - 1 > state) {
            throw InvalidArgument("rows must be added in state order");
        }
        for (auto& e : entries) {
            entries_.push_back(std::move(e));
        }
        rowStart_.push_back(entries_.size());
        actionLabels_.push_back(std::move(action));
        rowState_.push_back(state);
        pendingRewards_.push_back(std::move(rewardValue));
    }
    void finish(bool withRewards) {
        while (groupStart_.size() < pendingStates_ + 1) {
            groupStart_.push_back(rowCount());
        }
        for (std::size_t s = 0; s < pendingStates_; ++s) {
            if (groupStart_[s] == groupStart_[s + 1]) {
                throw InvalidArgument("state " + std::to_string(s) + " has no enabled action");
            }
        }
        if (withRewards) {
            rewards_ = std::move(pendingRewards_);
        }
        pendingRewards_.clear();
    }
    void setLabel(std::string const& name, std::vector<bool> states) { labels_[name] = std::move(states); }

private:
    ModelKind kind_ = ModelKind::Pmc;
    StateId initial_ = 0;
    std::vector<std::size_t> groupStart_{0};
    std::vector<std::size_t> rowStart_{0};
    std::vector<StateId> rowState_;
    std::vector<Entry<Value>> entries_;
    std::vector<std::string> actionLabels_;
    std::vector<Value> rewards_;
    std::vector<Value> pendingRewards_;
    std::size_t pendingStates_ = 0;
    std::map<std::string, std::vector<bool>> labels_;
};

class ParametricModel : public SparseModel<RationalFunction> {
public:
    ParametricModel() = default;
    ParametricModel(SparseModel<RationalFunction> base, VariablePool parameters)
        : SparseModel<RationalFunction>(std::move(base)), parameters_(std::move(parameters)) {}

    VariablePool const& parameters() const { return parameters_; }
    std::size_t parameterCount() const { return parameters_.size(); }

private:
    VariablePool parameters_;
};

class ConcreteModel : public SparseModel<Rational> {
public:
    ConcreteModel() = default;
    ConcreteModel(SparseModel<Rational> base, bool wellDefined, std::string problem)
        : SparseModel<Rational>(std::move(base)), wellDefined_(wellDefined), problem_(std::move(problem)) {}

    bool wellDefined() const { return wellDefined_; }
    std::string const& problem() const { return problem_; }

private:
    bool wellDefined_ = true;
    std::string problem_;
};

}  // namespace paramsynth
