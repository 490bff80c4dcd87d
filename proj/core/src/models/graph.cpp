#include "paramsynth/models/graph.h"

#include <algorithm>
#include <deque>
#include <functional>

namespace paramsynth {

namespace {

bool isEdge(Rational const& value) { return value != 0; }
bool isEdge(RationalFunction const& value) { return !value.isZero(); }

template<typename Value>
std::vector<std::vector<StateId>> predecessors(SparseModel<Value> const& model) {
    std::vector<std::vector<StateId>> result(model.stateCount());
    for (std::size_t r = 0; r < model.rowCount(); ++r) {
        StateId source = model.rowState(r);
        for (auto const& entry : model.row(r)) {
            if (isEdge(entry.value)) {
                result[entry.target].push_back(source);
            }
        }
    }
    for (auto& list : result) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return result;
}

// Backward search from the seed states, only expanding into allowed states.
template<typename Value>
std::vector<bool> backwardClosure(SparseModel<Value> const& model, std::vector<bool> const& seed,
                                  std::vector<bool> const& allowed) {
    auto preds = predecessors(model);
    std::vector<bool> result = seed;
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
            if (!result[p] && allowed[p]) {
                result[p] = true;
                queue.push_back(p);
            }
        }
    }
    return result;
}

}  // namespace

template<typename Value>
std::vector<bool> existsReach(SparseModel<Value> const& model, std::vector<bool> const& targets) {
    std::vector<bool> allowed(model.stateCount(), true);
    return backwardClosure(model, targets, allowed);
}

template<typename Value>
std::vector<bool> prob0E(SparseModel<Value> const& model, std::vector<bool> const& targets) {
    // Greatest fixed point: keep states having an action whose support stays inside the set.
    std::vector<bool> inside(model.stateCount());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        inside[s] = !targets[s];
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < model.stateCount(); ++s) {
            if (!inside[s]) {
                continue;
            }
            bool hasAvoidingAction = false;
            for (std::size_t r = model.firstRow(s); r < model.rowEnd(s) && !hasAvoidingAction; ++r) {
                bool stays = true;
                for (auto const& entry : model.row(r)) {
                    if (isEdge(entry.value) && !inside[entry.target]) {
                        stays = false;
                        break;
                    }
                }
                hasAvoidingAction = stays;
            }
            if (!hasAvoidingAction) {
                inside[s] = false;
                changed = true;
            }
        }
    }
    return inside;
}

template<typename Value>
std::vector<bool> prob1A(SparseModel<Value> const& model, std::vector<bool> const& targets) {
    // Some strategy misses the targets with positive probability iff a surely-avoiding
    // state is reachable (existentially) along a target-free path.
    std::vector<bool> avoid = prob0E(model, targets);
    std::vector<bool> allowed(model.stateCount());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        allowed[s] = !targets[s];
    }
    std::vector<bool> bad = backwardClosure(model, avoid, allowed);
    std::vector<bool> result(model.stateCount());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        result[s] = !bad[s];
    }
    return result;
}

template<typename Value>
std::vector<bool> forwardReachable(SparseModel<Value> const& model) {
    std::vector<bool> seen(model.stateCount(), false);
    std::deque<StateId> queue{model.initialState()};
    seen[model.initialState()] = true;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (std::size_t r = model.firstRow(s); r < model.rowEnd(s); ++r) {
            for (auto const& entry : model.row(r)) {
                if (isEdge(entry.value) && !seen[entry.target]) {
                    seen[entry.target] = true;
                    queue.push_back(entry.target);
                }
            }
        }
    }
    return seen;
}

template<typename Value>
std::vector<std::vector<StateId>> stronglyConnectedComponents(SparseModel<Value> const& model) {
    std::size_t n = model.stateCount();
    std::vector<std::vector<StateId>> successors(n);
    for (std::size_t r = 0; r < model.rowCount(); ++r) {
        for (auto const& entry : model.row(r)) {
            if (isEdge(entry.value)) {
                successors[model.rowState(r)].push_back(entry.target);
            }
        }
    }
    for (auto& list : successors) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    std::vector<int> index(n, -1);
    std::vector<int> low(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<StateId> stack;
    std::vector<std::vector<StateId>> components;
    int counter = 0;

    // Iterative Tarjan to stay safe on long chains.
    struct Frame {
        StateId state;
        std::size_t next;
    };
    for (StateId root = 0; root < n; ++root) {
        if (index[root] >= 0) {
            continue;
        }
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        onStack[root] = true;
        while (!frames.empty()) {
            Frame& frame = frames.back();
            StateId v = frame.state;
            if (frame.next < successors[v].size()) {
                StateId w = successors[v][frame.next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    onStack[w] = true;
                    frames.push_back({w, 0});
                } else if (onStack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<StateId> component;
                StateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    onStack[w] = false;
                    component.push_back(w);
                } while (w != v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
            frames.pop_back();
            if (!frames.empty()) {
                StateId parent = frames.back().state;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return components;
}

#define PARAMSYNTH_INSTANTIATE_GRAPH(Value)                                                                   \
    template std::vector<bool> existsReach(SparseModel<Value> const&, std::vector<bool> const&);             \
    template std::vector<bool> prob0E(SparseModel<Value> const&, std::vector<bool> const&);                  \
    template std::vector<bool> prob1A(SparseModel<Value> const&, std::vector<bool> const&);                  \
    template std::vector<bool> forwardReachable(SparseModel<Value> const&);                                  \
    template std::vector<std::vector<StateId>> stronglyConnectedComponents(SparseModel<Value> const&);

PARAMSYNTH_INSTANTIATE_GRAPH(Rational)
PARAMSYNTH_INSTANTIATE_GRAPH(RationalFunction)

#undef PARAMSYNTH_INSTANTIATE_GRAPH

ParametricModel inducedChain(ParametricModel const& model, std::vector<std::size_t> const& policy) {
    auto chain = SparseModel<RationalFunction>::create(ModelKind::Pmc, model.stateCount(), model.initialState());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        std::size_t row = policy.at(s);
        if (model.rowState(row) != s) {
            throw InvalidArgument("policy row " + std::to_string(row) + " does not belong to state " + std::to_string(s));
        }
        auto entries = model.row(row);
        chain.addRow(s, model.actionLabel(row), {entries.begin(), entries.end()},
                     model.hasRewards() ? model.reward(row) : RationalFunction());
    }
    chain.finish(model.hasRewards());
    for (auto const& [name, states] : model.labels()) {
        chain.setLabel(name, states);
    }
    return {std::move(chain), model.parameters()};
}

}  // namespace paramsynth
