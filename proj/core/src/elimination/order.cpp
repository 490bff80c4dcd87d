#include "paramsynth/elimination/order.h"

#include "paramsynth/errors.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

namespace paramsynth {

namespace {

struct OrderName {
    EliminationOrder order;
    char const* name;
};

constexpr OrderName orderNames[] = {
    {EliminationOrder::Forward, "forward"},
    {EliminationOrder::ForwardReversed, "forward-reversed"},
    {EliminationOrder::Backward, "backward"},
    {EliminationOrder::BackwardReversed, "backward-reversed"},
    {EliminationOrder::SCCTopological, "scc"},
    {EliminationOrder::Regex, "regex"},
    {EliminationOrder::SPen, "spen"},
    {EliminationOrder::DPen, "dpen"},
};

std::size_t complexity(RationalFunction const& f) {
    return f.numerator().termCount() + f.numerator().totalDegree() + f.denominator().termCount() +
           f.denominator().totalDegree();
}

std::size_t regexScore(FlexibleMatrix const& matrix, StateId s) {
    std::size_t in = matrix.predecessors(s).size() - (matrix.has(s, s) ? 1 : 0);
    std::size_t out = matrix.row(s).size() - (matrix.has(s, s) ? 1 : 0);
    return in * out;
}

// Distance of every state to the anchor states along reversed edges; unreachable states get the maximum.
std::vector<std::size_t> backwardDistance(FlexibleMatrix const& matrix, std::vector<bool> const& anchors) {
    std::vector<std::size_t> distance(matrix.stateCount(), std::numeric_limits<std::size_t>::max());
    std::deque<StateId> queue;
    for (StateId s = 0; s < matrix.stateCount(); ++s) {
        if (s < anchors.size() && anchors[s]) {
            distance[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId from : matrix.predecessors(s)) {
            if (distance[from] == std::numeric_limits<std::size_t>::max()) {
                distance[from] = distance[s] + 1;
                queue.push_back(from);
            }
        }
    }
    return distance;
}

// Tarjan on the subgraph induced by the eligible states; components come out sinks first.
std::vector<std::vector<StateId>> components(FlexibleMatrix const& matrix, std::vector<bool> const& inside) {
    std::size_t n = matrix.stateCount();
    std::vector<std::size_t> index(n, 0);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<StateId> stack;
    std::vector<std::vector<StateId>> result;
    std::size_t counter = 1;
    std::function<void(StateId)> visit = [&](StateId s) {
        index[s] = low[s] = counter++;
        stack.push_back(s);
        onStack[s] = true;
        for (auto const& [t, value] : matrix.row(s)) {
            if (!inside[t]) {
                continue;
            }
            if (index[t] == 0) {
                visit(t);
                low[s] = std::min(low[s], low[t]);
            } else if (onStack[t]) {
                low[s] = std::min(low[s], index[t]);
            }
        }
        if (low[s] == index[s]) {
            std::vector<StateId> component;
            StateId t;
            do {
                t = stack.back();
                stack.pop_back();
                onStack[t] = false;
                component.push_back(t);
            } while (t != s);
            std::sort(component.begin(), component.end());
            result.push_back(std::move(component));
        }
    };
    for (StateId s = 0; s < n; ++s) {
        if (inside[s] && index[s] == 0) {
            visit(s);
        }
    }
    return result;
}

}  // namespace

std::string toString(EliminationOrder order) {
    for (auto const& entry : orderNames) {
        if (entry.order == order) {
            return entry.name;
        }
    }
    return "?";
}

EliminationOrder parseEliminationOrder(std::string_view text) {
    for (auto const& entry : orderNames) {
        if (text == entry.name) {
            return entry.order;
        }
    }
    throw InvalidArgument("unknown elimination order '" + std::string(text) + "'");
}

std::vector<EliminationOrder> allEliminationOrders() {
    std::vector<EliminationOrder> result;
    for (auto const& entry : orderNames) {
        result.push_back(entry.order);
    }
    return result;
}

bool isDynamic(EliminationOrder order) {
    return order == EliminationOrder::Regex || order == EliminationOrder::DPen;
}

std::size_t eliminationPenalty(FlexibleMatrix const& matrix, StateId s) {
    std::size_t penalty = 0;
    for (auto const& [to, value] : matrix.row(s)) {
        penalty += complexity(value);
    }
    for (StateId from : matrix.predecessors(s)) {
        if (from != s) {
            penalty += complexity(matrix.get(from, s));
        }
    }
    return penalty;
}

EliminationQueue::EliminationQueue(EliminationOrder order, FlexibleMatrix const& matrix,
                                   std::vector<StateId> eligible, std::vector<bool> const& anchors)
    : order_(order), remaining_(std::move(eligible)) {
    std::sort(remaining_.begin(), remaining_.end());
    auto byKey = [&](std::vector<std::size_t> const& key) {
        std::stable_sort(remaining_.begin(), remaining_.end(),
                         [&](StateId a, StateId b) { return key[a] < key[b]; });
    };
    switch (order) {
        case EliminationOrder::Forward:
        case EliminationOrder::Regex:
        case EliminationOrder::DPen:
            break;
        case EliminationOrder::ForwardReversed:
            std::reverse(remaining_.begin(), remaining_.end());
            break;
        case EliminationOrder::Backward:
        case EliminationOrder::BackwardReversed:
            byKey(backwardDistance(matrix, anchors));
            if (order == EliminationOrder::BackwardReversed) {
                std::reverse(remaining_.begin(), remaining_.end());
            }
            break;
        case EliminationOrder::SCCTopological: {
            std::vector<bool> inside(matrix.stateCount(), false);
            for (StateId s : remaining_) {
                inside[s] = true;
            }
            auto sccs = components(matrix, inside);
            remaining_.clear();
            for (auto it = sccs.rbegin(); it != sccs.rend(); ++it) {
                remaining_.insert(remaining_.end(), it->begin(), it->end());
            }
            break;
        }
        case EliminationOrder::SPen: {
            std::vector<std::size_t> penalty(matrix.stateCount(), 0);
            for (StateId s : remaining_) {
                penalty[s] = eliminationPenalty(matrix, s);
            }
            byKey(penalty);
            break;
        }
    }
}

std::optional<StateId> EliminationQueue::next(FlexibleMatrix const& matrix) {
    if (remaining_.empty()) {
        return std::nullopt;
    }
    auto pick = remaining_.begin();
    if (isDynamic(order_)) {
        auto score = [&](StateId s) {
            return order_ == EliminationOrder::Regex ? regexScore(matrix, s) : eliminationPenalty(matrix, s);
        };
        std::size_t best = score(*pick);
        for (auto it = std::next(remaining_.begin()); it != remaining_.end(); ++it) {
            std::size_t value = score(*it);
            if (value < best) {
                best = value;
                pick = it;
            }
        }
    }
    StateId result = *pick;
    remaining_.erase(pick);
    return result;
}

}  // namespace paramsynth
