#pragma once

#include "paramsynth/elimination/flexible_matrix.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paramsynth {

enum class EliminationOrder { Forward, ForwardReversed, Backward, BackwardReversed, SCCTopological, Regex, SPen, DPen };

std::string toString(EliminationOrder order);
EliminationOrder parseEliminationOrder(std::string_view text);
std::vector<EliminationOrder> allEliminationOrders();
bool isDynamic(EliminationOrder order);

// Penalty of a state: sum over incident entries of (term count + total degree) of numerator and
// denominator.
std::size_t eliminationPenalty(FlexibleMatrix const& matrix, StateId s);

// Hands out each eligible state exactly once. Static orders are fixed up front from the matrix at
// construction; dynamic ones re-score the remaining states against the current matrix on every pick.
// Ties go to the smallest state id. The backward orders sort by distance to the anchor states
// (those with a direct transition into the targets).
class EliminationQueue {
public:
    EliminationQueue(EliminationOrder order, FlexibleMatrix const& matrix, std::vector<StateId> eligible,
                     std::vector<bool> const& anchors = {});

    std::optional<StateId> next(FlexibleMatrix const& matrix);
    bool empty() const { return remaining_.empty(); }

private:
    EliminationOrder order_;
    std::vector<StateId> remaining_;  // static orders: in pick order
};

}  // namespace paramsynth
