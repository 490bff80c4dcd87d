#pragma once

#include "paramsynth/models/model.h"
#include "paramsynth/regions/region.h"
#include "paramsynth/smt/problem.h"

#include <optional>

namespace paramsynth {

struct GraphPreservation {
    enum class Status { Preserving, NotPreserving, NeedsSolver };

    Status status = Status::Preserving;
    std::optional<Instantiation> witness;  // NotPreserving only
    std::optional<smt::Problem> formula;   // NeedsSolver only: satisfiable iff not preserving
};

// Decides graph preservation by vertex sign checks when all functions have multilinear
// numerators and denominators and every row sums to one; otherwise defers to a solver.
GraphPreservation checkGraphPreserving(ParametricModel const& model, Region const& region);

}  // namespace paramsynth
