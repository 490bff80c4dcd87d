#pragma once

#include "paramsynth/models/specification.h"
#include "paramsynth/ratfunc/instantiation.h"

#include <optional>
#include <string>

namespace paramsynth {

enum class RegionStatus { AllSat, AllViolate, Unknown };

// How the nondeterminism of a pMDP is quantified: every strategy must satisfy the
// specification (demonic) or some strategy must (angelic).
enum class Semantics { Demonic, Angelic };

// Which claim about a region a witness should refute: that every point satisfies the
// specification (Accepting) or that every point violates it (Rejecting).
enum class Refute { Accepting, Rejecting };

std::string toString(RegionStatus status);
std::string toString(Semantics semantics);

struct RegionVerdict {
    RegionStatus status = RegionStatus::Unknown;
    // A point of the region refuting the claim the engine was asked to look at: violating for
    // Refute::Accepting, satisfying for Refute::Rejecting.
    std::optional<Instantiation> counterexample;
    // Sound over-approximation of the measure over the region, when the engine computes one.
    std::optional<ExtendedRational> lowerBound;
    std::optional<ExtendedRational> upperBound;
    std::string note;
};

}  // namespace paramsynth
