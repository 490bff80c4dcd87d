#include "paramsynth/regions/verdict.h"

namespace paramsynth {

std::string toString(RegionStatus status) {
    switch (status) {
        case RegionStatus::AllSat:
            return "AllSat";
        case RegionStatus::AllViolate:
            return "AllViolate";
        case RegionStatus::Unknown:
            return "Unknown";
    }
    return "?";
}

std::string toString(Semantics semantics) {
    return semantics == Semantics::Demonic ? "demonic" : "angelic";
}

}  // namespace paramsynth
