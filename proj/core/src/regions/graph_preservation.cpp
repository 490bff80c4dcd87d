#include "paramsynth/regions/graph_preservation.h"

#include "paramsynth/smt/encodings.h"

namespace paramsynth {

namespace {

struct SignScan {
    bool decided = true;  // false: the function admits no vertex decision
    std::optional<Instantiation> witness;
};

bool multilinear(RationalFunction const& f) {
    return f.numerator().isMultilinear() && f.denominator().isMultilinear();
}

// Point on a box edge where the multilinear polynomial changes sign between two vertices.
Instantiation edgeRoot(std::vector<Instantiation> const& corners,
                       std::vector<Rational> const& values, Region const& region) {
    for (std::size_t i = 0; i < corners.size(); ++i) {
        for (std::size_t j = i + 1; j < corners.size(); ++j) {
            if (sgn(values[i]) * sgn(values[j]) >= 0) {
                continue;
            }
            std::optional<VariableId> differs;
            bool adjacent = true;
            for (VariableId v = 0; v < region.dimension() && adjacent; ++v) {
                if (corners[i].at(v) != corners[j].at(v)) {
                    adjacent = !differs;
                    differs = v;
                }
            }
            if (!adjacent || !differs) {
                continue;
            }
            // Along the edge the polynomial is affine in the varying coordinate.
            Rational a = corners[i].at(*differs);
            Rational b = corners[j].at(*differs);
            Instantiation root = corners[i];
            root.set(*differs, Rational(a + (b - a) * values[i] / (values[i] - values[j])));
            return root;
        }
    }
    return corners.front();  // unreachable for mixed signs on a connected cube graph
}

// Requires f > 0 (strict) or f >= 0 on the whole box, using that multilinear polynomials attain
// their extrema over a box at its vertices.
SignScan scan(RationalFunction const& f, Region const& region, bool strict) {
    SignScan result;
    auto corners = region.vertices(f.variables());
    std::vector<Rational> denominators;
    for (auto const& corner : corners) {
        denominators.push_back(f.denominator().evaluate(corner));
        if (sgn(denominators.back()) == 0) {
            result.witness = corner;
            return result;
        }
    }
    int denominatorSign = sgn(denominators.front());
    for (auto const& value : denominators) {
        if (sgn(value) != denominatorSign) {
            result.witness = edgeRoot(corners, denominators, region);
            return result;
        }
    }
    for (auto const& corner : corners) {
        int sign = sgn(f.numerator().evaluate(corner)) * denominatorSign;
        if (sign < 0 || (strict && sign == 0)) {
            result.witness = corner;
            return result;
        }
    }
    return result;
}

}  // namespace

GraphPreservation checkGraphPreserving(ParametricModel const& model, Region const& region) {
    bool fastPath = true;
    for (std::size_t r = 0; r < model.rowCount() && fastPath; ++r) {
        RationalFunction sum;
        for (auto const& entry : model.row(r)) {
            fastPath = fastPath && multilinear(entry.value);
            sum += entry.value;
        }
        fastPath = fastPath && semanticallyEqual(sum, RationalFunction(Rational(1)));
        if (model.hasRewards()) {
            fastPath = fastPath && multilinear(model.reward(r));
        }
    }
    if (!fastPath) {
        GraphPreservation result;
        result.status = GraphPreservation::Status::NeedsSolver;
        result.formula = smt::encodeGraphPreservation(model, region);
        return result;
    }
    for (std::size_t r = 0; r < model.rowCount(); ++r) {
        std::vector<std::pair<RationalFunction const*, bool>> checks;
        for (auto const& entry : model.row(r)) {
            if (!entry.value.isZero()) {
                checks.emplace_back(&entry.value, true);
            }
        }
        if (model.hasRewards()) {
            checks.emplace_back(&model.reward(r), false);
        }
        for (auto const& [function, strict] : checks) {
            auto outcome = scan(*function, region, strict);
            if (outcome.witness) {
                return {GraphPreservation::Status::NotPreserving, outcome.witness, std::nullopt};
            }
        }
    }
    return {GraphPreservation::Status::Preserving, std::nullopt, std::nullopt};
}

}  // namespace paramsynth
