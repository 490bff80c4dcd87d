#pragma once

#include "paramsynth/ratfunc/instantiation.h"
#include "paramsynth/ratfunc/variables.h"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace paramsynth {

struct Interval {
    Rational lower;
    Rational upper;

    Rational width() const { return upper - lower; }
    bool contains(Rational const& value) const { return lower <= value && value <= upper; }
    bool operator==(Interval const& other) const = default;
};

// Closed axis-parallel box; interval i bounds the parameter with variable id i.
class Region {
public:
    Region() = default;
    explicit Region(std::vector<Interval> intervals);  // throws InvalidArgument on lower > upper

    // [lower, upper]^n.
    static Region cube(std::size_t dimension, Rational const& lower, Rational const& upper);
    // The open unit cube (0,1)^n shrunk to the closed [epsilon, 1 - epsilon]^n.
    static Region unitCube(std::size_t dimension, Rational const& epsilon = Rational(1, 100));

    std::size_t dimension() const { return intervals_.size(); }
    Interval const& interval(VariableId var) const { return intervals_.at(var); }
    std::vector<Interval> const& intervals() const { return intervals_; }

    Rational size() const;
    Instantiation center() const;
    bool contains(Instantiation const& point) const;
    bool contains(Region const& other) const;
    bool isDegenerate(VariableId var) const { return intervals_.at(var).lower == intervals_.at(var).upper; }

    // Corner points: lower before upper per parameter, last parameter varying fastest.
    // Degenerate intervals contribute a single value.
    std::vector<Instantiation> vertices() const;
    // Corners of the projection onto vars; every other parameter sits at its lower bound.
    std::vector<Instantiation> vertices(std::set<VariableId> const& vars) const;

    bool operator==(Region const& other) const = default;

    // "1/10<=p<=4/5, 2/5<=q<=7/10"
    std::string toString(VariablePool const& pool) const;

private:
    std::vector<Interval> intervals_;
};

// Parses the textual form; every parameter of the pool must be bounded exactly once.
Region parseRegion(std::string_view text, VariablePool const& pool);

struct SplitStrategy {
    enum class Kind { AllDims, Dim, AtPoint };

    Kind kind = Kind::AllDims;
    VariableId dimension = 0;
    Instantiation point;

    static SplitStrategy allDims() { return {}; }
    static SplitStrategy dim(VariableId var) { return {Kind::Dim, var, {}}; }
    static SplitStrategy atPoint(Instantiation anchor) { return {Kind::AtPoint, 0, std::move(anchor)}; }
};

// Children cover the region, overlapping only on shared faces. Dimensions in which the cut
// would produce an empty slab (degenerate interval, anchor on the boundary) are not cut.
std::vector<Region> split(Region const& region, SplitStrategy const& strategy);

}  // namespace paramsynth
