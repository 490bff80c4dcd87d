#include "paramsynth/regions/region.h"

#include "paramsynth/errors.h"

#include <cctype>
#include <map>
#include <optional>

namespace paramsynth {

Region::Region(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (intervals_[i].lower > intervals_[i].upper) {
            throw InvalidArgument("empty interval for parameter " + std::to_string(i));
        }
    }
}

Region Region::cube(std::size_t dimension, Rational const& lower, Rational const& upper) {
    return Region(std::vector<Interval>(dimension, Interval{lower, upper}));
}

Region Region::unitCube(std::size_t dimension, Rational const& epsilon) {
    return cube(dimension, epsilon, Rational(1 - epsilon));
}

Rational Region::size() const {
    Rational result(1);
    for (auto const& interval : intervals_) {
        result *= interval.width();
    }
    return result;
}

Instantiation Region::center() const {
    Instantiation result(dimension());
    for (VariableId v = 0; v < dimension(); ++v) {
        result.set(v, Rational((intervals_[v].lower + intervals_[v].upper) / 2));
    }
    return result;
}

bool Region::contains(Instantiation const& point) const {
    for (VariableId v = 0; v < dimension(); ++v) {
        if (!point.has(v) || !intervals_[v].contains(point.at(v))) {
            return false;
        }
    }
    return true;
}

bool Region::contains(Region const& other) const {
    if (other.dimension() != dimension()) {
        return false;
    }
    for (VariableId v = 0; v < dimension(); ++v) {
        if (other.intervals_[v].lower < intervals_[v].lower || other.intervals_[v].upper > intervals_[v].upper) {
            return false;
        }
    }
    return true;
}

std::vector<Instantiation> Region::vertices() const {
    std::set<VariableId> all;
    for (VariableId v = 0; v < dimension(); ++v) {
        all.insert(v);
    }
    return vertices(all);
}

std::vector<Instantiation> Region::vertices(std::set<VariableId> const& vars) const {
    Instantiation base(dimension());
    for (VariableId v = 0; v < dimension(); ++v) {
        base.set(v, intervals_[v].lower);
    }
    std::vector<Instantiation> result{base};
    for (VariableId v : vars) {
        if (isDegenerate(v)) {
            continue;
        }
        std::vector<Instantiation> next;
        next.reserve(result.size() * 2);
        for (auto const& partial : result) {
            next.push_back(partial);
            Instantiation upper = partial;
            upper.set(v, intervals_[v].upper);
            next.push_back(std::move(upper));
        }
        result = std::move(next);
    }
    return result;
}

std::string Region::toString(VariablePool const& pool) const {
    std::string result;
    for (VariableId v = 0; v < dimension(); ++v) {
        if (v > 0) {
            result += ", ";
        }
        result += paramsynth::toString(intervals_[v].lower) + "<=" + pool.name(v) + "<=" +
                  paramsynth::toString(intervals_[v].upper);
    }
    return result;
}

namespace {

std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    return std::string(text.substr(begin, end - begin));
}

}  // namespace

Region parseRegion(std::string_view text, VariablePool const& pool) {
    std::map<VariableId, Interval> bounds;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        std::size_t comma = text.find(',', offset);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        std::string_view item = text.substr(offset, comma - offset);
        std::size_t column = offset + 1;
        std::size_t first = item.find("<=");
        std::size_t second = first == std::string_view::npos ? first : item.find("<=", first + 2);
        if (second == std::string_view::npos) {
            throw ParseError("expected 'lower<=name<=upper'", 0, column);
        }
        Rational lower;
        Rational upper;
        std::string name = trim(item.substr(first + 2, second - first - 2));
        if (!tryParseRational(trim(item.substr(0, first)), lower) ||
            !tryParseRational(trim(item.substr(second + 2)), upper)) {
            throw ParseError("malformed bound", 0, column);
        }
        auto var = pool.find(name);
        if (!var) {
            throw ParseError("unknown parameter '" + name + "'", 0, column + first + 2);
        }
        if (lower > upper) {
            throw ParseError("empty interval for '" + name + "'", 0, column);
        }
        if (!bounds.emplace(*var, Interval{lower, upper}).second) {
            throw ParseError("parameter '" + name + "' bounded twice", 0, column);
        }
        offset = comma + 1;
    }
    std::vector<Interval> intervals;
    for (VariableId v = 0; v < pool.size(); ++v) {
        auto it = bounds.find(v);
        if (it == bounds.end()) {
            throw ParseError("missing bounds for parameter '" + pool.name(v) + "'", 0, 0);
        }
        intervals.push_back(it->second);
    }
    return Region(std::move(intervals));
}

std::vector<Region> split(Region const& region, SplitStrategy const& strategy) {
    // Per dimension the list of sub-intervals; the product of these lists is the result.
    std::vector<std::vector<Interval>> pieces;
    for (VariableId v = 0; v < region.dimension(); ++v) {
        Interval const& iv = region.interval(v);
        std::optional<Rational> cut;
        switch (strategy.kind) {
            case SplitStrategy::Kind::AllDims:
                cut = Rational((iv.lower + iv.upper) / 2);
                break;
            case SplitStrategy::Kind::Dim:
                if (v == strategy.dimension) {
                    cut = Rational((iv.lower + iv.upper) / 2);
                }
                break;
            case SplitStrategy::Kind::AtPoint:
                if (!strategy.point.has(v) || !iv.contains(strategy.point.at(v))) {
                    throw InvalidArgument("split point outside the region");
                }
                cut = strategy.point.at(v);
                break;
        }
        if (cut && iv.lower < *cut && *cut < iv.upper) {
            pieces.push_back({Interval{iv.lower, *cut}, Interval{*cut, iv.upper}});
        } else {
            pieces.push_back({iv});
        }
    }
    if (strategy.kind == SplitStrategy::Kind::Dim && strategy.dimension >= region.dimension()) {
        throw InvalidArgument("split dimension out of range");
    }
    std::vector<std::vector<Interval>> boxes{{}};
    for (auto const& options : pieces) {
        std::vector<std::vector<Interval>> next;
        for (auto const& prefix : boxes) {
            for (auto const& option : options) {
                auto extended = prefix;
                extended.push_back(option);
                next.push_back(std::move(extended));
            }
        }
        boxes = std::move(next);
    }
    std::vector<Region> result;
    result.reserve(boxes.size());
    for (auto& box : boxes) {
        result.emplace_back(std::move(box));
    }
    return result;
}

}  // namespace paramsynth
