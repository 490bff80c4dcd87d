#pragma once

#include "paramsynth/ratfunc/rational.h"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace paramsynth {

enum class SpecKind { ReachProb, BoundedReachProb, ExpReward };
enum class Relation { Less, LessEqual, Greater, GreaterEqual };
enum class Direction { Minimize, Maximize };

struct Specification {
    SpecKind kind = SpecKind::ReachProb;
    Relation relation = Relation::LessEqual;
    Rational threshold;
    std::string target;
    std::uint64_t stepBound = 0;  // BoundedReachProb only

    bool isUpperBound() const { return relation == Relation::Less || relation == Relation::LessEqual; }
    bool isStrict() const { return relation == Relation::Less || relation == Relation::Greater; }

    // The complementary property: same quantity, negated comparison.
    Specification negated() const;

    bool operator==(Specification const& other) const = default;
    std::string toString() const;
};

// "P <= 2/5 reach target", "P > 0.4 within 7 reach target", "E <= 5 reach target".
Specification parseSpecification(std::string_view text);

std::string toString(Relation relation);
Relation negate(Relation relation);
// The relation with its sides swapped: a < b iff b > a.
Relation mirror(Relation relation);
bool compare(Rational const& lhs, Relation relation, Rational const& rhs);

// Rational extended with +infinity, used for diverging expected rewards.
class ExtendedRational {
public:
    ExtendedRational() = default;
    ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT
    static ExtendedRational infinity() {
        ExtendedRational result;
        result.infinite_ = true;
        return result;
    }

    bool isInfinite() const { return infinite_; }
    Rational const& value() const { return value_; }  // 0 when infinite

    bool operator==(ExtendedRational const& other) const {
        return infinite_ == other.infinite_ && (infinite_ || value_ == other.value_);
    }
    bool operator<(ExtendedRational const& other) const {
        if (infinite_) {
            return false;
        }
        return other.infinite_ || value_ < other.value_;
    }
    bool operator>(ExtendedRational const& other) const { return other < *this; }
    bool operator<=(ExtendedRational const& other) const { return !(other < *this); }
    bool operator>=(ExtendedRational const& other) const { return !(*this < other); }

    std::string toString() const { return infinite_ ? "inf" : value_.get_str(); }

private:
    bool infinite_ = false;
    Rational value_;
};

bool compare(ExtendedRational const& lhs, Relation relation, Rational const& rhs);

}  // namespace paramsynth
