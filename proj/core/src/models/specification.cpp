#include "paramsynth/models/specification.h"

#include "paramsynth/errors.h"

#include <cctype>

namespace paramsynth {

std::string toString(Relation relation) {
    switch (relation) {
        case Relation::Less: return "<";
        case Relation::LessEqual: return "<=";
        case Relation::Greater: return ">";
        case Relation::GreaterEqual: return ">=";
    }
    return "?";
}

Relation negate(Relation relation) {
    switch (relation) {
        case Relation::Less: return Relation::GreaterEqual;
        case Relation::LessEqual: return Relation::Greater;
        case Relation::Greater: return Relation::LessEqual;
        case Relation::GreaterEqual: return Relation::Less;
    }
    return relation;
}

Relation mirror(Relation relation) {
    switch (relation) {
        case Relation::Less: return Relation::Greater;
        case Relation::LessEqual: return Relation::GreaterEqual;
        case Relation::Greater: return Relation::Less;
        case Relation::GreaterEqual: return Relation::LessEqual;
    }
    return relation;
}

bool compare(Rational const& lhs, Relation relation, Rational const& rhs) {
    switch (relation) {
        case Relation::Less: return lhs < rhs;
        case Relation::LessEqual: return lhs <= rhs;
        case Relation::Greater: return lhs > rhs;
        case Relation::GreaterEqual: return lhs >= rhs;
    }
    return false;
}

bool compare(ExtendedRational const& lhs, Relation relation, Rational const& rhs) {
    if (lhs.isInfinite()) {
        return relation == Relation::Greater || relation == Relation::GreaterEqual;
    }
    return compare(lhs.value(), relation, rhs);
}

Specification Specification::negated() const {
    Specification result = *this;
    result.relation = negate(relation);
    return result;
}

std::string Specification::toString() const {
    std::string result = kind == SpecKind::ExpReward ? "E " : "P ";
    result += paramsynth::toString(relation) + " " + threshold.get_str();
    if (kind == SpecKind::BoundedReachProb) {
        result += " within " + std::to_string(stepBound);
    }
    return result + " reach " + target;
}

namespace {

class SpecScanner {
public:
    explicit SpecScanner(std::string_view text) : text_(text) {}

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    bool atEnd() {
        skipSpace();
        return pos_ >= text_.size();
    }
    std::size_t column() const { return pos_ + 1; }

    std::string word() {
        skipSpace();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '<' && text_[pos_] != '>') {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string relation() {
        skipSpace();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '<' || text_[pos_] == '>')) {
            ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '=') {
                ++pos_;
            }
        }
        return std::string(text_.substr(start, pos_ - start));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Specification parseSpecification(std::string_view text) {
    SpecScanner scanner(text);
    Specification spec;

    scanner.skipSpace();
    std::size_t column = scanner.column();
    std::string head = scanner.word();
    if (head == "P") {
        spec.kind = SpecKind::ReachProb;
    } else if (head == "E") {
        spec.kind = SpecKind::ExpReward;
    } else {
        throw ParseError("specification must start with 'P' or 'E'", 1, column);
    }

    scanner.skipSpace();
    column = scanner.column();
    std::string op = scanner.relation();
    if (op == "<") {
        spec.relation = Relation::Less;
    } else if (op == "<=") {
        spec.relation = Relation::LessEqual;
    } else if (op == ">") {
        spec.relation = Relation::Greater;
    } else if (op == ">=") {
        spec.relation = Relation::GreaterEqual;
    } else {
        throw ParseError("expected one of <, <=, >, >=", 1, column);
    }

    scanner.skipSpace();
    column = scanner.column();
    std::string threshold = scanner.word();
    if (!tryParseRational(threshold, spec.threshold)) {
        throw ParseError("malformed threshold '" + threshold + "'", 1, column);
    }

    scanner.skipSpace();
    column = scanner.column();
    std::string keyword = scanner.word();
    if (keyword == "within") {
        if (spec.kind != SpecKind::ReachProb) {
            throw ParseError("step bounds apply to probabilities only", 1, column);
        }
        scanner.skipSpace();
        column = scanner.column();
        std::string bound = scanner.word();
        if (bound.empty() || bound.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError("step bound must be a non-negative integer", 1, column);
        }
        spec.kind = SpecKind::BoundedReachProb;
        spec.stepBound = std::stoull(bound);
        scanner.skipSpace();
        column = scanner.column();
        keyword = scanner.word();
    }
    if (keyword != "reach") {
        throw ParseError("expected 'reach'", 1, column);
    }

    scanner.skipSpace();
    column = scanner.column();
    spec.target = scanner.word();
    if (spec.target.empty()) {
        throw ParseError("expected a target label", 1, column);
    }
    if (!scanner.atEnd()) {
        throw ParseError("trailing input", 1, scanner.column());
    }
    if (spec.kind != SpecKind::ExpReward && (spec.threshold < 0 || spec.threshold > 1)) {
        throw ParseError("probability threshold must lie in [0,1]", 1, 1);
    }
    return spec;
}

}  // namespace paramsynth
