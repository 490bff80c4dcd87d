#include "paramsynth/ratfunc/instantiation.h"

#include "paramsynth/errors.h"

#include <cctype>

namespace paramsynth {

Instantiation::Instantiation(std::vector<Rational> values)
    : values_(std::move(values)), assigned_(values_.size(), true) {}

void Instantiation::set(VariableId var, Rational value) {
    if (var >= values_.size()) {
        values_.resize(var + 1);
        assigned_.resize(var + 1, false);
    }
    values_[var] = std::move(value);
    assigned_[var] = true;
}

Rational const& Instantiation::at(VariableId var) const {
    if (!has(var)) {
        throw MissingParameter("no value for parameter id " + std::to_string(var));
    }
    return values_[var];
}

bool Instantiation::complete() const {
    for (bool a : assigned_) {
        if (!a) {
            return false;
        }
    }
    return true;
}

bool Instantiation::operator==(Instantiation const& other) const {
    if (assigned_ != other.assigned_) {
        return false;
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (assigned_[i] && values_[i] != other.values_[i]) {
            return false;
        }
    }
    return true;
}

bool Instantiation::operator<(Instantiation const& other) const {
    if (values_.size() != other.values_.size()) {
        return values_.size() < other.values_.size();
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (assigned_[i] != other.assigned_[i]) {
            return !assigned_[i];
        }
        if (assigned_[i] && values_[i] != other.values_[i]) {
            return values_[i] < other.values_[i];
        }
    }
    return false;
}

std::string Instantiation::toString(VariablePool const& pool) const {
    std::string result;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!assigned_[i]) {
            continue;
        }
        if (!result.empty()) {
            result += ", ";
        }
        result += pool.name(static_cast<VariableId>(i)) + "=" + paramsynth::toString(values_[i]);
    }
    return result;
}

Instantiation parseInstantiation(std::string_view text, VariablePool const& pool) {
    Instantiation result(pool.size());
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view item = text.substr(pos, end - pos);
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected name=value", 0, pos + 1);
        }
        std::string name(item.substr(0, eq));
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) {
            name.erase(name.begin());
        }
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
            name.pop_back();
        }
        auto id = pool.find(name);
        if (!id) {
            throw ParseError("unknown parameter '" + name + "'", 0, pos + 1);
        }
        Rational value;
        if (!tryParseRational(item.substr(eq + 1), value)) {
            throw ParseError("malformed value for '" + name + "'", 0, pos + eq + 2);
        }
        result.set(*id, value);
        pos = end + 1;
    }
    for (VariableId v = 0; v < pool.size(); ++v) {
        if (!result.has(v)) {
            throw MissingParameter("no value for parameter '" + pool.name(v) + "'");
        }
    }
    return result;
}

}  // namespace paramsynth
