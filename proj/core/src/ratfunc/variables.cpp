#include "paramsynth/ratfunc/variables.h"

#include "paramsynth/errors.h"

namespace paramsynth {

VariablePool::VariablePool(std::vector<std::string> const& names) {
    for (auto const& name : names) {
        intern(name);
    }
}

VariableId VariablePool::intern(std::string const& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) {
        return it->second;
    }
    auto id = static_cast<VariableId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
}

std::optional<VariableId> VariablePool::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string const& VariablePool::name(VariableId id) const {
    if (id >= names_.size()) {
        throw InvalidArgument("unknown variable id " + std::to_string(id));
    }
    return names_[id];
}

}  // namespace paramsynth
