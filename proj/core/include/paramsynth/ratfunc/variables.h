#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace paramsynth {

using VariableId = std::uint32_t;

// Interns variable names to dense ids; ids follow insertion order.
class VariablePool {
public:
    VariablePool() = default;
    explicit VariablePool(std::vector<std::string> const& names);

    VariableId intern(std::string const& name);
    std::optional<VariableId> find(std::string_view name) const;
    std::string const& name(VariableId id) const;
    std::size_t size() const { return names_.size(); }
    std::vector<std::string> const& names() const { return names_; }

    bool operator==(VariablePool const& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VariableId> ids_;
};

}  // namespace paramsynth
