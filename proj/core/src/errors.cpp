#include "paramsynth/errors.h"

namespace paramsynth {

namespace {
std::string format(std::string const& message, std::size_t line, std::size_t column) {
    if (line == 0 && column == 0) {
        return message;
    }
    if (line == 0) {
        return "column " + std::to_string(column) + ": " + message;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}
}  // namespace

ParseError::ParseError(std::string const& message, std::size_t line, std::size_t column)
    : Error(format(message, line, column)), detail_(message), line_(line), column_(column) {}

ParseError ParseError::atLine(std::size_t line, std::size_t columnOffset) const {
    return ParseError(detail_, line, column_ + columnOffset);
}

}  // namespace paramsynth
