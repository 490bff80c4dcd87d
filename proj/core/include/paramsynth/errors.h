#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paramsynth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input text that does not follow a grammar; line and column are 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::string const& message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    std::string const& detail() const { return detail_; }

    ParseError atLine(std::size_t line, std::size_t columnOffset = 0) const;

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

#define PARAMSYNTH_ERROR(Name)                 \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

PARAMSYNTH_ERROR(InvalidArgument);
PARAMSYNTH_ERROR(DivisionByZeroFunction);
PARAMSYNTH_ERROR(MissingParameter);
PARAMSYNTH_ERROR(AbsorbingSelfLoop);
PARAMSYNTH_ERROR(RewardDiverges);
PARAMSYNTH_ERROR(NotLocallyMonotone);
PARAMSYNTH_ERROR(RegionNotGraphPreserving);
PARAMSYNTH_ERROR(UnsupportedSpecification);
PARAMSYNTH_ERROR(StrategyCapExceeded);
PARAMSYNTH_ERROR(SolverSpawnFailure);
PARAMSYNTH_ERROR(ProtocolParseError);
PARAMSYNTH_ERROR(NoMixedSamples);
PARAMSYNTH_ERROR(DimensionUnsupported);
PARAMSYNTH_ERROR(EngineUnavailable);

#undef PARAMSYNTH_ERROR

}  // namespace paramsynth
