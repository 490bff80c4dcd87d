#pragma once

#include "paramsynth/smt/problem.h"

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <sys/types.h>
#include <vector>

namespace paramsynth::smt {

struct SolverOptions {
    // Shell command of an SMT-LIB 2 solver reading from stdin. Empty: $PARAMSYNTH_SMT_CMD, else "z3 -in".
    std::string command;
    std::chrono::milliseconds timeout{10000};

    std::string resolvedCommand() const;
};

enum class SatStatus { Sat, Unsat, Unknown };

std::string toString(SatStatus status);

struct CheckResult {
    SatStatus status = SatStatus::Unknown;
    bool timedOut = false;
    // Parameter values of a sat answer; empty when the solver chose a non-rational witness.
    std::optional<Instantiation> model;
    std::string reason;
};

// An incremental solver process. Declarations and assertions made at depth 0 are replayed when the
// process has to be restarted after a timeout.
class SolverSession {
public:
    explicit SolverSession(SolverOptions options = {});
    ~SolverSession();
    SolverSession(SolverSession const&) = delete;
    SolverSession& operator=(SolverSession const&) = delete;

    std::string const& command() const { return command_; }
    std::size_t depth() const { return depth_; }

    // Declares the real variables of the pool (skipping ones already declared) and Boolean selectors.
    void declare(VariablePool const& pool, std::vector<std::string> const& booleans = {});
    // The formula's variable ids refer to pool, whose names must have been declared.
    void assertFormula(Formula const& formula, VariablePool const& pool);
    void push();
    void pop();

    // check-sat, then on sat get-value for the first parameterCount variables of pool.
    CheckResult check(VariablePool const& pool, std::size_t parameterCount);

    // Solves a standalone problem inside its own backtrack point.
    CheckResult solve(Problem const& problem);

    // Every command sent so far, for debugging and golden tests.
    std::string const& transcript() const { return transcript_; }

private:
    void start();
    void stop();
    void send(std::string const& command, bool replayable);
    std::optional<std::string> readExpression(std::chrono::steady_clock::time_point deadline);
    void restart();

    SolverOptions options_;
    std::string command_;
    pid_t pid_ = -1;
    int toSolver_ = -1;
    int fromSolver_ = -1;
    std::string buffer_;
    std::size_t depth_ = 0;
    std::set<std::string> declared_;
    std::vector<std::string> replay_;
    std::string transcript_;
};

// Parses a get-value answer "((p (/ 1.0 2.0)) (q 0.3))". Returns nullopt when some value is not a
// rational literal (e.g. a root object). Throws ProtocolParseError on malformed text.
std::optional<std::vector<std::pair<std::string, Rational>>> parseValueAnswer(std::string const& text);

}  // namespace paramsynth::smt
