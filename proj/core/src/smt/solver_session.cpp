#include "paramsynth/smt/solver_session.h"

#include "paramsynth/errors.h"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace paramsynth::smt {

namespace {

constexpr char const* readyMarker = "paramsynth-ready";

struct SExpr {
    std::string atom;
    std::vector<SExpr> list;
    bool isAtom = true;
};

class SExprReader {
public:
    explicit SExprReader(std::string const& text) : text_(text) {}

    SExpr read() {
        skipSpace();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        SExpr result;
        if (text_[pos_] == '(') {
            ++pos_;
            result.isAtom = false;
            while (true) {
                skipSpace();
                if (pos_ >= text_.size()) {
                    fail("unbalanced parenthesis");
                }
                if (text_[pos_] == ')') {
                    ++pos_;
                    return result;
                }
                result.list.push_back(read());
            }
        }
        if (text_[pos_] == ')') {
            fail("unexpected ')'");
        }
        if (text_[pos_] == '|') {
            auto close = text_.find('|', pos_ + 1);
            if (close == std::string::npos) {
                fail("unterminated quoted symbol");
            }
            result.atom = text_.substr(pos_ + 1, close - pos_ - 1);
            pos_ = close + 1;
            return result;
        }
        if (text_[pos_] == '"') {
            auto close = text_.find('"', pos_ + 1);
            if (close == std::string::npos) {
                fail("unterminated string");
            }
            result.atom = text_.substr(pos_, close - pos_ + 1);
            pos_ = close + 1;
            return result;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')') {
            ++pos_;
        }
        result.atom = text_.substr(start, pos_ - start);
        return result;
    }

    bool atEnd() {
        skipSpace();
        return pos_ >= text_.size();
    }

private:
    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    [[noreturn]] void fail(std::string const& what) const {
        throw ProtocolParseError("solver answer: " + what + " in '" + text_ + "'");
    }

    std::string const& text_;
    std::size_t pos_ = 0;
};

// Evaluates rational literals and + - * / over them; nullopt for anything else.
std::optional<Rational> evaluateTerm(SExpr const& term) {
    if (term.isAtom) {
        Rational value;
        if (!term.atom.empty() && (std::isdigit(static_cast<unsigned char>(term.atom[0])) || term.atom[0] == '.') &&
            tryParseRational(term.atom, value)) {
            return value;
        }
        return std::nullopt;
    }
    if (term.list.size() < 2 || !term.list[0].isAtom) {
        return std::nullopt;
    }
    std::string const& op = term.list[0].atom;
    std::vector<Rational> args;
    for (std::size_t i = 1; i < term.list.size(); ++i) {
        auto value = evaluateTerm(term.list[i]);
        if (!value) {
            return std::nullopt;
        }
        args.push_back(*value);
    }
    Rational result = args[0];
    if (op == "-" && args.size() == 1) {
        return Rational(-result);
    }
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (op == "+") {
            result += args[i];
        } else if (op == "-") {
            result -= args[i];
        } else if (op == "*") {
            result *= args[i];
        } else if (op == "/" && args[i] != 0) {
            result /= args[i];
        } else {
            return std::nullopt;
        }
    }
    if (op != "+" && op != "-" && op != "*" && op != "/") {
        return std::nullopt;
    }
    result.canonicalize();
    return result;
}

std::string declaration(std::string const& name, char const* sort) {
    return "(declare-fun " + smtSymbol(name) + " () " + sort + ")";
}

void ignoreBrokenPipes() {
    static bool const installed = [] {
        std::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)installed;
}

}  // namespace

std::string SolverOptions::resolvedCommand() const {
    if (!command.empty()) {
        return command;
    }
    if (char const* env = std::getenv("PARAMSYNTH_SMT_CMD"); env != nullptr && *env != '\0') {
        return env;
    }
    return "z3 -in";
}

std::string toString(SatStatus status) {
    switch (status) {
        case SatStatus::Sat:
            return "sat";
        case SatStatus::Unsat:
            return "unsat";
        case SatStatus::Unknown:
            return "unknown";
    }
    return "unknown";
}

std::optional<std::vector<std::pair<std::string, Rational>>> parseValueAnswer(std::string const& text) {
    SExprReader reader(text);
    SExpr answer = reader.read();
    if (!reader.atEnd()) {
        throw ProtocolParseError("solver answer: trailing text in '" + text + "'");
    }
    if (answer.isAtom) {
        throw ProtocolParseError("solver answer: expected a value list, got '" + text + "'");
    }
    std::vector<std::pair<std::string, Rational>> values;
    bool rational = true;
    for (auto const& pair : answer.list) {
        if (pair.isAtom || pair.list.size() != 2 || !pair.list[0].isAtom) {
            throw ProtocolParseError("solver answer: malformed value pair in '" + text + "'");
        }
        auto value = evaluateTerm(pair.list[1]);
        if (!value) {
            rational = false;
            continue;
        }
        values.emplace_back(pair.list[0].atom, *value);
    }
    if (!rational) {
        return std::nullopt;
    }
    return values;
}

SolverSession::SolverSession(SolverOptions options)
    : options_(std::move(options)), command_(options_.resolvedCommand()) {
    ignoreBrokenPipes();
    start();
}

SolverSession::~SolverSession() { stop(); }

void SolverSession::start() {
    int input[2];
    int output[2];
    if (pipe(input) != 0 || pipe(output) != 0) {
        throw SolverSpawnFailure(std::string("pipe: ") + std::strerror(errno));
    }
    pid_ = fork();
    if (pid_ < 0) {
        throw SolverSpawnFailure(std::string("fork: ") + std::strerror(errno));
    }
    if (pid_ == 0) {
        dup2(input[0], STDIN_FILENO);
        dup2(output[1], STDOUT_FILENO);
        int devnull = open("/dev/null", O_WRONLY);
        if (devnull >= 0) {
            dup2(devnull, STDERR_FILENO);
        }
        close(input[0]);
        close(input[1]);
        close(output[0]);
        close(output[1]);
        execl("/bin/sh", "sh", "-c", ("exec " + command_).c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(input[0]);
    close(output[1]);
    toSolver_ = input[1];
    fromSolver_ = output[0];
    buffer_.clear();

    std::string handshake = "(set-option :print-success false)\n(set-logic QF_NRA)\n(echo \"" +
                            std::string(readyMarker) + "\")\n";
    if (write(toSolver_, handshake.data(), handshake.size()) != static_cast<ssize_t>(handshake.size())) {
        stop();
        throw SolverSpawnFailure("cannot write to solver '" + command_ + "'");
    }
    auto answer = readExpression(std::chrono::steady_clock::now() + std::chrono::seconds(10));
    if (!answer || answer->find(readyMarker) == std::string::npos) {
        stop();
        throw SolverSpawnFailure("solver '" + command_ + "' did not start" +
                                 (answer ? " (answered '" + *answer + "')" : std::string()));
    }
}

void SolverSession::stop() {
    if (toSolver_ >= 0) {
        close(toSolver_);
        toSolver_ = -1;
    }
    if (fromSolver_ >= 0) {
        close(fromSolver_);
        fromSolver_ = -1;
    }
    if (pid_ > 0) {
        kill(pid_, SIGKILL);
        waitpid(pid_, nullptr, 0);
        pid_ = -1;
    }
}

void SolverSession::restart() {
    stop();
    start();
    depth_ = 0;
    for (auto const& command : replay_) {
        std::string line = command + "\n";
        if (write(toSolver_, line.data(), line.size()) != static_cast<ssize_t>(line.size())) {
            throw SolverSpawnFailure("solver '" + command_ + "' closed its input");
        }
    }
}

void SolverSession::send(std::string const& command, bool replayable) {
    transcript_ += command;
    transcript_ += '\n';
    if (replayable && depth_ == 0) {
        replay_.push_back(command);
    }
    std::string line = command + "\n";
    std::size_t written = 0;
    while (written < line.size()) {
        ssize_t n = write(toSolver_, line.data() + written, line.size() - written);
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            throw SolverSpawnFailure("solver '" + command_ + "' closed its input");
        }
        written += static_cast<std::size_t>(n);
    }
}

// Reads one complete answer: an atom line or a balanced parenthesised expression.
std::optional<std::string> SolverSession::readExpression(std::chrono::steady_clock::time_point deadline) {
    while (true) {
        std::size_t start = buffer_.find_first_not_of(" \t\r\n");
        if (start != std::string::npos) {
            if (buffer_[start] == '(') {
                int level = 0;
                bool quoted = false;
                for (std::size_t i = start; i < buffer_.size(); ++i) {
                    char c = buffer_[i];
                    if (c == '"' || c == '|') {
                        quoted = !quoted;
                    } else if (!quoted && c == '(') {
                        ++level;
                    } else if (!quoted && c == ')' && --level == 0) {
                        std::string result = buffer_.substr(start, i + 1 - start);
                        buffer_.erase(0, i + 1);
                        return result;
                    }
                }
            } else if (auto end = buffer_.find('\n', start); end != std::string::npos) {
                std::string result = buffer_.substr(start, end - start);
                buffer_.erase(0, end + 1);
                while (!result.empty() && std::isspace(static_cast<unsigned char>(result.back()))) {
                    result.pop_back();
                }
                return result;
            }
        }
        auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) {
            return std::nullopt;
        }
        pollfd fd{fromSolver_, POLLIN, 0};
        int ready = poll(&fd, 1, static_cast<int>(remaining.count()));
        if (ready < 0 && errno == EINTR) {
            continue;
        }
        if (ready <= 0) {
            return std::nullopt;
        }
        char chunk[4096];
        ssize_t n = read(fromSolver_, chunk, sizeof(chunk));
        if (n < 0 && errno == EINTR) {
            continue;
        }
        if (n <= 0) {
            throw SolverSpawnFailure("solver '" + command_ + "' terminated");
        }
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

void SolverSession::declare(VariablePool const& pool, std::vector<std::string> const& booleans) {
    for (auto const& name : pool.names()) {
        if (declared_.insert(name).second) {
            send(declaration(name, "Real"), true);
        }
    }
    for (auto const& name : booleans) {
        if (declared_.insert(name).second) {
            send(declaration(name, "Bool"), true);
        }
    }
}

void SolverSession::assertFormula(Formula const& formula, VariablePool const& pool) {
    send("(assert " + formula.toSmtLib(pool) + ")", true);
}

void SolverSession::push() {
    send("(push 1)", false);
    ++depth_;
}

void SolverSession::pop() {
    if (depth_ == 0) {
        throw InvalidArgument("pop without matching push");
    }
    --depth_;
    send("(pop 1)", false);
}

CheckResult SolverSession::check(VariablePool const& pool, std::size_t parameterCount) {
    CheckResult result;
    send("(check-sat)", false);
    auto answer = readExpression(std::chrono::steady_clock::now() + options_.timeout);
    if (!answer) {
        // The process may be stuck in search; a fresh one replays the depth-0 state.
        std::size_t depth = depth_;
        restart();
        result.timedOut = true;
        result.reason = "timeout after " + std::to_string(options_.timeout.count()) + " ms";
        if (depth != 0) {
            result.reason += "; solver restarted at depth 0";
        }
        return result;
    }
    if (*answer == "unsat") {
        result.status = SatStatus::Unsat;
        return result;
    }
    if (*answer == "unknown") {
        send("(get-info :reason-unknown)", false);
        auto reason = readExpression(std::chrono::steady_clock::now() + std::chrono::seconds(5));
        result.reason = reason.value_or("unknown");
        return result;
    }
    if (*answer != "sat") {
        throw ProtocolParseError("unexpected check-sat answer '" + *answer + "'");
    }
    result.status = SatStatus::Sat;
    if (parameterCount == 0) {
        result.model = Instantiation(std::vector<Rational>{});
        return result;
    }
    std::string query = "(get-value (";
    for (std::size_t v = 0; v < parameterCount; ++v) {
        query += (v == 0 ? "" : " ") + smtSymbol(pool.name(static_cast<VariableId>(v)));
    }
    send(query + "))", false);
    auto values = readExpression(std::chrono::steady_clock::now() + options_.timeout);
    if (!values) {
        result.reason = "no answer to get-value";
        return result;
    }
    if (values->rfind("(error", 0) == 0) {
        throw ProtocolParseError("solver error: " + *values);
    }
    auto parsed = parseValueAnswer(*values);
    if (!parsed) {
        result.reason = "non-rational witness";
        return result;
    }
    Instantiation point(parameterCount);
    for (auto const& [name, value] : *parsed) {
        auto id = pool.find(name);
        if (!id || *id >= parameterCount) {
            throw ProtocolParseError("solver returned a value for unknown symbol '" + name + "'");
        }
        point.set(*id, value);
    }
    if (!point.complete()) {
        throw ProtocolParseError("solver model misses a parameter: " + *values);
    }
    result.model = point;
    return result;
}

CheckResult SolverSession::solve(Problem const& problem) {
    push();
    for (auto const& name : problem.variables.names()) {
        if (!declared_.count(name)) {
            send(declaration(name, "Real"), false);
        }
    }
    for (auto const& name : problem.formula.booleanVariables()) {
        if (!declared_.count(name)) {
            send(declaration(name, "Bool"), false);
        }
    }
    send("(assert " + problem.formula.toSmtLib(problem.variables) + ")", false);
    CheckResult result = check(problem.variables, problem.parameterCount);
    if (!result.timedOut) {
        pop();
    }
    return result;
}

}  // namespace paramsynth::smt
