#include "paramsynth/models/model_parser.h"

#include "paramsynth/ratfunc/expression_parser.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <fstream>
#include <sstream>

namespace paramsynth {

namespace {

struct Word {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Word> splitWords(std::string_view line, std::size_t maxWords, std::string& rest, std::size_t& restColumn) {
    std::vector<Word> words;
    std::size_t pos = 0;
    while (true) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
        }
        if (pos >= line.size()) {
            break;
        }
        if (words.size() == maxWords) {
            rest = std::string(line.substr(pos));
            restColumn = pos + 1;
            return words;
        }
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
        }
        words.push_back({std::string(line.substr(start, pos - start)), start + 1});
    }
    rest.clear();
    restColumn = line.size() + 1;
    return words;
}

std::uint64_t parseIndex(Word const& word, std::size_t line, char const* what) {
    if (word.text.empty() || word.text.find_first_not_of("0123456789") != std::string::npos || word.text.size() > 9) {
        throw ParseError(std::string("expected ") + what + ", got '" + word.text + "'", line, word.column);
    }
    return std::stoull(word.text);
}

bool validIdentifier(std::string const& name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
        return false;
    }
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

struct PendingAction {
    std::string label;
    std::map<StateId, RationalFunction> successors;
    std::optional<RationalFunction> reward;
};

}  // namespace

ParametricModel parseModel(std::string_view text) {
    std::optional<ModelKind> kind;
    VariablePool parameters;
    bool parametersSeen = false;
    std::optional<std::size_t> stateCount;
    StateId initial = 0;
    std::map<std::string, std::vector<bool>> labels;
    std::vector<std::map<std::string, PendingAction>> actions;  // actions ordered by label
    bool anyReward = false;

    std::istringstream input{std::string(text)};
    std::string rawLine;
    std::size_t lineNumber = 0;
    while (std::getline(input, rawLine)) {
        ++lineNumber;
        std::string_view line = rawLine;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        std::string rest;
        std::size_t restColumn = 0;
        auto head = splitWords(line, 1, rest, restColumn);
        if (head.empty()) {
            continue;
        }
        std::string const& keyword = head[0].text;

        if (!kind) {
            if (keyword == "pmc" || keyword == "pmdp") {
                kind = keyword == "pmc" ? ModelKind::Pmc : ModelKind::Pmdp;
                if (!rest.empty()) {
                    throw ParseError("unexpected text after model kind", lineNumber, restColumn);
                }
                continue;
            }
            throw ParseError("first line must be 'pmc' or 'pmdp'", lineNumber, head[0].column);
        }
        bool mdp = *kind == ModelKind::Pmdp;

        if (keyword == "parameters") {
            if (parametersSeen || stateCount) {
                throw ParseError("parameters must be declared once, before 'states'", lineNumber, head[0].column);
            }
            parametersSeen = true;
            auto words = splitWords(line, 1000, rest, restColumn);
            for (std::size_t i = 1; i < words.size(); ++i) {
                if (!validIdentifier(words[i].text)) {
                    throw ParseError("invalid parameter name '" + words[i].text + "'", lineNumber, words[i].column);
                }
                if (parameters.find(words[i].text)) {
                    throw ParseError("duplicate parameter '" + words[i].text + "'", lineNumber, words[i].column);
                }
                parameters.intern(words[i].text);
            }
        } else if (keyword == "states") {
            if (stateCount) {
                throw ParseError("duplicate 'states' line", lineNumber, head[0].column);
            }
            auto words = splitWords(line, 4, rest, restColumn);
            if (words.size() != 4 || !rest.empty() || words[2].text != "init") {
                throw ParseError("expected 'states <N> init <I>'", lineNumber, head[0].column);
            }
            std::size_t n = parseIndex(words[1], lineNumber, "state count");
            if (n == 0) {
                throw ParseError("model needs at least one state", lineNumber, words[1].column);
            }
            auto init = parseIndex(words[3], lineNumber, "initial state");
            if (init >= n) {
                throw ParseError("initial state out of range", lineNumber, words[3].column);
            }
            stateCount = n;
            initial = static_cast<StateId>(init);
            actions.resize(n);
        } else if (keyword == "label" || keyword == "transition" || keyword == "reward") {
            if (!stateCount) {
                throw ParseError("'" + keyword + "' before 'states'", lineNumber, head[0].column);
            }
            if (keyword == "label") {
                auto words = splitWords(line, 100000, rest, restColumn);
                if (words.size() < 2 || !validIdentifier(words[1].text)) {
                    throw ParseError("expected 'label <name> <states>...'", lineNumber, head[0].column);
                }
                auto& set = labels[words[1].text];
                set.resize(*stateCount, false);
                for (std::size_t i = 2; i < words.size(); ++i) {
                    auto s = parseIndex(words[i], lineNumber, "state");
                    if (s >= *stateCount) {
                        throw ParseError("state out of range", lineNumber, words[i].column);
                    }
                    set[s] = true;
                }
                continue;
            }
            bool transition = keyword == "transition";
            std::size_t fields = 1 + (mdp ? 1 : 0) + (transition ? 1 : 0) + 1;
            auto words = splitWords(line, fields, rest, restColumn);
            if (words.size() != fields || rest.empty()) {
                std::string shape = transition ? (mdp ? "transition <from> <action> <to> <expr>" : "transition <from> <to> <expr>")
                                               : (mdp ? "reward <state> <action> <expr>" : "reward <state> <expr>");
                throw ParseError("expected '" + shape + "'", lineNumber, head[0].column);
            }
            auto from = parseIndex(words[1], lineNumber, "state");
            if (from >= *stateCount) {
                throw ParseError("state out of range", lineNumber, words[1].column);
            }
            std::string action = mdp ? words[2].text : std::string();
            RationalFunction value;
            try {
                value = parseExpression(rest, parameters);
            } catch (ParseError const& error) {
                throw error.atLine(lineNumber, restColumn - 1);
            }
            auto& list = actions[from];
            auto found = list.find(action);
            if (found == list.end()) {
                if (!transition) {
                    throw ParseError("reward for an action without transitions (declare transitions first)", lineNumber,
                                     words[1].column);
                }
                found = list.emplace(action, PendingAction{action, {}, std::nullopt}).first;
            }
            PendingAction* it = &found->second;
            if (transition) {
                Word const& toWord = words[mdp ? 3 : 2];
                auto to = parseIndex(toWord, lineNumber, "state");
                if (to >= *stateCount) {
                    throw ParseError("state out of range", lineNumber, toWord.column);
                }
                if (it->successors.count(static_cast<StateId>(to))) {
                    throw ParseError("duplicate transition", lineNumber, toWord.column);
                }
                if (!value.isZero()) {
                    it->successors.emplace(static_cast<StateId>(to), std::move(value));
                }
            } else {
                if (it->reward) {
                    throw ParseError("duplicate reward", lineNumber, words[1].column);
                }
                it->reward = std::move(value);
                anyReward = true;
            }
        } else {
            throw ParseError("unknown keyword '" + keyword + "'", lineNumber, head[0].column);
        }
    }

    if (!kind) {
        throw ParseError("empty model", lineNumber, 1);
    }
    if (!stateCount) {
        throw ParseError("missing 'states' line", lineNumber, 1);
    }

    auto base = SparseModel<RationalFunction>::create(*kind, *stateCount, initial);
    for (StateId s = 0; s < *stateCount; ++s) {
        if (actions[s].empty()) {
            throw ParseError("state " + std::to_string(s) + " has no outgoing transition", 0, 0);
        }
        for (auto& [label, action] : actions[s]) {
            if (action.successors.empty()) {
                throw ParseError("state " + std::to_string(s) + " action '" + action.label + "' has only zero transitions", 0, 0);
            }
            std::vector<Entry<RationalFunction>> entries;
            for (auto& [to, f] : action.successors) {
                entries.push_back({to, std::move(f)});
            }
            base.addRow(s, action.label, std::move(entries), action.reward.value_or(RationalFunction()));
        }
    }
    base.finish(anyReward);
    for (auto& [name, set] : labels) {
        base.setLabel(name, std::move(set));
    }
    return ParametricModel(std::move(base), std::move(parameters));
}

ParametricModel loadModel(std::string const& path) {
    std::ifstream file(path);
    if (!file) {
        throw InvalidArgument("cannot open model file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    return parseModel(buffer.str());
}

std::string printModel(ParametricModel const& model) {
    std::ostringstream out;
    bool mdp = model.kind() == ModelKind::Pmdp;
    auto const& pool = model.parameters();
    out << (mdp ? "pmdp" : "pmc") << "\n";
    out << "parameters";
    for (auto const& name : pool.names()) {
        out << " " << name;
    }
    out << "\nstates " << model.stateCount() << " init " << model.initialState() << "\n";
    for (auto const& [name, set] : model.labels()) {
        out << "label " << name;
        for (std::size_t s = 0; s < set.size(); ++s) {
            if (set[s]) {
                out << " " << s;
            }
        }
        out << "\n";
    }
    for (std::size_t r = 0; r < model.rowCount(); ++r) {
        for (auto const& entry : model.row(r)) {
            out << "transition " << model.rowState(r) << " ";
            if (mdp) {
                out << model.actionLabel(r) << " ";
            }
            out << entry.target << " " << entry.value.toString(pool) << "\n";
        }
    }
    if (model.hasRewards()) {
        for (std::size_t r = 0; r < model.rowCount(); ++r) {
            if (model.reward(r).isZero()) {
                continue;
            }
            out << "reward " << model.rowState(r) << " ";
            if (mdp) {
                out << model.actionLabel(r) << " ";
            }
            out << model.reward(r).toString(pool) << "\n";
        }
    }
    return out.str();
}

}  // namespace paramsynth
