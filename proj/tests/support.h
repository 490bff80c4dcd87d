#pragma once

#include "paramsynth/models/model_parser.h"
#include "paramsynth/ratfunc/expression_parser.h"
#include "paramsynth/smt/solver_session.h"

#include <random>
#include <string>

namespace paramsynth::testing {

inline std::string modelPath(std::string const& name) {
    return std::string(PARAMSYNTH_MODEL_DIR) + "/" + name;
}

inline ParametricModel corpusModel(std::string const& name) {
    return loadModel(modelPath(name));
}

inline RationalFunction rf(std::string const& text, VariablePool& pool) {
    return parseExpression(text, pool, true);
}

inline Rational R(std::string const& text) {
    return parseRational(text);
}

// Uniform rational in (lo, hi) with a denominator drawn from [2, maxDen].
inline Rational randomRational(std::mt19937_64& rng, Rational const& lo, Rational const& hi, long maxDen = 97) {
    std::uniform_int_distribution<long> denDist(2, maxDen);
    long den = denDist(rng);
    std::uniform_int_distribution<long> numDist(1, den - 1);
    Rational t(numDist(rng), den);
    t.canonicalize();
    return Rational(lo + (hi - lo) * t);
}

inline Instantiation randomPoint(std::mt19937_64& rng, std::size_t params, Rational const& lo = Rational(0),
                                 Rational const& hi = Rational(1)) {
    Instantiation point(params);
    for (VariableId v = 0; v < params; ++v) {
        point.set(v, randomRational(rng, lo, hi));
    }
    return point;
}

inline Instantiation point(std::vector<std::string> const& values) {
    std::vector<Rational> result;
    for (auto const& v : values) {
        result.push_back(parseRational(v));
    }
    return Instantiation(result);
}

inline bool solverAvailable() {
    static bool const available = [] {
        try {
            smt::SolverSession session;
            return true;
        } catch (SolverSpawnFailure const&) {
            return false;
        }
    }();
    return available;
}

#define REQUIRE_SOLVER()                                 \
    if (!::paramsynth::testing::solverAvailable()) {     \
        GTEST_SKIP() << "no SMT solver on this machine"; \
    }

}  // namespace paramsynth::testing
