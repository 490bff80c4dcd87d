#pragma once

#include "paramsynth/models/model.h"
#include "paramsynth/models/specification.h"
#include "paramsynth/regions/region.h"
#include "paramsynth/regions/verdict.h"
#include "paramsynth/smt/problem.h"

namespace paramsynth::smt {

enum class EncodingForm { EquationSystem, SolutionFunctions };

// Box constraints lower <= p <= upper over the parameter ids of the region.
Formula regionFormula(Region const& region);

// Comparison of the specification and of its negation, as used on the measured value.
Comparison comparisonOf(Relation relation);

// Region box and the negated graph-preservation predicate; satisfiable iff some point of the
// region is not graph-preserving (or not well-defined).
Problem encodeGraphPreservation(ParametricModel const& model, Region const& region);

// The two refutation queries for a region. The formulas share the problem's variable pool;
// the region box is not included. Unsatisfiability of `violating` together with the box
// proves the region accepting; unsatisfiability of `satisfying` proves it rejecting.
struct RegionQueries {
    VariablePool variables;
    std::size_t parameterCount = 0;
    Formula base;        // constraints shared by both queries (may be true)
    Formula violating;   // some point violates the specification
    Formula satisfying;  // some point satisfies the specification

    Problem problem(Formula const& query, Region const& region) const;
};

// pMC queries from the Bellman equation system (variables x_s) or from the solution function.
RegionQueries encodePmc(ParametricModel const& model, Specification const& spec, EncodingForm form);

// pMDP queries. Under the demonic relation acceptance is refuted by some strategy violating the
// specification (disjunction over actions) and rejection by all strategies satisfying it (LP
// bounds over all actions); the angelic relation swaps the two. Solution-function form enumerates
// memoryless strategies up to strategyCap.
RegionQueries encodePmdp(ParametricModel const& model, Specification const& spec, Semantics semantics,
                         EncodingForm form, std::size_t strategyCap = 64);

// Solution-function formula "f violates the specification" over parameters only.
Formula solutionFunctionViolation(RationalFunction const& f, Specification const& spec);

}  // namespace paramsynth::smt
