#pragma once

#include "paramsynth/models/check_concrete.h"
#include "paramsynth/regions/region.h"
#include "paramsynth/regions/verdict.h"
#include "paramsynth/smt/solver_session.h"

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace paramsynth {

struct Sample {
    Instantiation point;
    bool satisfied = false;
    ExtendedRational value;
};

enum class Hypothesis { Accept, Reject };
enum class PartitionEngine { Lifting, SmtEquationSystem, SmtSolutionFunction };
enum class Splitter { Quads, GrowingRectangles };

std::string toString(PartitionEngine engine);
std::string toString(Splitter splitter);
PartitionEngine parsePartitionEngine(std::string_view text);  // lifting, smt-es, smt-sf
Splitter parseSplitter(std::string_view text);                // quads, rectangles

struct Candidate {
    Region region;
    Hypothesis hypothesis = Hypothesis::Accept;
    std::size_t id = 0;
};

struct PartitionConfig {
    Rational coverage{19, 20};
    PartitionEngine engine = PartitionEngine::Lifting;
    Splitter splitter = Splitter::Quads;
    std::size_t grid = 4;
    Semantics semantics = Semantics::Demonic;
    std::optional<std::chrono::milliseconds> budget;
    std::size_t iterationCap = 100000;
    // Lifting only: ask the solver about undecided boxes at most this fraction of the space.
    bool smtFallback = true;
    Rational fallbackFraction{1, 1024};
    smt::SolverOptions solver;
};

struct PartitionStatistics {
    std::size_t engineCalls = 0;
    std::size_t solverCalls = 0;
    std::size_t counterexamples = 0;
    std::size_t splits = 0;
};

struct PartitionState {
    Region space;
    std::vector<Region> accepted;
    std::vector<Region> rejected;
    std::vector<Candidate> queue;
    std::vector<Sample> samples;
    Rational coverage;
    std::size_t iterations = 0;
    bool budgetExhausted = false;
    std::vector<Rational> coverageHistory;  // after every iteration
    PartitionStatistics statistics;
    std::string note;
};

// The measured value at a point and whether it satisfies the specification under the semantics.
Sample evaluateSample(ParametricModel const& model, Specification const& spec, Instantiation const& point,
                      Semantics semantics = Semantics::Demonic);

// k^n cell centres of the space, each checked exactly.
std::vector<Sample> sampleGrid(ParametricModel const& model, Specification const& spec, Region const& space,
                               std::size_t k, Semantics semantics = Semantics::Demonic);

// Midpoints between every sample and its nearest sample of the opposite verdict, distances
// measured on the space normalised to the unit cube. Deduplicated, in order of first appearance.
std::vector<Instantiation> interpolateSamples(std::vector<Sample> const& samples, Region const& space);

// Size of a region relative to the space, ignoring dimensions in which the space is degenerate.
Rational relativeSize(Region const& region, Region const& space);

// Splits a region into candidates whose contained samples agree. Empty candidates take the
// verdict of the nearest sample or decided box.
std::vector<Candidate> generateCandidates(Region const& region, std::vector<Sample> const& samples,
                                          Splitter splitter, Region const& space,
                                          std::vector<Region> const& accepted = {},
                                          std::vector<Region> const& rejected = {});

// Verifies a region; the witness it reports should refute the given claim.
using RegionEngine = std::function<RegionVerdict(Region const&, Refute)>;

// The sampling-guided refinement loop. engineOverride replaces the configured engine (tests).
PartitionState refine(ParametricModel const& model, Specification const& spec, Region const& space,
                      PartitionConfig const& config, RegionEngine engineOverride = {});

// One row per box "pmin,pmax,qmin,qmax,status" with the parameter names as column prefixes.
std::string exportCsv(PartitionState const& state, VariablePool const& parameters);
// Two-parameter drawing on a unit viewport; throws DimensionUnsupported otherwise.
std::string exportSvg(PartitionState const& state);

}  // namespace paramsynth
