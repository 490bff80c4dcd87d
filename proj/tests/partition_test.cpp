#include "support.h"

#include "paramsynth/lifting/substitution.h"
#include "paramsynth/partition/partition.h"

#include <gtest/gtest.h>

using namespace paramsynth;
using namespace paramsynth::testing;

namespace {

Region region(std::string const& text, ParametricModel const& model) {
    return parseRegion(text, model.parameters());
}

Region box(std::vector<std::pair<std::string, std::string>> const& bounds) {
    std::vector<Interval> intervals;
    for (auto const& [lo, hi] : bounds) {
        intervals.push_back({R(lo), R(hi)});
    }
    return Region(intervals);
}

Sample sample(std::vector<std::string> const& coords, bool satisfied) {
    return {point(coords), satisfied, ExtendedRational(Rational(0))};
}

Instantiation pointIn(std::mt19937_64& rng, Region const& r) {
    Instantiation result(r.dimension());
    for (VariableId v = 0; v < r.dimension(); ++v) {
        Interval const& range = r.interval(v);
        result.set(v, range.width() == 0 ? range.lower : randomRational(rng, range.lower, range.upper));
    }
    return result;
}

bool interiorsOverlap(Region const& a, Region const& b) {
    for (VariableId v = 0; v < a.dimension(); ++v) {
        if (a.interval(v).upper <= b.interval(v).lower || b.interval(v).upper <= a.interval(v).lower) {
            return false;
        }
    }
    return true;
}

std::vector<Region> allBoxes(PartitionState const& state) {
    std::vector<Region> boxes = state.accepted;
    boxes.insert(boxes.end(), state.rejected.begin(), state.rejected.end());
    for (auto const& c : state.queue) {
        boxes.push_back(c.region);
    }
    return boxes;
}

void expectPartitionOfSpace(PartitionState const& state) {
    auto boxes = allBoxes(state);
    Rational total = 0;
    for (auto const& b : boxes) {
        EXPECT_TRUE(state.space.contains(b));
        total += relativeSize(b, state.space);
    }
    EXPECT_EQ(total, 1);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            EXPECT_FALSE(interiorsOverlap(boxes[i], boxes[j]));
        }
    }
    Rational decided = 0;
    for (auto const& b : state.accepted) {
        decided += relativeSize(b, state.space);
    }
    for (auto const& b : state.rejected) {
        decided += relativeSize(b, state.space);
    }
    EXPECT_EQ(decided, state.coverage);
}

void expectMonotoneCoverage(PartitionState const& state) {
    for (std::size_t i = 1; i < state.coverageHistory.size(); ++i) {
        EXPECT_LE(state.coverageHistory[i - 1], state.coverageHistory[i]);
    }
    EXPECT_EQ(state.coverageHistory.size(), state.iterations);
}

// Fresh exact samples drawn from decided boxes must agree with their box.
void auditSoundness(ParametricModel const& model, Specification const& spec, PartitionState const& state,
                    std::size_t perClass, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (auto const& [boxes, expected] : {std::pair{&state.accepted, true}, std::pair{&state.rejected, false}}) {
        if (boxes->empty()) {
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, boxes->size() - 1);
        for (std::size_t i = 0; i < perClass; ++i) {
            auto u = pointIn(rng, (*boxes)[pick(rng)]);
            ASSERT_EQ(evaluateSample(model, spec, u).satisfied, expected) << u.toString(model.parameters());
        }
    }
    for (auto const& s : state.samples) {
        for (auto const& b : state.accepted) {
            if (b.contains(s.point)) {
                EXPECT_TRUE(s.satisfied);
            }
        }
        for (auto const& b : state.rejected) {
            if (b.contains(s.point)) {
                EXPECT_FALSE(s.satisfied);
            }
        }
    }
}

PartitionConfig liftingOnly() {
    PartitionConfig config;
    config.smtFallback = false;
    return config;
}

}  // namespace

TEST(SamplingTest, KnuthYaoPoints) {
    auto die = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto slow = evaluateSample(die, spec, point({"2/5", "7/10"}));
    EXPECT_EQ(slow.value, ExtendedRational(R("1/10")));
    EXPECT_FALSE(slow.satisfied);
    auto fair = evaluateSample(die, spec, point({"1/2", "1/2"}));
    EXPECT_EQ(fair.value, ExtendedRational(R("1/6")));
    EXPECT_TRUE(fair.satisfied);
}

TEST(SamplingTest, GridIsCellCentresLastDimensionFastest) {
    auto die = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto space = region("1/100<=p<=99/100, 1/100<=q<=99/100", die);
    auto grid = sampleGrid(die, spec, space, 2);
    ASSERT_EQ(grid.size(), 4u);
    EXPECT_EQ(grid[0].point, point({"51/200", "51/200"}));
    EXPECT_EQ(grid[1].point, point({"51/200", "149/200"}));
    EXPECT_EQ(grid[2].point, point({"149/200", "51/200"}));
    EXPECT_EQ(grid[3].point, point({"149/200", "149/200"}));
    for (auto const& s : grid) {
        EXPECT_TRUE(space.contains(s.point));
        EXPECT_EQ(s.satisfied, satisfies(s.value, spec));
    }
    EXPECT_EQ(sampleGrid(die, spec, space, 4).size(), 16u);
    EXPECT_THROW(sampleGrid(die, spec, space, 0), InvalidArgument);
}

TEST(SamplingTest, Interpolation) {
    auto unit = box({{"0", "1"}, {"0", "1"}});
    auto mids = interpolateSamples({sample({"1/4", "1/4"}, true), sample({"3/4", "3/4"}, false)}, unit);
    ASSERT_EQ(mids.size(), 1u);
    EXPECT_EQ(mids[0], point({"1/2", "1/2"}));

    EXPECT_THROW(interpolateSamples({sample({"1/4", "1/4"}, true), sample({"3/4", "3/4"}, true)}, unit),
                 NoMixedSamples);

    // The middle sample is equidistant from both ends; the tie goes to the first.
    auto line = interpolateSamples(
        {sample({"0", "0"}, true), sample({"1/2", "0"}, false), sample({"1", "0"}, true)}, unit);
    ASSERT_EQ(line.size(), 2u);
    EXPECT_EQ(line[0], point({"1/4", "0"}));
    EXPECT_EQ(line[1], point({"3/4", "0"}));
}

TEST(SamplingTest, InterpolationNormalisesTheSpace) {
    // On the raw coordinates (0,0) is nearer to (0,2); normalised, (1,0) is.
    auto wide = box({{"0", "10"}, {"0", "2"}});
    auto mids =
        interpolateSamples({sample({"0", "0"}, true), sample({"1", "0"}, false), sample({"0", "2"}, false)}, wide);
    EXPECT_EQ(mids.front(), point({"1/2", "0"}));
}

TEST(SamplingTest, RelativeSize) {
    auto space = box({{"0", "2"}, {"1", "1"}, {"0", "1/2"}});
    EXPECT_EQ(relativeSize(space, space), 1);
    EXPECT_EQ(relativeSize(box({{"0", "1"}, {"1", "1"}, {"0", "1/4"}}), space), R("1/4"));
}

TEST(CandidateTest, QuadsSeparatesHalves) {
    auto unit = box({{"0", "1"}, {"0", "1"}});
    std::vector<Sample> samples{sample({"1/4", "1/4"}, true), sample({"1/4", "3/4"}, true),
                                sample({"3/4", "1/4"}, false), sample({"3/4", "3/4"}, false)};
    auto candidates = generateCandidates(unit, samples, Splitter::Quads, unit);
    ASSERT_EQ(candidates.size(), 2u);
    EXPECT_EQ(candidates[0].region, box({{"0", "1/2"}, {"0", "1"}}));
    EXPECT_EQ(candidates[0].hypothesis, Hypothesis::Accept);
    EXPECT_EQ(candidates[1].region, box({{"1/2", "1"}, {"0", "1"}}));
    EXPECT_EQ(candidates[1].hypothesis, Hypothesis::Reject);
}

TEST(CandidateTest, QuadsRecursesUntilPure) {
    auto unit = box({{"0", "1"}, {"0", "1"}});
    std::vector<Sample> samples{sample({"1/8", "1/8"}, false), sample({"3/8", "3/8"}, true),
                                sample({"7/8", "7/8"}, true)};
    auto candidates = generateCandidates(unit, samples, Splitter::Quads, unit);
    Rational total = 0;
    for (auto const& c : candidates) {
        total += relativeSize(c.region, unit);
        bool accept = false;
        bool reject = false;
        for (auto const& s : samples) {
            if (c.region.contains(s.point)) {
                (s.satisfied ? accept : reject) = true;
            }
        }
        EXPECT_FALSE(accept && reject);
        if (accept || reject) {
            EXPECT_EQ(c.hypothesis, accept ? Hypothesis::Accept : Hypothesis::Reject);
        }
    }
    EXPECT_EQ(total, 1);
    EXPECT_EQ(candidates.size(), 4u);
}

TEST(CandidateTest, PureRegionIsBisectedOnce) {
    auto unit = box({{"0", "1"}, {"0", "2"}});
    auto candidates = generateCandidates(unit, {sample({"1/2", "1/2"}, true)}, Splitter::GrowingRectangles, unit);
    ASSERT_EQ(candidates.size(), 2u);
    EXPECT_EQ(candidates[0].region, box({{"0", "1/2"}, {"0", "2"}}));
    EXPECT_EQ(candidates[1].region, box({{"1/2", "1"}, {"0", "2"}}));
}

TEST(CandidateTest, GrowingRectangles) {
    // Frozen from a hand computation of every anchor: the corner (0,1) grows furthest, up to its
    // furthest agreeing sample (reach 4/5) and short of the first opposite one (reach 9/10).
    auto unit = box({{"0", "1"}, {"0", "1"}});
    std::vector<Sample> samples{sample({"1/10", "1/10"}, true), sample({"3/10", "1/5"}, true),
                                sample({"4/5", "1/10"}, false)};
    auto candidates = generateCandidates(unit, samples, Splitter::GrowingRectangles, unit);
    ASSERT_EQ(candidates.size(), 3u);
    EXPECT_EQ(candidates[0].region, box({{"0", "4/5"}, {"1/5", "1"}}));
    EXPECT_EQ(candidates[0].hypothesis, Hypothesis::Accept);
    EXPECT_EQ(candidates[1].region, box({{"4/5", "1"}, {"0", "1"}}));
    EXPECT_EQ(candidates[1].hypothesis, Hypothesis::Reject);
    EXPECT_EQ(candidates[2].region, box({{"0", "4/5"}, {"0", "1/5"}}));
    EXPECT_EQ(candidates[2].hypothesis, Hypothesis::Accept);
    // The grown box stops short of both the rejecting sample and the accepting one it cannot cover.
    EXPECT_FALSE(candidates[0].region.contains(samples[2].point));
    EXPECT_FALSE(candidates[0].region.contains(samples[0].point));
}

TEST(CandidateTest, GrowingRectanglesFallsBackToQuads) {
    // Every corner is nearest to an accepting sample that lies diagonally behind a rejecting one,
    // so no anchor can grow.
    auto unit = box({{"0", "1"}, {"0", "1"}});
    std::vector<Sample> samples{sample({"1/2", "0"}, true),     sample({"1/2", "1"}, true),
                                sample({"2/5", "2/5"}, false), sample({"3/5", "2/5"}, false),
                                sample({"2/5", "3/5"}, false), sample({"3/5", "3/5"}, false)};
    auto rectangles = generateCandidates(unit, samples, Splitter::GrowingRectangles, unit);
    auto quads = generateCandidates(unit, samples, Splitter::Quads, unit);
    ASSERT_EQ(rectangles.size(), quads.size());
    for (std::size_t i = 0; i < quads.size(); ++i) {
        EXPECT_EQ(rectangles[i].region, quads[i].region);
    }
}

TEST(CandidateTest, EmptyBoxesFollowTheNearestDecidedBox) {
    auto space = box({{"-1", "2"}, {"0", "1"}});
    auto flat = box({{"0", "1"}, {"0", "1/4"}});
    std::vector<Region> accepted{box({{"-1", "0"}, {"0", "1"}})};
    std::vector<Region> rejected{box({{"1", "2"}, {"0", "1"}})};
    auto candidates = generateCandidates(flat, {}, Splitter::Quads, space, accepted, rejected);
    ASSERT_EQ(candidates.size(), 2u);
    EXPECT_EQ(candidates[0].hypothesis, Hypothesis::Accept);
    EXPECT_EQ(candidates[1].hypothesis, Hypothesis::Reject);

    // Both halves are equidistant from the two decided boxes: accept wins.
    auto unit = box({{"0", "1"}, {"0", "1"}});
    auto tall = box({{"-1", "2"}, {"0", "2"}});
    auto tied = generateCandidates(unit, {}, Splitter::Quads, tall, accepted, rejected);
    ASSERT_EQ(tied.size(), 2u);
    EXPECT_EQ(tied[0].region, box({{"0", "1"}, {"0", "1/2"}}));
    EXPECT_EQ(tied[0].hypothesis, Hypothesis::Accept);
    EXPECT_EQ(tied[1].hypothesis, Hypothesis::Accept);
}

TEST(RefineTest, KnuthYaoReachesCoverage) {
    auto die = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto space = region("1/100<=p<=99/100, 1/100<=q<=99/100", die);
    auto state = refine(die, spec, space, liftingOnly());
    EXPECT_GE(state.coverage, R("19/20"));
    EXPECT_FALSE(state.accepted.empty());
    EXPECT_FALSE(state.rejected.empty());
    EXPECT_FALSE(state.budgetExhausted);
    EXPECT_EQ(state.statistics.solverCalls, 0u);
    expectPartitionOfSpace(state);
    expectMonotoneCoverage(state);
    auditSoundness(die, spec, state, 200, 7);
}

TEST(RefineTest, GrowingRectanglesReachesCoverage) {
    auto die = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto space = region("1/100<=p<=99/100, 1/100<=q<=99/100", die);
    auto config = liftingOnly();
    config.splitter = Splitter::GrowingRectangles;
    config.coverage = R("9/10");
    auto state = refine(die, spec, space, config);
    EXPECT_GE(state.coverage, R("9/10"));
    expectPartitionOfSpace(state);
    expectMonotoneCoverage(state);
    auditSoundness(die, spec, state, 200, 11);
}

TEST(RefineTest, TrivialSpecificationTakesOneIteration) {
    auto die = corpusModel("knuth_yao.pmc");
    auto space = region("1/100<=p<=99/100, 1/100<=q<=99/100", die);
    auto state = refine(die, parseSpecification("P <= 1 reach two"), space, liftingOnly());
    EXPECT_EQ(state.iterations, 1u);
    EXPECT_EQ(state.coverage, 1);
    ASSERT_EQ(state.accepted.size(), 1u);
    EXPECT_EQ(state.accepted[0], space);
    EXPECT_TRUE(state.rejected.empty());
    EXPECT_TRUE(state.queue.empty());
}

TEST(RefineTest, ToyChainRejectedQuickly) {
    auto toy = corpusModel("toy_pmc.pmc");
    auto space = region("2/5<=p<=3/5, 1/5<=q<=1/2", toy);
    auto state = refine(toy, parseSpecification("P <= 2/5 reach target"), space, liftingOnly());
    EXPECT_LE(state.iterations, 3u);
    EXPECT_EQ(state.coverage, 1);
    EXPECT_TRUE(state.accepted.empty());
    expectPartitionOfSpace(state);
}

TEST(RefineTest, CounterexamplesBecomeSamples) {
    auto die = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto space = region("1/100<=p<=99/100, 1/100<=q<=99/100", die);
    ParameterLifter lifter(die, spec);
    std::vector<std::pair<Region, Instantiation>> refuted;
    auto engine = [&](Region const& r, Refute refute) {
        auto verdict = lifter.check(r, Semantics::Demonic, refute);
        if (verdict.counterexample) {
            refuted.emplace_back(r, *verdict.counterexample);
        }
        return verdict;
    };
    auto config = liftingOnly();
    config.coverage = R("4/5");
    auto state = refine(die, spec, space, config, engine);
    ASSERT_FALSE(refuted.empty());
    EXPECT_EQ(state.statistics.counterexamples, refuted.size());
    for (auto const& [r, u] : refuted) {
        EXPECT_TRUE(r.contains(u));
        EXPECT_TRUE(std::any_of(state.samples.begin(), state.samples.end(),
                                [&](Sample const& s) { return s.point == u; }));
    }
}

TEST(RefineTest, Deterministic) {
    auto die = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto space = region("1/100<=p<=99/100, 1/100<=q<=99/100", die);
    auto config = liftingOnly();
    config.coverage = R("9/10");
    auto first = refine(die, spec, space, config);
    auto second = refine(die, spec, space, config);
    EXPECT_EQ(exportCsv(first, die.parameters()), exportCsv(second, die.parameters()));
    EXPECT_EQ(exportSvg(first), exportSvg(second));
    EXPECT_EQ(first.coverageHistory, second.coverageHistory);
    ASSERT_EQ(first.samples.size(), second.samples.size());
    for (std::size_t i = 0; i < first.samples.size(); ++i) {
        EXPECT_EQ(first.samples[i].point, second.samples[i].point);
    }
}

TEST(RefineTest, BudgetLeavesAValidPartialState) {
    auto die = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto space = region("1/100<=p<=99/100, 1/100<=q<=99/100", die);
    auto config = liftingOnly();
    config.budget = std::chrono::milliseconds(0);
    auto state = refine(die, spec, space, config);
    EXPECT_TRUE(state.budgetExhausted);
    EXPECT_EQ(state.coverage, 0);
    expectPartitionOfSpace(state);

    config.budget.reset();
    config.iterationCap = 5;
    auto capped = refine(die, spec, space, config);
    EXPECT_EQ(capped.iterations, 5u);
    EXPECT_FALSE(capped.budgetExhausted);
    expectPartitionOfSpace(capped);
}

TEST(RefineTest, Preconditions) {
    auto toy = corpusModel("toy_pmc.pmc");
    auto spec = parseSpecification("P <= 2/5 reach target");
    auto space = region("2/5<=p<=3/5, 1/5<=q<=1/2", toy);
    PartitionConfig config;
    config.grid = 1;
    EXPECT_THROW(refine(toy, spec, space, config), InvalidArgument);
    config = PartitionConfig{};
    config.coverage = R("3/2");
    EXPECT_THROW(refine(toy, spec, space, config), InvalidArgument);
    EXPECT_THROW(refine(toy, spec, box({{"0", "1"}}), PartitionConfig{}), InvalidArgument);

    auto square = parseModel(
        "pmc\nparameters p\nstates 3 init 0\nlabel t 1\n"
        "transition 0 1 p^2\ntransition 0 2 1-p^2\ntransition 1 1 1\ntransition 2 2 1\n");
    EXPECT_THROW(refine(square, parseSpecification("P <= 1/2 reach t"), box({{"1/10", "9/10"}}), PartitionConfig{}),
                 EngineUnavailable);
}

TEST(RefineTest, SolverEnginesAgreeWithLifting) {
    REQUIRE_SOLVER();
    auto toy = corpusModel("toy_pmc.pmc");
    auto spec = parseSpecification("P <= 3/5 reach target");
    auto space = region("1/10<=p<=9/10, 1/10<=q<=9/10", toy);
    for (auto engine : {PartitionEngine::SmtEquationSystem, PartitionEngine::SmtSolutionFunction}) {
        PartitionConfig config;
        config.engine = engine;
        config.coverage = R("3/4");
        auto state = refine(toy, spec, space, config);
        EXPECT_GE(state.coverage, R("3/4")) << toString(engine);
        expectPartitionOfSpace(state);
        auditSoundness(toy, spec, state, 50, 3);
    }
}

TEST(RefineTest, DecisionProcess) {
    auto mdp = corpusModel("toy_pmdp.pmdp");
    auto spec = parseSpecification("P > 4/5 reach target");
    auto space = region("1/10<=p<=9/10, 1/10<=q<=9/10", mdp);
    auto config = liftingOnly();
    config.coverage = R("4/5");
    auto state = refine(mdp, spec, space, config);
    EXPECT_GE(state.coverage, R("4/5"));
    EXPECT_FALSE(state.accepted.empty());
    EXPECT_FALSE(state.rejected.empty());
    expectPartitionOfSpace(state);
    auditSoundness(mdp, spec, state, 200, 5);

    // Some strategy always avoids the parameters altogether.
    config.semantics = Semantics::Angelic;
    auto angelic = refine(mdp, spec, space, config);
    EXPECT_EQ(angelic.iterations, 1u);
    EXPECT_EQ(angelic.accepted, std::vector<Region>{space});
}

TEST(ExportTest, Csv) {
    auto toy = corpusModel("toy_pmc.pmc");
    PartitionState empty;
    empty.space = region("0<=p<=1, 0<=q<=1", toy);
    EXPECT_EQ(exportCsv(empty, toy.parameters()), "pmin,pmax,qmin,qmax,status\n");

    PartitionState state = empty;
    state.accepted.push_back(box({{"0", "1/2"}, {"0", "1"}}));
    state.rejected.push_back(box({{"1/2", "1"}, {"0", "1/3"}}));
    state.queue.push_back({box({{"1/2", "1"}, {"1/3", "1"}}), Hypothesis::Reject, 4});
    EXPECT_EQ(exportCsv(state, toy.parameters()),
              "pmin,pmax,qmin,qmax,status\n"
              "0,1/2,0,1,accepted\n"
              "1/2,1,0,1/3,rejected\n"
              "1/2,1,1/3,1,unknown\n");
}

TEST(ExportTest, Svg) {
    PartitionState state;
    state.space = box({{"0", "2"}, {"0", "1"}});
    state.accepted.push_back(box({{"0", "1"}, {"0", "1/2"}}));
    EXPECT_EQ(exportSvg(state),
              "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"400\" height=\"400\">\n"
              "<rect x=\"0.000000\" y=\"0.500000\" width=\"0.500000\" height=\"0.500000\" fill=\"green\" "
              "stroke=\"black\" stroke-width=\"0.002\"/>\n"
              "</svg>\n");
    state.space = box({{"0", "1"}, {"0", "1"}, {"0", "1"}});
    EXPECT_THROW(exportSvg(state), DimensionUnsupported);
}
