#include "paramsynth/partition/partition.h"

#include "paramsynth/errors.h"
#include "paramsynth/lifting/substitution.h"
#include "paramsynth/smt/region_check.h"

#include <algorithm>
#include <iomanip>
#include <memory>
#include <sstream>

namespace paramsynth {

namespace {

bool pureIn(std::vector<Sample> const& samples, Hypothesis& verdict) {
    bool anyAccept = false;
    bool anyReject = false;
    for (auto const& sample : samples) {
        (sample.satisfied ? anyAccept : anyReject) = true;
    }
    if (anyAccept && anyReject) {
        return false;
    }
    verdict = anyReject ? Hypothesis::Reject : Hypothesis::Accept;
    return true;
}

std::vector<Sample> samplesIn(Region const& region, std::vector<Sample> const& samples) {
    std::vector<Sample> result;
    for (auto const& sample : samples) {
        if (region.contains(sample.point)) {
            result.push_back(sample);
        }
    }
    return result;
}

Rational normalized(Rational const& value, VariableId var, Region const& space) {
    Rational width = space.interval(var).width();
    if (width == 0) {
        return Rational(0);
    }
    Rational result = (value - space.interval(var).lower) / width;
    result.canonicalize();
    return result;
}

Rational distanceSquared(Instantiation const& a, Instantiation const& b, Region const& space) {
    Rational sum = 0;
    for (VariableId v = 0; v < space.dimension(); ++v) {
        Rational d = normalized(a.at(v), v, space) - normalized(b.at(v), v, space);
        sum += d * d;
    }
    return sum;
}

Instantiation midpoint(Instantiation const& a, Instantiation const& b) {
    Instantiation result(a.size());
    for (VariableId v = 0; v < a.size(); ++v) {
        Rational m = (a.at(v) + b.at(v)) / 2;
        m.canonicalize();
        result.set(v, m);
    }
    return result;
}

// Verdict of the samples in the region; empty regions look at the nearest sample or decided box.
Hypothesis hypothesisFor(Region const& region, std::vector<Sample> const& samples, Region const& space,
                         std::vector<Region> const& accepted, std::vector<Region> const& rejected) {
    auto inside = samplesIn(region, samples);
    if (!inside.empty()) {
        std::size_t satisfied = std::count_if(inside.begin(), inside.end(), [](auto const& s) { return s.satisfied; });
        return 2 * satisfied >= inside.size() ? Hypothesis::Accept : Hypothesis::Reject;
    }
    Instantiation centre = region.center();
    std::optional<Rational> best;
    Hypothesis result = Hypothesis::Accept;
    auto consider = [&](Instantiation const& point, Hypothesis verdict) {
        Rational d = distanceSquared(centre, point, space);
        if (!best || d < *best || (d == *best && verdict == Hypothesis::Accept && result == Hypothesis::Reject)) {
            best = d;
            result = verdict;
        }
    };
    for (auto const& sample : samples) {
        consider(sample.point, sample.satisfied ? Hypothesis::Accept : Hypothesis::Reject);
    }
    for (auto const& box : accepted) {
        consider(box.center(), Hypothesis::Accept);
    }
    for (auto const& box : rejected) {
        consider(box.center(), Hypothesis::Reject);
    }
    return result;
}

// Bisects the dimension that is widest relative to the space; ties go to the lowest id.
std::vector<Region> bisect(Region const& region, Region const& space) {
    std::optional<VariableId> widest;
    Rational widestRatio = 0;
    for (VariableId v = 0; v < region.dimension(); ++v) {
        if (region.isDegenerate(v)) {
            continue;
        }
        Rational ratio = normalized(space.interval(v).lower + region.interval(v).width(), v, space);
        if (!widest || ratio > widestRatio) {
            widest = v;
            widestRatio = ratio;
        }
    }
    if (!widest) {
        return {region};
    }
    return split(region, SplitStrategy::dim(*widest));
}

void quads(Region const& region, std::vector<Sample> const& samples, Region const& space, std::size_t depth,
           std::vector<Region>& leaves) {
    for (auto const& child : bisect(region, space)) {
        Hypothesis ignored;
        auto inside = samplesIn(child, samples);
        if (depth == 0 || child == region || pureIn(inside, ignored)) {
            leaves.push_back(child);
        } else {
            quads(child, inside, space, depth - 1, leaves);
        }
    }
}

// The largest box grown from a corner along the diagonal whose samples share the corner's
// verdict, reaching no opposite sample.
std::optional<Region> growFromAnchor(Region const& region, Instantiation const& anchor,
                                     std::vector<Sample> const& inside, Region const& space) {
    if (inside.empty()) {
        return std::nullopt;
    }
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < inside.size(); ++i) {
        if (distanceSquared(anchor, inside[i].point, space) < distanceSquared(anchor, inside[nearest].point, space)) {
            nearest = i;
        }
    }
    bool verdict = inside[nearest].satisfied;
    auto reach = [&](Instantiation const& point) {
        Rational result = 0;
        for (VariableId v = 0; v < region.dimension(); ++v) {
            if (region.isDegenerate(v)) {
                continue;
            }
            Rational ratio = abs(point.at(v) - anchor.at(v)) / region.interval(v).width();
            result = std::max(result, ratio);
        }
        return result;
    };
    std::optional<Rational> blocked;
    for (auto const& sample : inside) {
        if (sample.satisfied != verdict) {
            Rational r = reach(sample.point);
            if (!blocked || r < *blocked) {
                blocked = r;
            }
        }
    }
    if (!blocked || *blocked == 0) {
        return std::nullopt;
    }
    Rational covered = 0;
    bool any = false;
    for (auto const& sample : inside) {
        Rational r = reach(sample.point);
        if (sample.satisfied == verdict && r < *blocked) {
            covered = std::max(covered, r);
            any = true;
        }
    }
    if (!any) {
        return std::nullopt;
    }
    // Stop at the furthest agreeing sample; refutations then shrink the box to an existing
    // sample instead of creeping towards it. A lone sample on the anchor gets half the gap.
    Rational t = covered > 0 ? covered : Rational(*blocked / 2);
    std::vector<Interval> box;
    for (VariableId v = 0; v < region.dimension(); ++v) {
        Interval const& full = region.interval(v);
        Rational extent = full.width() * t;
        if (anchor.at(v) == full.lower) {
            box.push_back({full.lower, Rational(full.lower + extent)});
        } else {
            box.push_back({Rational(full.upper - extent), full.upper});
        }
    }
    return Region(box);
}

// Region minus a box sharing one of its corners, as one slab per dimension.
std::vector<Region> remainder(Region const& region, Region const& box) {
    std::vector<Region> result;
    for (VariableId i = 0; i < region.dimension(); ++i) {
        Interval const& full = region.interval(i);
        Interval const& inner = box.interval(i);
        Interval rest = inner.lower == full.lower ? Interval{inner.upper, full.upper} : Interval{full.lower, inner.lower};
        if (rest.width() == 0) {
            continue;
        }
        std::vector<Interval> slab;
        for (VariableId j = 0; j < region.dimension(); ++j) {
            slab.push_back(j < i ? box.interval(j) : (j == i ? rest : region.interval(j)));
        }
        result.emplace_back(slab);
    }
    return result;
}

constexpr std::size_t quadsDepth = 40;

}  // namespace

std::string toString(PartitionEngine engine) {
    switch (engine) {
        case PartitionEngine::Lifting:
            return "lifting";
        case PartitionEngine::SmtEquationSystem:
            return "smt-es";
        case PartitionEngine::SmtSolutionFunction:
            return "smt-sf";
    }
    return "lifting";
}

std::string toString(Splitter splitter) { return splitter == Splitter::Quads ? "quads" : "rectangles"; }

PartitionEngine parsePartitionEngine(std::string_view text) {
    for (auto engine :
         {PartitionEngine::Lifting, PartitionEngine::SmtEquationSystem, PartitionEngine::SmtSolutionFunction}) {
        if (toString(engine) == text) {
            return engine;
        }
    }
    throw InvalidArgument("unknown partition engine '" + std::string(text) + "'");
}

Splitter parseSplitter(std::string_view text) {
    if (text == "quads") {
        return Splitter::Quads;
    }
    if (text == "rectangles" || text == "growing-rectangles") {
        return Splitter::GrowingRectangles;
    }
    throw InvalidArgument("unknown splitter '" + std::string(text) + "'");
}

Sample evaluateSample(ParametricModel const& model, Specification const& spec, Instantiation const& point,
                      Semantics semantics) {
    ConcreteModel concrete = instantiate(model, point);
    if (!concrete.wellDefined()) {
        throw InvalidArgument("sample " + point.toString(model.parameters()) + " is not well-defined: " +
                              concrete.problem());
    }
    Direction measure =
        (semantics == Semantics::Demonic) == spec.isUpperBound() ? Direction::Maximize : Direction::Minimize;
    Sample sample;
    sample.point = point;
    sample.value = checkConcrete(concrete, spec, measure).value;
    sample.satisfied = satisfies(sample.value, spec);
    return sample;
}

std::vector<Sample> sampleGrid(ParametricModel const& model, Specification const& spec, Region const& space,
                               std::size_t k, Semantics semantics) {
    if (k == 0) {
        throw InvalidArgument("grid density must be positive");
    }
    std::vector<Sample> samples;
    std::vector<std::size_t> index(space.dimension(), 0);
    while (true) {
        Instantiation point(space.dimension());
        for (VariableId v = 0; v < space.dimension(); ++v) {
            Interval const& range = space.interval(v);
            Rational offset(static_cast<long>(2 * index[v] + 1), static_cast<long>(2 * k));
            offset.canonicalize();
            point.set(v, Rational(range.lower + range.width() * offset));
        }
        samples.push_back(evaluateSample(model, spec, point, semantics));
        std::size_t v = space.dimension();
        while (v > 0 && ++index[v - 1] == k) {
            index[v - 1] = 0;
            --v;
        }
        if (v == 0) {
            return samples;
        }
    }
}

std::vector<Instantiation> interpolateSamples(std::vector<Sample> const& samples, Region const& space) {
    bool anyAccept = std::any_of(samples.begin(), samples.end(), [](auto const& s) { return s.satisfied; });
    bool anyReject = std::any_of(samples.begin(), samples.end(), [](auto const& s) { return !s.satisfied; });
    if (!anyAccept || !anyReject) {
        throw NoMixedSamples("interpolation needs accepting and rejecting samples");
    }
    std::vector<Instantiation> result;
    for (auto const& sample : samples) {
        std::optional<std::size_t> nearest;
        Rational best;
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (samples[j].satisfied == sample.satisfied) {
                continue;
            }
            Rational d = distanceSquared(sample.point, samples[j].point, space);
            if (!nearest || d < best) {
                nearest = j;
                best = d;
            }
        }
        Instantiation m = midpoint(sample.point, samples[*nearest].point);
        if (std::find(result.begin(), result.end(), m) == result.end()) {
            result.push_back(m);
        }
    }
    return result;
}

Rational relativeSize(Region const& region, Region const& space) {
    Rational result = 1;
    for (VariableId v = 0; v < space.dimension(); ++v) {
        if (space.isDegenerate(v)) {
            continue;
        }
        result *= region.interval(v).width() / space.interval(v).width();
    }
    result.canonicalize();
    return result;
}

std::vector<Candidate> generateCandidates(Region const& region, std::vector<Sample> const& samples,
                                          Splitter splitter, Region const& space,
                                          std::vector<Region> const& accepted, std::vector<Region> const& rejected) {
    auto inside = samplesIn(region, samples);
    Hypothesis ignored;
    bool mixed = !pureIn(inside, ignored);
    std::vector<Region> pieces;
    if (splitter == Splitter::GrowingRectangles && mixed) {
        std::optional<Region> best;
        for (auto const& anchor : region.vertices()) {
            auto grown = growFromAnchor(region, anchor, inside, space);
            if (grown && (!best || relativeSize(*grown, space) > relativeSize(*best, space))) {
                best = grown;
            }
        }
        if (best) {
            pieces.push_back(*best);
            auto rest = remainder(region, *best);
            pieces.insert(pieces.end(), rest.begin(), rest.end());
        }
    }
    if (pieces.empty()) {
        quads(region, inside, space, mixed ? quadsDepth : 0, pieces);
    }
    std::vector<Candidate> result;
    for (auto& piece : pieces) {
        Hypothesis h = hypothesisFor(piece, samples, space, accepted, rejected);
        result.push_back({std::move(piece), h, 0});
    }
    return result;
}

PartitionState refine(ParametricModel const& model, Specification const& spec, Region const& space,
                      PartitionConfig const& config, RegionEngine engineOverride) {
    if (space.dimension() != model.parameterCount()) {
        throw InvalidArgument("parameter space has " + std::to_string(space.dimension()) +
                              " dimensions, model has " + std::to_string(model.parameterCount()) + " parameters");
    }
    if (config.coverage <= 0 || config.coverage > 1) {
        throw InvalidArgument("coverage target must lie in (0, 1]");
    }
    if (config.grid < 2) {
        throw InvalidArgument("grid density must be at least 2");
    }
    auto start = std::chrono::steady_clock::now();

    std::unique_ptr<ParameterLifter> lifter;
    std::unique_ptr<smt::SmtRegionChecker> checker;
    RegionEngine engine = std::move(engineOverride);
    if (!engine) {
        try {
            if (config.engine == PartitionEngine::Lifting) {
                lifter = std::make_unique<ParameterLifter>(model, spec);
                engine = [&](Region const& r, Refute refute) { return lifter->check(r, config.semantics, refute); };
            } else {
                smt::SmtCheckOptions options;
                options.form = config.engine == PartitionEngine::SmtEquationSystem ? smt::EncodingForm::EquationSystem
                                                                                   : smt::EncodingForm::SolutionFunctions;
                options.semantics = config.semantics;
                options.solver = config.solver;
                checker = std::make_unique<smt::SmtRegionChecker>(model, spec, options);
                engine = [&](Region const& r, Refute refute) { return checker->check(r, refute); };
            }
        } catch (NotLocallyMonotone const& e) {
            throw EngineUnavailable(toString(config.engine) + ": " + e.what());
        } catch (UnsupportedSpecification const& e) {
            throw EngineUnavailable(toString(config.engine) + ": " + e.what());
        } catch (StrategyCapExceeded const& e) {
            throw EngineUnavailable(toString(config.engine) + ": " + e.what());
        } catch (SolverSpawnFailure const& e) {
            throw EngineUnavailable(toString(config.engine) + ": " + e.what());
        }
    }
    bool fallbackAvailable = config.smtFallback && config.engine == PartitionEngine::Lifting && !checker;
    std::unique_ptr<smt::SmtRegionChecker> fallback;
    auto solverFallback = [&](Region const& r, Refute refute) -> std::optional<RegionVerdict> {
        if (!fallbackAvailable || relativeSize(r, space) > config.fallbackFraction) {
            return std::nullopt;
        }
        try {
            if (!fallback) {
                smt::SmtCheckOptions options;
                options.semantics = config.semantics;
                options.solver = config.solver;
                fallback = std::make_unique<smt::SmtRegionChecker>(model, spec, options);
            }
            return fallback->check(r, refute);
        } catch (Error const&) {
            fallbackAvailable = false;
            return std::nullopt;
        }
    };

    PartitionState state;
    state.space = space;
    state.samples = sampleGrid(model, spec, space, config.grid, config.semantics);
    try {
        for (auto const& point : interpolateSamples(state.samples, space)) {
            state.samples.push_back(evaluateSample(model, spec, point, config.semantics));
        }
    } catch (NoMixedSamples const&) {
    }

    // Largest first, then boxes whose samples already agree, then oldest. Ranks are cached
    // alongside the queue and refreshed when a new sample lands in a queued box.
    using Rank = std::pair<Rational, bool>;
    std::vector<Rank> ranks;
    auto rank = [&](Candidate const& c) {
        Hypothesis ignored;
        auto inside = samplesIn(c.region, state.samples);
        return Rank(relativeSize(c.region, space), !inside.empty() && pureIn(inside, ignored));
    };
    std::size_t nextId = 0;
    auto enqueue = [&](Candidate candidate) {
        candidate.id = nextId++;
        ranks.push_back(rank(candidate));
        state.queue.push_back(std::move(candidate));
    };
    enqueue({space, hypothesisFor(space, state.samples, space, {}, {}), 0});

    Rational decided = 0;
    state.coverage = 0;
    while (!state.queue.empty()) {
        if (state.coverage >= config.coverage) {
            break;
        }
        if (state.iterations >= config.iterationCap) {
            state.note = "iteration cap reached";
            break;
        }
        if (config.budget && std::chrono::steady_clock::now() - start >= *config.budget) {
            state.budgetExhausted = true;
            state.note = "time budget exhausted";
            break;
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < ranks.size(); ++i) {
            Rank const& r = ranks[i];
            if (r.first > ranks[best].first || (r.first == ranks[best].first && r.second && !ranks[best].second)) {
                best = i;
            }
        }
        Candidate candidate = std::move(state.queue[best]);
        state.queue.erase(state.queue.begin() + static_cast<std::ptrdiff_t>(best));
        ranks.erase(ranks.begin() + static_cast<std::ptrdiff_t>(best));
        ++state.iterations;

        auto inside = samplesIn(candidate.region, state.samples);
        Hypothesis agreed;
        bool split = !pureIn(inside, agreed);
        if (!split && !inside.empty()) {
            candidate.hypothesis = agreed;
        }
        if (!split) {
            Refute refute = candidate.hypothesis == Hypothesis::Accept ? Refute::Accepting : Refute::Rejecting;
            RegionVerdict verdict = engine(candidate.region, refute);
            ++state.statistics.engineCalls;
            if (verdict.status == RegionStatus::Unknown) {
                if (auto refined = solverFallback(candidate.region, refute)) {
                    ++state.statistics.solverCalls;
                    if (refined->status != RegionStatus::Unknown || refined->counterexample) {
                        verdict = *refined;
                    }
                }
            }
            if (verdict.counterexample) {
                ++state.statistics.counterexamples;
                state.samples.push_back(evaluateSample(model, spec, *verdict.counterexample, config.semantics));
                for (std::size_t i = 0; i < state.queue.size(); ++i) {
                    if (state.queue[i].region.contains(state.samples.back().point)) {
                        ranks[i] = rank(state.queue[i]);
                    }
                }
            }
            if (verdict.status == RegionStatus::AllSat) {
                decided += relativeSize(candidate.region, space);
                state.accepted.push_back(std::move(candidate.region));
            } else if (verdict.status == RegionStatus::AllViolate) {
                decided += relativeSize(candidate.region, space);
                state.rejected.push_back(std::move(candidate.region));
            } else {
                split = true;
            }
        }
        if (split) {
            ++state.statistics.splits;
            for (auto& child :
                 generateCandidates(candidate.region, state.samples, config.splitter, space, state.accepted,
                                    state.rejected)) {
                enqueue(std::move(child));
            }
        }
        decided.canonicalize();
        state.coverage = decided;
        state.coverageHistory.push_back(state.coverage);
    }
    return state;
}

std::string exportCsv(PartitionState const& state, VariablePool const& parameters) {
    std::ostringstream out;
    for (VariableId v = 0; v < state.space.dimension(); ++v) {
        out << parameters.name(v) << "min," << parameters.name(v) << "max,";
    }
    out << "status\n";
    auto rows = [&](std::vector<Region> const& boxes, char const* status) {
        for (auto const& box : boxes) {
            for (auto const& interval : box.intervals()) {
                out << interval.lower.get_str() << ',' << interval.upper.get_str() << ',';
            }
            out << status << '\n';
        }
    };
    rows(state.accepted, "accepted");
    rows(state.rejected, "rejected");
    std::vector<Region> open;
    for (auto const& candidate : state.queue) {
        open.push_back(candidate.region);
    }
    rows(open, "unknown");
    return out.str();
}

std::string exportSvg(PartitionState const& state) {
    if (state.space.dimension() != 2) {
        throw DimensionUnsupported("svg export needs exactly two parameters, got " +
                                   std::to_string(state.space.dimension()));
    }
    std::ostringstream out;
    out << std::fixed << std::setprecision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"400\" height=\"400\">\n";
    auto rect = [&](Region const& box, char const* fill) {
        double x0 = normalized(box.interval(0).lower, 0, state.space).get_d();
        double x1 = normalized(box.interval(0).upper, 0, state.space).get_d();
        double y0 = normalized(box.interval(1).lower, 1, state.space).get_d();
        double y1 = normalized(box.interval(1).upper, 1, state.space).get_d();
        out << "<rect x=\"" << x0 << "\" y=\"" << 1.0 - y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y1 - y0
            << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"0.002\"/>\n";
    };
    for (auto const& candidate : state.queue) {
        rect(candidate.region, "white");
    }
    for (auto const& box : state.rejected) {
        rect(box, "red");
    }
    for (auto const& box : state.accepted) {
        rect(box, "green");
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace paramsynth
