// Acceptance report: one PASS/FAIL/SKIP line per criterion.
// Usage: acceptance [id...]   (all criteria when no id is given)

#include "support.h"

#include "paramsynth/cli/cli.h"
#include "paramsynth/elimination/order.h"
#include "paramsynth/elimination/solution_function.h"
#include "paramsynth/lifting/substitution.h"
#include "paramsynth/models/check_concrete.h"
#include "paramsynth/partition/partition.h"
#include "paramsynth/smt/encodings.h"
#include "paramsynth/smt/region_check.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace paramsynth;
using namespace paramsynth::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    bool skipped = false;
    std::string detail;

    void require(bool condition, std::string const& what) {
        if (!condition && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    long limitMs;
    std::function<Outcome()> run;
};

long elapsedMs(Clock::time_point start) {
    return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

Region box(std::string const& text, ParametricModel const& model) {
    return parseRegion(text, model.parameters());
}

ExtendedRational exactValue(ParametricModel const& model, Specification const& spec, Instantiation const& u,
                            Direction direction = Direction::Maximize) {
    return checkConcrete(instantiate(model, u), spec, direction).value;
}

Region randomSubBox(std::mt19937_64& rng, std::size_t dim, Rational const& lo, Rational const& hi) {
    auto a = randomPoint(rng, dim, lo, hi);
    auto b = randomPoint(rng, dim, lo, hi);
    std::vector<Interval> bounds;
    for (VariableId v = 0; v < dim; ++v) {
        bounds.push_back({std::min(a.at(v), b.at(v)), std::max(a.at(v), b.at(v))});
    }
    return Region(bounds);
}

Instantiation pointIn(std::mt19937_64& rng, Region const& r) {
    std::vector<Rational> coords;
    for (VariableId v = 0; v < r.dimension(); ++v) {
        auto const& iv = r.interval(v);
        coords.push_back(iv.lower == iv.upper ? iv.lower : randomRational(rng, iv.lower, iv.upper, 1000));
    }
    return Instantiation(coords);
}

std::string slurp(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Outcome solutionFunctionGoldens() {
    Outcome out;
    struct Golden {
        std::string file, label, expected;
    };
    for (auto const& g : {Golden{"knuth_yao.pmc", "two", "p*(1-q)*(1-p)/(1-p*q)"},
                          Golden{"toy_pmc.pmc", "target", "1-p+p*q"}}) {
        auto model = corpusModel(g.file);
        VariablePool pool = model.parameters();
        auto expected = rf(g.expected, pool);
        for (auto engine : {EliminationEngine::StateElimination, EliminationEngine::Gaussian,
                            EliminationEngine::SetBased}) {
            for (auto order : allEliminationOrders()) {
                EliminationOptions options;
                options.engine = engine;
                options.order = order;
                auto f = solutionFunction(model, model.label(g.label), options);
                out.require(semanticallyEqual(f, expected),
                            g.file + " " + toString(engine) + "/" + toString(order) + " gave " +
                                f.toString(model.parameters()));
            }
        }
    }
    return out;
}

Outcome liftingGolden() {
    Outcome out;
    auto model = corpusModel("sample_pmc.pmc");
    ParameterLifter lifter(model, parseSpecification("P <= 4/5 reach target"));
    auto verdict = lifter.check(box("1/10<=p<=4/5, 2/5<=q<=7/10", model));
    out.require(verdict.upperBound && *verdict.upperBound == ExtendedRational(R("47/60")),
                "maximum " + (verdict.upperBound ? verdict.upperBound->toString() : std::string("missing")));
    out.require(verdict.status == RegionStatus::AllSat, "verdict " + toString(verdict.status));
    return out;
}

Outcome smtGoldens() {
    Outcome out;
    if (!solverAvailable()) {
        out.skipped = true;
        out.detail = "warning: no SMT solver configured";
        return out;
    }
    long const queryLimitMs = 10000;
    auto model = corpusModel("toy_pmc.pmc");
    smt::SmtRegionChecker checker(model, parseSpecification("P <= 2/5 reach target"));

    auto violated = box("2/5<=p<=3/5, 1/5<=q<=1/2", model);
    auto start = Clock::now();
    auto sat = checker.refute({violated}, Refute::Accepting).front();
    out.require(elapsedMs(start) < queryLimitMs, "first query exceeded 10 s");
    out.require(sat.status == smt::SatStatus::Sat, "first region not sat");
    out.require(sat.model && violated.contains(*sat.model) && checker.confirms(*sat.model, Refute::Accepting),
                "counterexample did not re-validate");

    auto safe = box("4/5<=p<=9/10, 1/10<=q<=1/5", model);
    start = Clock::now();
    auto unsat = checker.refute({safe}, Refute::Accepting).front();
    out.require(elapsedMs(start) < queryLimitMs, "second query exceeded 10 s");
    out.require(unsat.status == smt::SatStatus::Unsat, "second region not unsat");
    out.require(checker.check(safe).status == RegionStatus::AllSat, "second region not AllSat");

    start = Clock::now();
    smt::SolverSession session;
    auto graph = session.solve(smt::encodeGraphPreservation(model, box("0<=p<=1, 0<=q<=1", model)));
    out.require(elapsedMs(start) < queryLimitMs, "graph-preservation query exceeded 10 s");
    out.require(graph.status == smt::SatStatus::Sat, "graph-preservation query of the unit square not sat");
    return out;
}

Outcome oracleAgreement() {
    Outcome out;
    std::mt19937_64 rng(2024);
    std::vector<std::pair<std::string, std::string>> const queries{{"toy_pmc.pmc", "target"},
                                                                   {"sample_pmc.pmc", "target"},
                                                                   {"knuth_yao.pmc", "two"},
                                                                   {"cycle3.pmc", "goal"},
                                                                   {"retry.pmc", "error"}};
    for (auto const& [file, label] : queries) {
        auto model = corpusModel(file);
        auto f = solutionFunction(model, model.label(label));
        auto spec = parseSpecification("P <= 1 reach " + label);
        for (int k = 0; k < 20; ++k) {
            auto u = randomPoint(rng, model.parameterCount(), R("1/100"), R("99/100"));
            out.require(isGraphPreservingPoint(model, u), file + " point not graph-preserving");
            auto value = f.evaluate(u);
            out.require(value && ExtendedRational(*value) == exactValue(model, spec, u),
                        file + " disagrees at " + u.toString(model.parameters()));
        }
    }
    return out;
}

Outcome sandwich() {
    Outcome out;
    std::mt19937_64 rng(77);
    std::vector<std::pair<std::string, std::string>> const cases{{"toy_pmc.pmc", "P <= 1/2 reach target"},
                                                                 {"sample_pmc.pmc", "P <= 1/2 reach target"},
                                                                 {"knuth_yao.pmc", "P <= 1/6 reach two"},
                                                                 {"cycle3.pmc", "P <= 1/2 reach goal"},
                                                                 {"geometric.pmc", "E <= 3 reach target"},
                                                                 {"retry.pmc", "P <= 1/2 reach error"}};
    for (auto const& [file, text] : cases) {
        auto model = corpusModel(file);
        auto spec = parseSpecification(text);
        ParameterLifter lifter(model, spec);
        for (int trial = 0; trial < 10; ++trial) {
            auto r = randomSubBox(rng, model.parameterCount(), R("1/10"), R("9/10"));
            auto parent = lifter.check(r);
            for (int i = 0; i < 30; ++i) {
                auto value = exactValue(model, spec, pointIn(rng, r));
                out.require(*parent.lowerBound <= value && value <= *parent.upperBound,
                            file + " sample outside the bounds of " + r.toString(model.parameters()));
            }
            for (auto const& child : split(r, SplitStrategy::allDims())) {
                auto bounds = lifter.check(child);
                out.require(*parent.lowerBound <= *bounds.lowerBound && *bounds.upperBound <= *parent.upperBound,
                            file + " child bounds looser than parent on " + r.toString(model.parameters()));
            }
        }
    }
    return out;
}

Outcome vertexExactness() {
    Outcome out;
    std::mt19937_64 rng(5);
    std::vector<std::pair<ParametricModel, std::string>> cases;
    cases.emplace_back(corpusModel("toy_pmc.pmc"), "P <= 1/2 reach target");
    cases.emplace_back(parseModel("pmc\nparameters p q r\nstates 5 init 0\nlabel goal 3\n"
                                  "transition 0 1 p\ntransition 0 4 1-p\n"
                                  "transition 1 2 q\ntransition 1 0 1-q\n"
                                  "transition 2 3 r\ntransition 2 1 1-r\n"
                                  "transition 3 3 1\ntransition 4 4 1\n"),
                       "P <= 1/2 reach goal");
    for (auto const& [model, text] : cases) {
        auto spec = parseSpecification(text);
        ParameterLifter lifter(model, spec);
        for (int trial = 0; trial < 20; ++trial) {
            auto r = randomSubBox(rng, model.parameterCount(), R("1/10"), R("9/10"));
            auto verdict = lifter.check(r);
            auto corners = r.vertices();
            ExtendedRational best = exactValue(model, spec, corners.front());
            for (auto const& corner : corners) {
                best = std::max(best, exactValue(model, spec, corner));
            }
            out.require(*verdict.upperBound == best, "maximum " + verdict.upperBound->toString() +
                                                         " differs from vertex maximum " + best.toString() +
                                                         " on " + r.toString(model.parameters()));
        }
    }
    return out;
}

Outcome decisionProcessGoldens() {
    Outcome out;
    auto model = corpusModel("toy_pmdp.pmdp");
    auto spec = parseSpecification("P > 4/5 reach target");
    ParameterLifter lifter(model, spec);
    auto angelic = lifter.check(box("2/5<=p<=1/2, 2/5<=q<=1/2", model), Semantics::Angelic);
    out.require(angelic.status == RegionStatus::AllSat, "angelic verdict " + toString(angelic.status));

    auto demonic = lifter.check(box("4/5<=p<=9/10, 2/5<=q<=9/10", model), Semantics::Demonic);
    if (demonic.status != RegionStatus::AllSat && demonic.counterexample) {
        auto const& u = *demonic.counterexample;
        out.require(false, "demonic verdict " + toString(demonic.status) + ", counterexample " +
                               u.toString(model.parameters()) + " has minimal value " +
                               exactValue(model, spec, u, Direction::Minimize).toString());
    }
    out.require(demonic.status == RegionStatus::AllSat, "demonic verdict " + toString(demonic.status));
    return out;
}

Outcome partitionRun() {
    Outcome out;
    auto model = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto space = box("1/100<=p<=99/100, 1/100<=q<=99/100", model);
    PartitionConfig config;
    config.smtFallback = false;
    config.coverage = R("19/20");
    auto state = refine(model, spec, space, config);
    out.require(state.coverage >= R("19/20"), "coverage " + state.coverage.get_str());

    std::mt19937_64 rng(400);
    std::size_t audited = 0;
    std::size_t misclassified = 0;
    while (audited < 400 && out.pass) {
        auto u = pointIn(rng, space);
        auto inside = [&](std::vector<Region> const& boxes) {
            return std::any_of(boxes.begin(), boxes.end(), [&](Region const& b) { return b.contains(u); });
        };
        bool accepted = inside(state.accepted);
        bool rejected = inside(state.rejected);
        if (!accepted && !rejected) {
            continue;
        }
        ++audited;
        bool satisfied = evaluateSample(model, spec, u).satisfied;
        if ((accepted && !satisfied) || (rejected && satisfied)) {
            ++misclassified;
        }
    }
    out.require(misclassified == 0, std::to_string(misclassified) + " of 400 audit points misclassified");
    if (out.pass) {
        out.detail = "coverage " + state.coverage.get_str() + " after " + std::to_string(state.iterations) +
                     " iterations, 400 audit points sound";
    }
    return out;
}

Outcome expectedReward() {
    Outcome out;
    auto model = corpusModel("geometric.pmc");
    auto f = expectedRewardFunction(model, model.label("target"));
    VariablePool pool = model.parameters();
    out.require(semanticallyEqual(f, rf("1/p", pool)), "function " + f.toString(model.parameters()));
    auto verdict = ParameterLifter(model, parseSpecification("E <= 2 reach target")).check(box("1/2<=p<=3/4", model));
    out.require(*verdict.lowerBound == ExtendedRational(R("4/3")) && *verdict.upperBound == ExtendedRational(R("2")),
                "bounds [" + verdict.lowerBound->toString() + ", " + verdict.upperBound->toString() + "]");
    return out;
}

Outcome determinism() {
    Outcome out;
    auto dir = std::filesystem::temp_directory_path() / ("paramsynth_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::string csv = (dir / "boxes.csv").string();
    std::string svg = (dir / "boxes.svg").string();
    std::string die = modelPath("knuth_yao.pmc");
    std::string toy = modelPath("toy_pmc.pmc");

    auto invoke = [](std::vector<std::string> const& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return std::to_string(code) + "\n" + out.str() + err.str();
    };
    auto partition = [&] {
        std::string report = invoke({"--no-timing", "partition", "-m", die, "-s", "P > 3/20 reach two", "-r",
                                     "1/100<=p<=99/100, 1/100<=q<=99/100", "--no-fallback", "--out", csv, "--svg",
                                     svg});
        return report + slurp(csv) + slurp(svg);
    };
    auto exports = [&] {
        std::string all;
        for (std::string query : {"accepting", "rejecting", "graph"}) {
            for (std::string form : {"es", "sf"}) {
                all += invoke({"export-smt", "-m", toy, "-s", "P <= 2/5 reach target", "-r",
                               "2/5<=p<=3/5, 1/5<=q<=1/2", "--query", query, "--form", form});
            }
        }
        return all;
    };
    out.require(partition() == partition(), "partition output differs between runs");
    out.require(exports() == exports(), "export-smt output differs between runs");
    std::filesystem::remove_all(dir);
    return out;
}

std::vector<Criterion> criteria() {
    return {
        {1, "solution-function goldens across heuristics and engines", 1000, solutionFunctionGoldens},
        {2, "parameter-lifting maximum 47/60 and AllSat", 1000, liftingGolden},
        {3, "SMT goldens (sat, unsat, graph preservation)", 30000, smtGoldens},
        {4, "solution function agrees with exact linear solve", 10000, oracleAgreement},
        {5, "lifting bounds sandwich exact samples, refinement monotone", 30000, sandwich},
        {6, "lifting maximum equals vertex maximum", 5000, vertexExactness},
        {7, "decision-process goldens (angelic and demonic)", 2000, decisionProcessGoldens},
        {8, "Knuth-Yao partition to 95% coverage, sound audit", 120000, partitionRun},
        {9, "expected reward 1/p and bounds [4/3, 2]", 1000, expectedReward},
        {10, "partition and export-smt byte-identical", 60000, determinism},
    };
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.push_back(std::atoi(argv[i]));
    }
    int failures = 0;
    for (auto const& c : criteria()) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
            continue;
        }
        auto start = Clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (std::exception const& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        long ms = elapsedMs(start);
        if (outcome.pass && !outcome.skipped && ms >= c.limitMs) {
            outcome.pass = false;
            outcome.detail = "took " + std::to_string(ms) + " ms";
        }
        char const* tag = outcome.skipped ? "SKIP" : outcome.pass ? "PASS" : "FAIL";
        std::cout << tag << " [" << c.id << "] " << c.title << " (" << ms << " ms, limit " << c.limitMs << " ms)";
        if (!outcome.detail.empty()) {
            std::cout << ": " << outcome.detail;
        }
        std::cout << "\n";
        failures += outcome.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
