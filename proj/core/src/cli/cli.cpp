#include "paramsynth/cli/cli.h"

#include "paramsynth/elimination/solution_function.h"
#include "paramsynth/errors.h"
#include "paramsynth/lifting/substitution.h"
#include "paramsynth/models/model_parser.h"
#include "paramsynth/partition/partition.h"
#include "paramsynth/smt/region_check.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace paramsynth::cli {

void RunReport::add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
}

std::string const* RunReport::find(std::string const& key) const {
    for (auto const& [k, v] : fields) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

std::string RunReport::keyValue(bool timing) const {
    std::string text = "command=" + command + "\n";
    for (auto const& [key, value] : fields) {
        text += key + "=" + value + "\n";
    }
    if (timing) {
        text += "wall_ms=" + std::to_string(wall.count()) + "\n";
    }
    return text;
}

std::string RunReport::json(bool timing) const {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["exit_code"] = exitCode;
    nlohmann::ordered_json result = nlohmann::ordered_json::object();
    for (auto const& [key, value] : fields) {
        result[key] = value;
    }
    doc["result"] = std::move(result);
    if (timing) {
        doc["wall_ms"] = wall.count();
    }
    return doc.dump(2) + "\n";
}

namespace {

struct Inputs {
    std::string modelPath;
    std::string spec;
    std::string semantics = "demonic";
};

Semantics semanticsOf(std::string const& text) {
    return text == "angelic" ? Semantics::Angelic : Semantics::Demonic;
}

std::string writeFile(std::string const& path, std::string const& contents) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
    file << contents;
    return path;
}

std::string join(std::vector<std::string> const& args) {
    std::string text;
    for (auto const& arg : args) {
        text += (text.empty() ? "" : " ") + arg;
    }
    return text;
}

void addFunctionStats(RunReport& report, RationalFunction const& f) {
    report.add("numerator_terms", std::to_string(f.numerator().termCount()));
    report.add("denominator_terms", std::to_string(f.denominator().termCount()));
    report.add("numerator_degree", std::to_string(f.numerator().totalDegree()));
    report.add("denominator_degree", std::to_string(f.denominator().totalDegree()));
}

void addVerdict(RunReport& report, RegionVerdict const& verdict, VariablePool const& parameters) {
    report.add("status", toString(verdict.status));
    if (verdict.lowerBound) {
        report.add("lower_bound", verdict.lowerBound->toString());
    }
    if (verdict.upperBound) {
        report.add("upper_bound", verdict.upperBound->toString());
    }
    if (verdict.counterexample) {
        report.add("counterexample", verdict.counterexample->toString(parameters));
    }
    if (!verdict.note.empty()) {
        report.add("note", verdict.note);
    }
    report.exitCode = verdict.status == RegionStatus::AllSat       ? Success
                      : verdict.status == RegionStatus::AllViolate ? Violated
                                                                   : Inconclusive;
}

smt::SolverOptions solverOptions(unsigned timeoutMs) {
    smt::SolverOptions options;
    options.timeout = std::chrono::milliseconds(timeoutMs);
    return options;
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parameter synthesis for parametric Markov models", "paramsynth"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    bool noTiming = false;
    app.add_flag("--json", json, "Print the report as JSON");
    app.add_flag("--no-timing", noTiming, "Leave the wall time out of the report");

    Inputs in;
    auto addInputs = [&in](CLI::App* cmd) {
        cmd->add_option("-m,--model", in.modelPath, "Model file")->required()->check(CLI::ExistingFile);
        cmd->add_option("-s,--spec", in.spec, "Specification, e.g. \"P <= 2/5 reach target\"")->required();
        cmd->add_option("--semantics", in.semantics, "Nondeterminism quantifier for pMDPs")
            ->check(CLI::IsMember({"demonic", "angelic"}));
    };

    std::string point;
    auto* checkInstance = app.add_subcommand("check-instance", "Model check one parameter instantiation");
    addInputs(checkInstance);
    checkInstance->add_option("-p,--point", point, "Instantiation, e.g. \"p=2/5, q=7/10\"")->required();

    std::string eliminationEngine = "state-elimination";
    std::string order = "forward";
    auto* solve = app.add_subcommand("solve-function", "Compute the solution function of a pMC");
    addInputs(solve);
    solve->add_option("--engine", eliminationEngine, "state-elimination, gaussian or set-based");
    solve->add_option("--order", order, "Elimination order heuristic");

    std::string regionText;
    std::string engine = "lifting";
    unsigned timeoutMs = 10000;
    auto* verify = app.add_subcommand("verify-region", "Decide a parameter region");
    addInputs(verify);
    verify->add_option("-r,--region", regionText, "Region, e.g. \"1/10<=p<=4/5, 2/5<=q<=7/10\"")->required();
    verify->add_option("--engine", engine, "lifting, smt-es or smt-sf")
        ->check(CLI::IsMember({"lifting", "smt-es", "smt-sf"}));
    verify->add_option("--timeout", timeoutMs, "Solver timeout per query in milliseconds");

    std::string coverage = "0.95";
    std::string splitter = "quads";
    std::size_t grid = 4;
    std::optional<unsigned> budgetMs;
    std::size_t iterationCap = 100000;
    bool noFallback = false;
    std::string csvPath;
    std::string svgPath;
    auto* partition = app.add_subcommand("partition", "Partition a parameter space up to a coverage target");
    addInputs(partition);
    partition->add_option("-r,--region", regionText, "Parameter space")->required();
    partition->add_option("--coverage", coverage, "Coverage target in (0,1]");
    partition->add_option("--engine", engine, "lifting, smt-es or smt-sf")
        ->check(CLI::IsMember({"lifting", "smt-es", "smt-sf"}));
    partition->add_option("--splitter", splitter, "quads or rectangles")
        ->check(CLI::IsMember({"quads", "rectangles"}));
    partition->add_option("--grid", grid, "Initial samples per dimension");
    partition->add_option("--budget", budgetMs, "Wall-clock budget in milliseconds");
    partition->add_option("--iterations", iterationCap, "Iteration cap");
    partition->add_flag("--no-fallback", noFallback, "Never ask the solver about small undecided boxes");
    partition->add_option("--timeout", timeoutMs, "Solver timeout per query in milliseconds");
    partition->add_option("--out", csvPath, "CSV file for the boxes");
    partition->add_option("--svg", svgPath, "SVG drawing (two parameters only)");

    std::string query = "accepting";
    std::string form = "es";
    std::string scriptPath;
    auto* exportSmt = app.add_subcommand("export-smt", "Print an SMT-LIB refutation query for a region");
    addInputs(exportSmt);
    exportSmt->add_option("-r,--region", regionText, "Region")->required();
    exportSmt->add_option("--query", query, "accepting, rejecting or graph")
        ->check(CLI::IsMember({"accepting", "rejecting", "graph"}));
    exportSmt->add_option("--form", form, "es (equation system) or sf (solution function)")
        ->check(CLI::IsMember({"es", "sf"}));
    exportSmt->add_option("--out", scriptPath, "Write the script here instead of standard output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Success : UsageError;
    }

    auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.command = join(args);
    bool scriptOnly = false;
    try {
        ParametricModel model = loadModel(in.modelPath);
        Specification spec = parseSpecification(in.spec);
        Semantics semantics = semanticsOf(in.semantics);
        auto const& parameters = model.parameters();
        report.add("model", in.modelPath);
        report.add("spec", spec.toString());

        if (*checkInstance) {
            Instantiation u = parseInstantiation(point, parameters);
            Sample sample = evaluateSample(model, spec, u, semantics);
            report.add("point", u.toString(parameters));
            report.add("value", sample.value.toString());
            report.add("verdict", sample.satisfied ? "satisfy" : "violate");
            report.exitCode = sample.satisfied ? Success : Violated;
        } else if (*solve) {
            EliminationOptions options;
            options.engine = parseEliminationEngine(eliminationEngine);
            options.order = parseEliminationOrder(order);
            report.add("engine", toString(options.engine));
            report.add("order", toString(options.order));
            report.add("states", std::to_string(model.stateCount()));
            RationalFunction f;
            if (spec.kind == SpecKind::ReachProb) {
                EliminationDiagnostics diagnostics;
                f = solutionFunction(model, targetStates(model, spec), options, &diagnostics);
                report.add("eliminated_states", std::to_string(diagnostics.eliminatedStates));
                if (options.engine == EliminationEngine::SetBased) {
                    report.add("set_based_iterations", std::to_string(diagnostics.setBasedIterations));
                    report.add("set_based_fallback", diagnostics.setBasedFallback ? "true" : "false");
                }
            } else {
                f = specificationFunction(model, spec, options);
            }
            report.add("function", f.toString(parameters));
            addFunctionStats(report, f);
        } else if (*verify) {
            Region region = parseRegion(regionText, parameters);
            report.add("engine", engine);
            report.add("region", region.toString(parameters));
            if (engine == "lifting") {
                addVerdict(report, ParameterLifter(model, spec).check(region, semantics), parameters);
            } else {
                smt::SmtCheckOptions options;
                options.form = engine == "smt-es" ? smt::EncodingForm::EquationSystem
                                                  : smt::EncodingForm::SolutionFunctions;
                options.semantics = semantics;
                options.solver = solverOptions(timeoutMs);
                smt::SmtRegionChecker checker(model, spec, options);
                addVerdict(report, checker.check(region), parameters);
                report.add("solver", checker.session().command());
            }
        } else if (*partition) {
            Region space = parseRegion(regionText, parameters);
            PartitionConfig config;
            config.coverage = parseRational(coverage);
            config.engine = parsePartitionEngine(engine);
            config.splitter = parseSplitter(splitter);
            config.grid = grid;
            config.semantics = semantics;
            if (budgetMs) {
                config.budget = std::chrono::milliseconds(*budgetMs);
            }
            config.iterationCap = iterationCap;
            config.smtFallback = !noFallback;
            config.solver = solverOptions(timeoutMs);
            PartitionState state = refine(model, spec, space, config);
            report.add("engine", toString(config.engine));
            report.add("splitter", toString(config.splitter));
            report.add("space", space.toString(parameters));
            report.add("coverage", state.coverage.get_str());
            std::ostringstream decimal;
            decimal.precision(6);
            decimal << std::fixed << state.coverage.get_d();
            report.add("coverage_decimal", decimal.str());
            report.add("accepted_boxes", std::to_string(state.accepted.size()));
            report.add("rejected_boxes", std::to_string(state.rejected.size()));
            report.add("unknown_boxes", std::to_string(state.queue.size()));
            report.add("samples", std::to_string(state.samples.size()));
            report.add("iterations", std::to_string(state.iterations));
            report.add("engine_calls", std::to_string(state.statistics.engineCalls));
            report.add("solver_calls", std::to_string(state.statistics.solverCalls));
            report.add("counterexamples", std::to_string(state.statistics.counterexamples));
            report.add("splits", std::to_string(state.statistics.splits));
            report.add("budget_exhausted", state.budgetExhausted ? "true" : "false");
            if (!state.note.empty()) {
                report.add("note", state.note);
            }
            if (!csvPath.empty()) {
                report.add("csv", writeFile(csvPath, exportCsv(state, parameters)));
            }
            if (!svgPath.empty()) {
                report.add("svg", writeFile(svgPath, exportSvg(state)));
            }
            report.exitCode = state.coverage >= config.coverage ? Success : Inconclusive;
        } else if (*exportSmt) {
            Region region = parseRegion(regionText, parameters);
            std::string script;
            if (query == "graph") {
                script = smt::encodeGraphPreservation(model, region).toScript();
            } else {
                auto encoding = form == "es" ? smt::EncodingForm::EquationSystem : smt::EncodingForm::SolutionFunctions;
                auto queries = model.kind() == ModelKind::Pmc ? smt::encodePmc(model, spec, encoding)
                                                              : smt::encodePmdp(model, spec, semantics, encoding);
                script = queries.problem(query == "accepting" ? queries.violating : queries.satisfying, region)
                             .toScript();
            }
            if (scriptPath.empty()) {
                out << script;
                scriptOnly = true;
            } else {
                report.add("query", query);
                report.add("script", writeFile(scriptPath, script));
            }
        }
    } catch (SolverSpawnFailure const& e) {
        err << "error: " << e.what() << "\n";
        return Inconclusive;
    } catch (ProtocolParseError const& e) {
        err << "error: " << e.what() << "\n";
        return Inconclusive;
    } catch (Error const& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    }
    if (scriptOnly) {
        return Success;
    }
    report.wall = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out << (json ? report.json(!noTiming) : report.keyValue(!noTiming));
    return report.exitCode;
}

}  // namespace paramsynth::cli
