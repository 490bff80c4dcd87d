#include "paramsynth/smt/region_check.h"

#include "paramsynth/models/check_concrete.h"
#include "paramsynth/regions/graph_preservation.h"

namespace paramsynth::smt {

namespace {

char const* selector(Refute which) { return which == Refute::Accepting ? "accepting" : "rejecting"; }

}  // namespace

SmtRegionChecker::SmtRegionChecker(ParametricModel const& model, Specification const& spec, SmtCheckOptions options)
    : model_(model), spec_(spec), options_(std::move(options)) {
    queries_ = model.kind() == ModelKind::Pmc ? encodePmc(model, spec, options_.form)
                                              : encodePmdp(model, spec, options_.semantics, options_.form,
                                                           options_.strategyCap);
    session_ = std::make_unique<SolverSession>(options_.solver);
    session_->declare(queries_.variables, {"accepting", "rejecting"});
    session_->assertFormula(queries_.base, queries_.variables);
    auto accepting = Formula::boolVar("accepting");
    auto rejecting = Formula::boolVar("rejecting");
    session_->assertFormula(!accepting || queries_.violating, queries_.variables);
    session_->assertFormula(!rejecting || queries_.satisfying, queries_.variables);
}

CheckResult SmtRegionChecker::query(Region const& region, Refute which) {
    session_->push();
    session_->assertFormula(Formula::boolVar(selector(which)) && regionFormula(region), queries_.variables);
    CheckResult result = session_->check(queries_.variables, queries_.parameterCount);
    if (!result.timedOut) {
        session_->pop();
    }
    return result;
}

std::vector<CheckResult> SmtRegionChecker::refute(std::vector<Region> const& regions, Refute which) {
    std::vector<CheckResult> results;
    results.reserve(regions.size());
    for (auto const& region : regions) {
        results.push_back(query(region, which));
    }
    return results;
}

bool SmtRegionChecker::confirms(Instantiation const& point, Refute which) const {
    ConcreteModel concrete = instantiate(model_, point);
    if (!concrete.wellDefined()) {
        return false;
    }
    // The extremal strategy that decides the claim: the worst one for a demonic violation or
    // satisfaction, the best one for the angelic counterparts.
    bool worst = options_.semantics == Semantics::Demonic;
    bool maximize = spec_.isUpperBound() == worst;
    auto value = checkConcrete(concrete, spec_, maximize ? Direction::Maximize : Direction::Minimize).value;
    return satisfies(value, spec_) == (which == Refute::Rejecting);
}

RegionVerdict SmtRegionChecker::check(Region const& region, Refute first) {
    RegionVerdict verdict;
    auto preservation = checkGraphPreserving(model_, region);
    if (preservation.status == GraphPreservation::Status::NotPreserving) {
        throw RegionNotGraphPreserving("region " + region.toString(model_.parameters()) +
                                       " is not graph-preserving, witness " +
                                       preservation.witness->toString(model_.parameters()));
    }
    if (preservation.status == GraphPreservation::Status::NeedsSolver) {
        CheckResult graph = session_->solve(*preservation.formula);
        if (graph.status == SatStatus::Sat) {
            throw RegionNotGraphPreserving("region " + region.toString(model_.parameters()) +
                                           " is not graph-preserving" +
                                           (graph.model ? ", witness " + graph.model->toString(model_.parameters())
                                                        : std::string()));
        }
        if (graph.status == SatStatus::Unknown) {
            verdict.note = "graph preservation undecided: " + graph.reason;
            return verdict;
        }
    }

    std::vector<std::string> notes;
    Refute second = first == Refute::Accepting ? Refute::Rejecting : Refute::Accepting;
    for (Refute which : {first, second}) {
        std::string name = selector(which);
        CheckResult result = query(region, which);
        if (result.status == SatStatus::Unsat) {
            verdict.status = which == Refute::Accepting ? RegionStatus::AllSat : RegionStatus::AllViolate;
            return verdict;
        }
        if (result.status == SatStatus::Unknown) {
            notes.push_back(name + " query: " + (result.reason.empty() ? "unknown" : result.reason));
        } else if (which != first) {
            continue;
        } else if (!result.model) {
            notes.push_back(name + " query refuted without a rational witness");
        } else if (region.contains(*result.model) && confirms(*result.model, which)) {
            verdict.counterexample = result.model;
        } else {
            notes.push_back(name + " query witness " + result.model->toString(model_.parameters()) +
                            " did not re-validate");
        }
    }
    for (auto const& note : notes) {
        verdict.note += (verdict.note.empty() ? "" : "; ") + note;
    }
    return verdict;
}

}  // namespace paramsynth::smt
