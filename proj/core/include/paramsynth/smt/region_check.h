#pragma once

#include "paramsynth/regions/verdict.h"
#include "paramsynth/smt/encodings.h"
#include "paramsynth/smt/solver_session.h"

#include <memory>

namespace paramsynth::smt {

struct SmtCheckOptions {
    EncodingForm form = EncodingForm::EquationSystem;
    Semantics semantics = Semantics::Demonic;
    std::size_t strategyCap = 64;
    SolverOptions solver;
};

// Region verification against one solver process. The model encoding is asserted once, guarded
// by the Boolean selectors `accepting` and `rejecting`; each region query runs in its own
// backtrack point.
class SmtRegionChecker {
public:
    SmtRegionChecker(ParametricModel const& model, Specification const& spec, SmtCheckOptions options = {});

    RegionQueries const& queries() const { return queries_; }
    SolverSession& session() { return *session_; }

    // Full verification of a region: graph preservation, then the refutation queries with
    // `first` asked first; its witness, re-validated by exact model checking, is reported.
    RegionVerdict check(Region const& region, Refute first = Refute::Accepting);

    // Raw refutation queries, one per region, in order.
    std::vector<CheckResult> refute(std::vector<Region> const& regions, Refute which);

    // Whether a sat witness really refutes: for Accepting, the point violates the specification
    // under the semantics; for Rejecting, it satisfies it.
    bool confirms(Instantiation const& point, Refute which) const;

private:
    CheckResult query(Region const& region, Refute which);

    ParametricModel const& model_;
    Specification spec_;
    SmtCheckOptions options_;
    RegionQueries queries_;
    std::unique_ptr<SolverSession> session_;
};

}  // namespace paramsynth::smt
