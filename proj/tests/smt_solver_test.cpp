#include "support.h"

#include "paramsynth/elimination/solution_function.h"
#include "paramsynth/lifting/substitution.h"
#include "paramsynth/models/check_concrete.h"
#include "paramsynth/smt/region_check.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sys/stat.h>

using namespace paramsynth;
using namespace paramsynth::smt;
using namespace paramsynth::testing;

namespace {

Region region(std::string const& text, ParametricModel const& model) {
    return parseRegion(text, model.parameters());
}

}  // namespace

TEST(SmtEncodingTest, PmcEquationSystem) {
    auto model = corpusModel("toy_pmc.pmc");
    auto queries = encodePmc(model, parseSpecification("P <= 2/5 reach target"), EncodingForm::EquationSystem);
    EXPECT_EQ(queries.base.toString(queries.variables),
              "x0 - x2 - p*x1 + p*x2 = 0 and x1 - x3 - q*x2 + q*x3 = 0 and -1 + x2 = 0 and x3 = 0");
    EXPECT_EQ(queries.violating.toString(queries.variables), "-2/5 + x0 > 0");
    EXPECT_EQ(queries.satisfying.toString(queries.variables), "-2/5 + x0 <= 0");
    EXPECT_EQ(queries.parameterCount, 2u);
}

TEST(SmtEncodingTest, PmcSolutionFunction) {
    auto model = corpusModel("toy_pmc.pmc");
    auto queries = encodePmc(model, parseSpecification("P <= 2/5 reach target"), EncodingForm::SolutionFunctions);
    EXPECT_TRUE(queries.base.isTrue());
    EXPECT_EQ(queries.violating.toString(queries.variables), "3/5 - p + p*q > 0");
    EXPECT_EQ(queries.variables.size(), 2u);
}

TEST(SmtEncodingTest, StateVariablesAvoidParameterNames) {
    auto model = parseModel("pmc\nparameters x0\nstates 2 init 0\nlabel t 1\ntransition 0 1 1\ntransition 1 1 1\n");
    auto queries = encodePmc(model, parseSpecification("P >= 1/2 reach t"), EncodingForm::EquationSystem);
    EXPECT_EQ(queries.variables.names(), (std::vector<std::string>{"x0", "x_0", "x_1"}));
}

TEST(SmtEncodingTest, PmdpDemonicAndAngelic) {
    auto model = corpusModel("toy_pmdp.pmdp");
    auto spec = parseSpecification("P <= 2/5 reach target");

    auto demonic = encodePmdp(model, spec, Semantics::Demonic, EncodingForm::EquationSystem);
    EXPECT_EQ(demonic.violating.toString(demonic.variables),
              "(x0 - x2 - p*x1 + p*x2 = 0 or x0 - x2 = 0) and x1 - x3 - q*x2 + q*x3 = 0 and -1 + x2 = 0 and "
              "x3 = 0 and -2/5 + x0 > 0");

    // Every strategy exceeds 2/5: x lies below every row, so no disjunction appears.
    auto angelic = encodePmdp(model, spec, Semantics::Angelic, EncodingForm::EquationSystem);
    EXPECT_EQ(angelic.violating.toString(angelic.variables),
              "-1 + x0 <= 0 and x0 - x2 - p*x1 + p*x2 <= 0 and x0 - x2 <= 0 and -1 + x1 <= 0 and "
              "x1 - x3 - q*x2 + q*x3 <= 0 and -1 + x2 = 0 and x3 = 0 and -2/5 + x0 > 0");

    // The beta strategy reaches the target surely, so "some strategy exceeds 2/5" folds to true.
    auto demonicSf = encodePmdp(model, spec, Semantics::Demonic, EncodingForm::SolutionFunctions);
    EXPECT_TRUE(demonicSf.violating.isTrue());
    auto angelicSf = encodePmdp(model, spec, Semantics::Angelic, EncodingForm::SolutionFunctions);
    EXPECT_EQ(angelicSf.violating.toString(angelicSf.variables), "3/5 - p + p*q > 0");
    EXPECT_EQ(angelicSf.satisfying.toString(angelicSf.variables), "3/5 - p + p*q <= 0");
}

TEST(SmtEncodingTest, Errors) {
    auto pmdp = corpusModel("toy_pmdp.pmdp");
    auto spec = parseSpecification("P <= 2/5 reach target");
    EXPECT_THROW(encodePmdp(pmdp, spec, Semantics::Demonic, EncodingForm::SolutionFunctions, 1), StrategyCapExceeded);
    EXPECT_NO_THROW(encodePmdp(pmdp, spec, Semantics::Demonic, EncodingForm::SolutionFunctions, 2));
    EXPECT_THROW(encodePmdp(pmdp, parseSpecification("P <= 1/2 within 3 reach target"), Semantics::Demonic,
                            EncodingForm::EquationSystem),
                 UnsupportedSpecification);
    auto pmc = corpusModel("toy_pmc.pmc");
    EXPECT_THROW(encodePmc(pmc, parseSpecification("P <= 1/2 within 3 reach target"), EncodingForm::EquationSystem),
                 UnsupportedSpecification);
    auto bounded = encodePmc(pmc, parseSpecification("P <= 1/2 within 1 reach target"), EncodingForm::SolutionFunctions);
    EXPECT_EQ(bounded.violating.toString(bounded.variables), "1/2 - p > 0");
}

TEST(SmtEncodingTest, DivergingRewardIsInfinite) {
    auto model = parseModel(
        "pmc\nparameters p\nstates 3 init 0\nlabel t 1\n"
        "transition 0 1 p\ntransition 0 2 1-p\ntransition 1 1 1\ntransition 2 2 1\nreward 0 1\n");
    for (auto form : {EncodingForm::EquationSystem, EncodingForm::SolutionFunctions}) {
        auto upper = encodePmc(model, parseSpecification("E <= 5 reach t"), form);
        EXPECT_TRUE(upper.violating.isTrue());
        EXPECT_TRUE(upper.satisfying.isFalse());
        auto lower = encodePmc(model, parseSpecification("E > 5 reach t"), form);
        EXPECT_TRUE(lower.violating.isFalse());
    }
}

TEST(SmtValueParsingTest, Literals) {
    auto values = parseValueAnswer("((p (/ 1.0 2.0)) (q 0.3) (|r s| (- (/ 3 4))) (t 2.0))");
    ASSERT_TRUE(values.has_value());
    ASSERT_EQ(values->size(), 4u);
    EXPECT_EQ((*values)[0], std::make_pair(std::string("p"), R("1/2")));
    EXPECT_EQ((*values)[1].second, R("3/10"));
    EXPECT_EQ((*values)[2], std::make_pair(std::string("r s"), R("-3/4")));
    EXPECT_EQ((*values)[3].second, R("2"));
    EXPECT_FALSE(parseValueAnswer("((p (root-obj (+ (^ x 2) (- 2)) 1)))").has_value());
    EXPECT_THROW(parseValueAnswer("((p 1.0)"), ProtocolParseError);
    EXPECT_THROW(parseValueAnswer("sat"), ProtocolParseError);
    EXPECT_THROW(parseValueAnswer("((p))"), ProtocolParseError);
}

TEST(SmtSessionTest, SpawnFailure) {
    SolverOptions options;
    options.command = "/nonexistent/solver-binary";
    EXPECT_THROW(SolverSession session(options), SolverSpawnFailure);
}

TEST(SmtSessionTest, TimeoutRestartsTheSolver) {
    std::string script = ::testing::TempDir() + "paramsynth_stuck_solver.sh";
    {
        std::ofstream out(script);
        out << "#!/bin/sh\n"
               "while read line; do\n"
               "  case \"$line\" in\n"
               "    *echo*) echo paramsynth-ready ;;\n"
               "    *check-sat*) sleep 30 ;;\n"
               "  esac\n"
               "done\n";
    }
    chmod(script.c_str(), 0755);
    SolverOptions options;
    options.command = script;
    options.timeout = std::chrono::milliseconds(200);
    SolverSession session(options);
    VariablePool pool({"p"});
    session.declare(pool);
    session.push();
    auto result = session.check(pool, 1);
    EXPECT_TRUE(result.timedOut);
    EXPECT_EQ(result.status, SatStatus::Unknown);
    EXPECT_EQ(session.depth(), 0u);
    std::remove(script.c_str());
}

TEST(SmtSessionTest, PushPopBalance) {
    REQUIRE_SOLVER();
    SolverSession session;
    VariablePool pool({"p"});
    session.declare(pool);
    session.assertFormula(compare(Polynomial::variable(0), Comparison::Greater, Polynomial(R("1/2"))), pool);
    session.push();
    session.assertFormula(compare(Polynomial::variable(0), Comparison::Less, Polynomial(R("1/4"))), pool);
    EXPECT_EQ(session.check(pool, 1).status, SatStatus::Unsat);
    session.pop();
    auto sat = session.check(pool, 1);
    ASSERT_EQ(sat.status, SatStatus::Sat);
    ASSERT_TRUE(sat.model.has_value());
    EXPECT_GT(sat.model->at(0), R("1/2"));
    EXPECT_EQ(session.depth(), 0u);
    EXPECT_THROW(session.pop(), InvalidArgument);
}

TEST(SmtRegionTest, TwoRegionsInOneSession) {
    REQUIRE_SOLVER();
    auto model = corpusModel("toy_pmc.pmc");
    auto spec = parseSpecification("P <= 2/5 reach target");
    SmtRegionChecker checker(model, spec);
    auto r1 = region("2/5<=p<=3/5, 1/5<=q<=1/2", model);
    auto r2 = region("4/5<=p<=9/10, 1/10<=q<=1/5", model);
    auto results = checker.refute({r1, r2}, Refute::Accepting);
    ASSERT_EQ(results.size(), 2u);
    ASSERT_EQ(results[0].status, SatStatus::Sat);
    ASSERT_TRUE(results[0].model.has_value());
    EXPECT_TRUE(r1.contains(*results[0].model));
    EXPECT_TRUE(checker.confirms(*results[0].model, Refute::Accepting));
    EXPECT_EQ(results[1].status, SatStatus::Unsat);
    EXPECT_TRUE(checker.refute({}, Refute::Accepting).empty());
    EXPECT_EQ(checker.session().depth(), 0u);

    EXPECT_EQ(checker.check(r1).status, RegionStatus::AllViolate);
    EXPECT_EQ(checker.check(r2).status, RegionStatus::AllSat);

    SmtRegionChecker certain(model, parseSpecification("P <= 1 reach target"));
    EXPECT_EQ(certain.check(region("1/10<=p<=9/10, 1/10<=q<=9/10", model)).status, RegionStatus::AllSat);
}

TEST(SmtRegionTest, ToyPmdpSemantics) {
    REQUIRE_SOLVER();
    auto model = corpusModel("toy_pmdp.pmdp");
    auto spec = parseSpecification("P > 4/5 reach target");
    auto r = region("2/5<=p<=1/2, 2/5<=q<=1/2", model);
    for (auto form : {EncodingForm::EquationSystem, EncodingForm::SolutionFunctions}) {
        SmtCheckOptions angelic;
        angelic.semantics = Semantics::Angelic;
        angelic.form = form;
        EXPECT_EQ(SmtRegionChecker(model, spec, angelic).check(r).status, RegionStatus::AllSat);

        SmtCheckOptions demonic;
        demonic.form = form;
        SmtRegionChecker checker(model, spec, demonic);
        auto verdict = checker.check(r);
        EXPECT_NE(verdict.status, RegionStatus::AllSat);
        ASSERT_TRUE(verdict.counterexample.has_value());
        EXPECT_TRUE(checker.confirms(*verdict.counterexample, Refute::Accepting));

        // Strategy alpha gives 1 - p + p*q, which is 23/50 at (9/10, 2/5).
        auto upper = region("4/5<=p<=9/10, 2/5<=q<=9/10", model);
        auto upperVerdict = checker.check(upper);
        EXPECT_NE(upperVerdict.status, RegionStatus::AllSat);
        ASSERT_TRUE(upperVerdict.counterexample.has_value());
        EXPECT_TRUE(checker.confirms(*upperVerdict.counterexample, Refute::Accepting));
    }
}

TEST(SmtRegionTest, EquationSystemAndSolutionFunctionAgree) {
    REQUIRE_SOLVER();
    struct Case {
        std::string file, spec, region;
    };
    std::vector<Case> cases{
        {"toy_pmc.pmc", "P <= 2/5 reach target", "1/10<=p<=1/5, 1/10<=q<=9/10"},
        {"toy_pmc.pmc", "P >= 1/2 reach target", "1/10<=p<=3/5, 1/10<=q<=9/10"},
        {"sample_pmc.pmc", "P <= 4/5 reach target", "1/10<=p<=4/5, 2/5<=q<=7/10"},
        {"knuth_yao.pmc", "P > 3/20 reach two", "1/2<=p<=3/5, 1/2<=q<=3/5"},
        {"knuth_yao.pmc", "P < 1/5 reach one", "1/4<=p<=1/2, 1/4<=q<=3/4"},
        {"geometric.pmc", "E <= 3 reach target", "1/2<=p<=3/4"},
    };
    for (auto const& c : cases) {
        auto model = corpusModel(c.file);
        auto spec = parseSpecification(c.spec);
        auto r = region(c.region, model);
        SmtCheckOptions es;
        SmtCheckOptions sf;
        sf.form = EncodingForm::SolutionFunctions;
        auto a = SmtRegionChecker(model, spec, es).check(r);
        auto b = SmtRegionChecker(model, spec, sf).check(r);
        EXPECT_EQ(a.status, b.status) << c.file << " " << c.spec;
    }
}

TEST(SmtRegionTest, VerdictMatchesDenseSampling) {
    REQUIRE_SOLVER();
    auto model = corpusModel("knuth_yao.pmc");
    auto spec = parseSpecification("P > 3/20 reach two");
    auto r = region("1/2<=p<=3/5, 1/2<=q<=3/5", model);
    SmtCheckOptions options;
    options.form = EncodingForm::SolutionFunctions;
    SmtRegionChecker checker(model, spec, options);
    auto verdict = checker.check(r);
    auto f = specificationFunction(model, spec);
    std::size_t satisfied = 0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            Instantiation u(std::vector<Rational>{R("1/2") + Rational(i, 90), R("1/2") + Rational(j, 90)});
            if (compare(*f.evaluate(u), spec.relation, spec.threshold)) {
                ++satisfied;
            }
        }
    }
    if (verdict.status == RegionStatus::AllSat) {
        EXPECT_EQ(satisfied, 100u);
    } else if (verdict.status == RegionStatus::AllViolate) {
        EXPECT_EQ(satisfied, 0u);
    } else {
        ASSERT_TRUE(verdict.counterexample.has_value());
        EXPECT_LT(satisfied, 100u);
    }
}

TEST(SmtRegionTest, SolverDecidesGraphPreservation) {
    REQUIRE_SOLVER();
    auto model = parseModel(
        "pmc\nparameters p\nstates 3 init 0\nlabel t 1\n"
        "transition 0 1 p^2\ntransition 0 2 1-p^2\ntransition 1 1 1\ntransition 2 2 1\n");
    auto spec = parseSpecification("P <= 1/2 reach t");
    SmtRegionChecker checker(model, spec);
    EXPECT_THROW(checker.check(region("0<=p<=1/2", model)), RegionNotGraphPreserving);
    EXPECT_EQ(checker.check(region("1/10<=p<=1/2", model)).status, RegionStatus::AllSat);
    EXPECT_EQ(checker.check(region("3/4<=p<=9/10", model)).status, RegionStatus::AllViolate);
    EXPECT_EQ(checker.session().depth(), 0u);
}

TEST(SmtRegionTest, SatWitnessesRevalidate) {
    REQUIRE_SOLVER();
    std::mt19937_64 rng(21);
    auto model = corpusModel("toy_pmdp.pmdp");
    auto spec = parseSpecification("P >= 7/10 reach target");
    for (auto semantics : {Semantics::Demonic, Semantics::Angelic}) {
        SmtCheckOptions options;
        options.semantics = semantics;
        SmtRegionChecker checker(model, spec, options);
        for (int trial = 0; trial < 8; ++trial) {
            auto a = randomPoint(rng, 2, R("1/10"), R("9/10"));
            auto b = randomPoint(rng, 2, R("1/10"), R("9/10"));
            std::vector<Interval> box;
            for (VariableId v = 0; v < 2; ++v) {
                box.push_back({std::min(a.at(v), b.at(v)), std::max(a.at(v), b.at(v))});
            }
            Region r(box);
            for (auto which : {Refute::Accepting, Refute::Rejecting}) {
                auto result = checker.refute({r}, which).front();
                if (result.status == SatStatus::Sat && result.model) {
                    EXPECT_TRUE(r.contains(*result.model));
                    // The every-strategy queries are exact, so their witnesses always confirm.
                    bool exact = (semantics == Semantics::Demonic) == (which == Refute::Rejecting);
                    if (exact) {
                        EXPECT_TRUE(checker.confirms(*result.model, which));
                    }
                }
            }
        }
    }
}

TEST(SmtRegionTest, ConsistentWithLifting) {
    REQUIRE_SOLVER();
    std::mt19937_64 rng(42);
    struct Case {
        std::string file, spec;
    };
    std::vector<Case> cases{{"toy_pmc.pmc", "P <= 3/5 reach target"},
                            {"sample_pmc.pmc", "P >= 1/2 reach target"},
                            {"toy_pmdp.pmdp", "P > 4/5 reach target"},
                            {"toy_pmdp.pmdp", "P <= 7/10 reach target"}};
    for (auto const& c : cases) {
        auto model = corpusModel(c.file);
        auto spec = parseSpecification(c.spec);
        ParameterLifter lifter(model, spec);
        for (auto semantics : {Semantics::Demonic, Semantics::Angelic}) {
            SmtCheckOptions options;
            options.semantics = semantics;
            SmtRegionChecker checker(model, spec, options);
            for (int trial = 0; trial < 6; ++trial) {
                auto a = randomPoint(rng, 2, R("1/10"), R("9/10"));
                auto b = randomPoint(rng, 2, R("1/10"), R("9/10"));
                std::vector<Interval> box;
                for (VariableId v = 0; v < 2; ++v) {
                    box.push_back({std::min(a.at(v), b.at(v)), std::max(a.at(v), b.at(v))});
                }
                Region r(box);
                auto lifted = lifter.check(r, semantics).status;
                auto solved = checker.check(r).status;
                if (lifted != RegionStatus::Unknown) {
                    EXPECT_EQ(solved, lifted) << c.file << " " << c.spec << " " << toString(semantics) << " "
                                              << r.toString(model.parameters());
                }
            }
        }
    }
}

TEST(SmtRegionTest, WitnessSide) {
    REQUIRE_SOLVER();
    auto model = corpusModel("toy_pmc.pmc");
    auto s = parseSpecification("P <= 7/10 reach target");
    SmtRegionChecker checker(model, s);
    auto r = region("1/10<=p<=9/10, 1/10<=q<=9/10", model);
    auto violating = checker.check(r, Refute::Accepting);
    auto satisfying = checker.check(r, Refute::Rejecting);
    EXPECT_EQ(violating.status, RegionStatus::Unknown);
    EXPECT_EQ(satisfying.status, RegionStatus::Unknown);
    ASSERT_TRUE(violating.counterexample && satisfying.counterexample);
    EXPECT_TRUE(checker.confirms(*violating.counterexample, Refute::Accepting));
    EXPECT_TRUE(checker.confirms(*satisfying.counterexample, Refute::Rejecting));
    EXPECT_EQ(checker.session().depth(), 0u);
}
