#include <doctest.h>

#include "ecmc/epistemic.hpp"
#include "ecmc/errors.hpp"

#include "test_util.hpp"

using namespace ecmc;

TEST_CASE("team is sorted and deduplicated") {
    SignaturePtr sig = testutil::circuit_signature();
    StructuralFunctionSet fns = testutil::circuit_functions(sig);
    EpistemicCausalModel m(sig, fns,
                           {Valuation({0, 1, 0}), Valuation({0, 0, 0}),
                            Valuation({0, 1, 0})});
    REQUIRE(m.team().size() == 2);
    CHECK(m.team()[0] == Valuation({0, 0, 0}));
    CHECK(m.team()[1] == Valuation({0, 1, 0}));
    CHECK(m == testutil::circuit_model());
    CHECK(m.contains(Valuation({0, 1, 0})));
    CHECK_FALSE(m.contains(Valuation({1, 1, 1})));
}

TEST_CASE("team members must comply and the team must be nonempty") {
    SignaturePtr sig = testutil::circuit_signature();
    StructuralFunctionSet fns = testutil::circuit_functions(sig);
    CHECK_THROWS_AS(EpistemicCausalModel(sig, fns, {}), ValidationError);
    CHECK_THROWS_AS(EpistemicCausalModel(sig, fns, {Valuation({1, 1, 0})}),
                    ValidationError);
    CHECK_THROWS_AS(EpistemicCausalModel(sig, fns, {Valuation({0, 0})}),
                    ValidationError);
    CHECK_THROWS_AS(EpistemicCausalModel(sig, fns, {Valuation({0, 0, 9})}),
                    ValidationError);
}

TEST_CASE("pointed model requires the actual state to be in the team") {
    EpistemicCausalModel m = testutil::circuit_model();
    PointedModel p(m, testutil::circuit_a2());
    CHECK(p.actual() == Valuation({0, 1, 0}));
    CHECK_THROWS_AS(PointedModel(m, Valuation({1, 1, 1})), ValidationError);
}

TEST_CASE("team intervention on the circuit forces the lamp on where both switches close") {
    EpistemicCausalModel m = testutil::circuit_model();
    auto b1 = InterventionAssignment::checked({{0, 1}}, m.signature());
    EpistemicCausalModel after = intervene_team(m, b1);
    REQUIRE(after.team().size() == 2);
    CHECK(after.team()[0] == Valuation({1, 0, 0}));
    CHECK(after.team()[1] == Valuation({1, 1, 1}));
}

TEST_CASE("team intervention merges members with equal images") {
    auto sig = std::make_shared<const Signature>(
        std::vector<std::string>{"U"}, std::vector<std::string>{"V"},
        std::map<std::string, std::vector<std::string>>{{"U", {"0", "1"}},
                                                        {"V", {"0", "1"}}});
    // V copies U; its table domain is (U) alone.
    StructuralFunctionSet fns(sig, {FunctionTable{{0, 1}}});
    EpistemicCausalModel m(sig, fns, {Valuation({0, 0}), Valuation({1, 1})});
    auto u0 = InterventionAssignment::checked({{0, 0}}, *sig);
    EpistemicCausalModel after = intervene_team(m, u0);
    REQUIRE(after.team().size() == 1);
    CHECK(after.team()[0] == Valuation({0, 0}));
}

TEST_CASE("restriction keeps the selected members and must leave one") {
    EpistemicCausalModel m = testutil::circuit_model();
    EpistemicCausalModel only_a2 = restrict_team(m, {false, true});
    REQUIRE(only_a2.team().size() == 1);
    CHECK(only_a2.team()[0] == testutil::circuit_a2());
    CHECK_THROWS_AS(restrict_team(m, {false, false}), ValidationError);
}

TEST_CASE("pointed intervention moves the point along with its image") {
    EpistemicCausalModel m = testutil::circuit_model();
    PointedModel p(m, testutil::circuit_a2());
    auto b1 = InterventionAssignment::checked({{0, 1}}, m.signature());
    PointedModel q = pointed_intervene(p, b1);
    CHECK(q.actual() == Valuation({1, 1, 1}));
    CHECK(q.model().contains(Valuation({1, 0, 0})));
}
