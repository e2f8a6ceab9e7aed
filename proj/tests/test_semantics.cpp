#include <doctest.h>

#include "ecmc/generators.hpp"
#include "ecmc/semantics.hpp"

#include "test_util.hpp"

using namespace ecmc;

namespace {

bool holds_at_a2(std::string_view text) {
    EpistemicCausalModel m = testutil::circuit_model();
    PointedModel p(m, testutil::circuit_a2());
    return eval(p, parse_pakc(text, m.signature()));
}

} // namespace

TEST_CASE("circuit verdicts: intervention, knowledge, and their interplay") {
    // The agent knows the lamp is off but not which switch is open.  Closing
    // B makes the lamp light in fact, yet the agent cannot know this: in the
    // epistemic alternative where C is open the lamp stays dark.
    CHECK(holds_at_a2("[B:=1] S=1"));
    CHECK_FALSE(holds_at_a2("K [B:=1] S=1"));
    CHECK_FALSE(holds_at_a2("[B:=1] K S=1"));
}

TEST_CASE("circuit verdicts: atoms and knowledge") {
    CHECK(holds_at_a2("C=1"));
    CHECK(holds_at_a2("B=0"));
    CHECK(holds_at_a2("~S=1"));
    CHECK(holds_at_a2("K ~S=1"));
    CHECK_FALSE(holds_at_a2("K C=1"));
    CHECK(holds_at_a2("~K C=1"));
}

TEST_CASE("announcement restricts the team") {
    CHECK(holds_at_a2("[C=1 !] K C=1"));
    // Announcing something false at the point makes any consequent hold.
    EpistemicCausalModel m = testutil::circuit_model();
    PointedModel a1(m, testutil::circuit_a1());
    CHECK(eval(a1, parse_pakc("[C=1 !] K C=1", m.signature())));
    CHECK(eval(a1, parse_pakc("[C=1 !] S=1", m.signature())));
    CHECK_FALSE(eval(a1, parse_pakc("C=1", m.signature())));
}

TEST_CASE("derived connectives behave classically at a point") {
    CHECK(holds_at_a2("B=0 & C=1"));
    CHECK_FALSE(holds_at_a2("B=1 & C=1"));
    CHECK(holds_at_a2("B=1 | C=1"));
    CHECK(holds_at_a2("B=1 -> S=1"));
    CHECK(holds_at_a2("~~C=1"));
}

TEST_CASE("validity on a model quantifies over pointings") {
    EpistemicCausalModel m = testutil::circuit_model();
    const Signature& sig = m.signature();
    CHECK(valid_on_model(m, parse_pakc("B=0", sig)));
    CHECK(valid_on_model(m, parse_pakc("K ~S=1", sig)));
    CHECK_FALSE(valid_on_model(m, parse_pakc("C=1", sig)));
    CHECK(valid_on_model(m, parse_pakc("[C=1 !] K C=1", sig)));
}

TEST_CASE("knowledge is S5 over the team") {
    GeneratorConfig cfg;
    cfg.max_vars = 3;
    cfg.max_range = 2;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng = case_rng(31, i);
        EpistemicCausalModel m = generate_model(cfg, rng);
        PakcPtr f = generate_pakc_formula(m.signature(), cfg, rng, 3, true);
        PakcPtr t = implies(know(f), f);
        PakcPtr four = implies(know(f), know(know(f)));
        PakcPtr five = implies(neg(know(f)), know(neg(know(f))));
        CHECK(valid_on_model(m, t));
        CHECK(valid_on_model(m, four));
        CHECK(valid_on_model(m, five));
    }
}

TEST_CASE("interventions distribute over negation") {
    GeneratorConfig cfg;
    cfg.max_vars = 3;
    cfg.max_range = 2;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng = case_rng(32, i);
        EpistemicCausalModel m = generate_model(cfg, rng);
        InterventionAssignment a =
            random_assignment(m.signature(), rng, cfg.max_intervention);
        if (a.size() == 0) continue;
        PakcPtr body = generate_pakc_formula(m.signature(), cfg, rng, 2, true);
        if (contains_intervene(body)) continue;
        PakcPtr lhs = intervene(a, neg(body));
        PakcPtr rhs = neg(intervene(a, body));
        for (const Valuation& v : m.team())
            CHECK(eval(PointedModel(m, v), lhs) == eval(PointedModel(m, v), rhs));
    }
}

TEST_CASE("trace reports clauses parent first with team sizes") {
    EpistemicCausalModel m = testutil::circuit_model();
    PointedModel p(m, testutil::circuit_a2());
    Trace trace;
    bool verdict = eval(p, parse_pakc("[B:=1] K S=1", m.signature()), trace);
    CHECK_FALSE(verdict);
    REQUIRE(trace.size() >= 3);
    CHECK(trace[0].depth == 0);
    CHECK(trace[0].clause == "intervene");
    CHECK(trace[0].team_size == 2);
    CHECK_FALSE(trace[0].verdict);
    CHECK(trace[1].depth == 1);
    CHECK(trace[1].clause == "know");
    std::string text = format_trace(trace);
    CHECK(text.find("intervene") != std::string::npos);
    CHECK(text.find("[B:=1] K S=1") != std::string::npos);
}
