#include <doctest.h>

#include "ecmc/caps.hpp"
#include "ecmc/errors.hpp"
#include "ecmc/formula.hpp"

#include "test_util.hpp"

using namespace ecmc;

namespace {

PakcPtr parse_circuit(std::string_view text) {
    static SignaturePtr sig = testutil::circuit_signature();
    return parse_pakc(text, *sig);
}

std::string roundtrip(std::string_view text) {
    SignaturePtr sig = testutil::circuit_signature();
    return print_pakc(parse_pakc(text, *sig), *sig);
}

} // namespace

TEST_CASE("atom factories validate variable and value") {
    SignaturePtr sig = testutil::circuit_signature();
    PakcPtr a = atom(*sig, "B", "1");
    CHECK(a->kind() == PakcKind::Atom);
    CHECK(a->atom_var() == VarId{0});
    CHECK(a->atom_value() == ValId{1});
    CHECK_THROWS_AS(atom(*sig, "X", "1"), ValidationError);
    CHECK_THROWS_AS(atom(*sig, "B", "2"), ValidationError);
    CHECK_THROWS_AS(atom(*sig, 0, 2), ValidationError);
    CHECK_THROWS_AS(atom(*sig, 9, 0), ValidationError);
}

TEST_CASE("null operands are rejected") {
    SignaturePtr sig = testutil::circuit_signature();
    PakcPtr a = atom(*sig, "B", "1");
    CHECK_THROWS_AS(neg(nullptr), ValidationError);
    CHECK_THROWS_AS(conj(a, nullptr), ValidationError);
    CHECK_THROWS_AS(know(nullptr), ValidationError);
    CHECK_THROWS_AS(announce(a, nullptr), ValidationError);
}

TEST_CASE("empty interventions collapse to the body") {
    SignaturePtr sig = testutil::circuit_signature();
    PakcPtr a = atom(*sig, "B", "1");
    PakcPtr f = intervene(InterventionAssignment{}, a);
    CHECK(equal(f, a));
}

TEST_CASE("nested interventions are rejected at construction") {
    SignaturePtr sig = testutil::circuit_signature();
    auto b1 = InterventionAssignment::checked({{0, 1}}, *sig);
    PakcPtr inner = intervene(b1, atom(*sig, "S", "1"));
    CHECK_THROWS_AS(intervene(b1, inner), ValidationError);
    CHECK_THROWS_AS(intervene(b1, know(neg(inner))), ValidationError);
    // Announcement inside an intervention is fine.
    CHECK_NOTHROW(intervene(b1, announce(atom(*sig, "C", "1"), atom(*sig, "S", "1"))));
}

TEST_CASE("definable connectives expand to the documented shapes") {
    SignaturePtr sig = testutil::circuit_signature();
    PakcPtr a = atom(*sig, "B", "1");
    PakcPtr b = atom(*sig, "C", "1");
    CHECK(equal(disj(a, b), neg(conj(neg(a), neg(b)))));
    CHECK(equal(implies(a, b), neg(conj(a, neg(b)))));
    CHECK(equal(iff(a, b), conj(implies(a, b), implies(b, a))));
    CHECK(equal(falsum(*sig), conj(atom(*sig, 0, 0), neg(atom(*sig, 0, 0)))));
    CHECK(equal(verum(*sig), neg(falsum(*sig))));
}

TEST_CASE("empty folds produce the unit of the connective") {
    SignaturePtr sig = testutil::circuit_signature();
    CHECK(equal(disj_all({}, *sig), falsum(*sig)));
    CHECK(equal(conj_all({}, *sig), verum(*sig)));
    std::vector<PakcPtr> one{atom(*sig, "B", "1")};
    CHECK(equal(disj_all(one, *sig), one[0]));
    CHECK(equal(conj_all(one, *sig), one[0]));
}

TEST_CASE("fragment classification is the smallest containing fragment") {
    SignaturePtr sig = testutil::circuit_signature();
    CHECK(classify(parse_circuit("K ~S=1")) == Fragment::Kc);
    CHECK(classify(parse_circuit("[B:=1] S=1")) == Fragment::Kc);
    CHECK(classify(parse_circuit("[C=1 !] K C=1")) == Fragment::L1);
    CHECK(classify(parse_circuit("[B:=1] K S=1")) == Fragment::Pakc);
    CHECK(classify(parse_circuit("[B:=1] (S=1 & B=1)")) == Fragment::Pakc);
    CHECK(within_fragment(parse_circuit("K ~S=1"), Fragment::Pakc));
    CHECK(within_fragment(parse_circuit("[C=1 !] K C=1"), Fragment::L1));
    CHECK_FALSE(within_fragment(parse_circuit("[C=1 !] K C=1"), Fragment::Kc));
    CHECK(fragment_name(Fragment::Kc) == std::string("KC"));
    CHECK(fragment_name(Fragment::L1) == std::string("L1"));
    CHECK(fragment_name(Fragment::Pakc) == std::string("PAKC"));
}

TEST_CASE("formula predicates") {
    PakcPtr f = parse_circuit("[B:=1] K S=1");
    CHECK(contains_intervene(f));
    CHECK_FALSE(contains_announce(f));
    PakcPtr g = parse_circuit("[C=1 !] B=0");
    CHECK(contains_announce(g));
    CHECK_FALSE(contains_intervene(g));
    CHECK(node_count(parse_circuit("B=1 & C=1")) == 3);
}

TEST_CASE("cause formula for two binary variables has four disjuncts") {
    auto sig = std::make_shared<const Signature>(
        std::vector<std::string>{"X"}, std::vector<std::string>{"Z"},
        std::map<std::string, std::vector<std::string>>{{"X", {"0", "1"}},
                                                        {"Z", {"0", "1"}}});
    ExpansionCaps caps;
    PakcPtr f = causes_formula(*sig, 0, 1, caps);
    // No remaining variables, so w is empty: the disjuncts range over the
    // ordered pairs x1 != x2, z1 != z2.
    auto lit = [&](ValId xv, ValId zv) {
        return conj(intervene(InterventionAssignment::checked({{0, xv}}, *sig),
                              atom(*sig, 1, zv)),
                    intervene(InterventionAssignment::checked({{0, 1 - xv}}, *sig),
                              atom(*sig, 1, 1 - zv)));
    };
    std::vector<PakcPtr> expected{lit(0, 0), lit(0, 1), lit(1, 0), lit(1, 1)};
    CHECK(equal(f, disj_all(expected, *sig)));
    CHECK_THROWS_AS(causes_formula(*sig, 0, 0, caps), ValidationError);
}

TEST_CASE("cause formula respects the expansion cap") {
    SignaturePtr sig = testutil::circuit_signature();
    ExpansionCaps caps;
    caps.max_terms = 3;
    CHECK_THROWS_AS(causes_formula(*sig, 0, 2, caps), CapExceeded);
}

TEST_CASE("dependence formulas have announcement and intervention cores") {
    SignaturePtr sig = testutil::circuit_signature();
    ExpansionCaps caps;
    PakcPtr e = e_dependence_formula(*sig, {0}, 2, caps);
    CHECK(contains_announce(e));
    CHECK_FALSE(contains_intervene(e));
    PakcPtr c = c_dependence_formula(*sig, {0}, 2, caps);
    CHECK(contains_intervene(c));
    CHECK_FALSE(contains_announce(c));
    CHECK_THROWS_AS(e_dependence_formula(*sig, {}, 2, caps), ValidationError);
    CHECK_THROWS_AS(e_dependence_formula(*sig, {0, 0}, 2, caps), ValidationError);
    CHECK_THROWS_AS(e_dependence_formula(*sig, {2}, 2, caps), ValidationError);
}

TEST_CASE("printing round-trips through the parser") {
    SignaturePtr sig = testutil::circuit_signature();
    for (const char* text : {"B=1", "~S=1", "B=1 & C=1", "K S=1", "[B:=1] S=1",
                             "[B:=1, C:=0] S=0", "[C=1 !] K C=1",
                             "K (B=1 | C=1)", "B=1 -> C=1",
                             "[B:=1] [C=1 !] S=1"}) {
        PakcPtr f = parse_pakc(text, *sig);
        CHECK(equal(parse_pakc(print_pakc(f, *sig), *sig), f));
    }
}

TEST_CASE("printer uses derived connectives where the shape matches") {
    CHECK(roundtrip("B=1 | C=1") == "B=1 | C=1");
    CHECK(roundtrip("B=1 -> C=1") == "B=1 -> C=1");
    CHECK(roundtrip("~(~B=1 & ~C=1)") == "B=1 | C=1");
    CHECK(roundtrip("~(B=1 & ~C=1)") == "B=1 -> C=1");
    CHECK(roundtrip("B=1 & C=1") == "B=1 & C=1");
}

TEST_CASE("parser handles precedence and grouping") {
    SignaturePtr sig = testutil::circuit_signature();
    // & binds tighter than |, | tighter than ->, -> is right associative.
    CHECK(equal(parse_pakc("B=1 & C=1 | S=1", *sig),
                disj(conj(atom(*sig, "B", "1"), atom(*sig, "C", "1")),
                     atom(*sig, "S", "1"))));
    CHECK(equal(parse_pakc("B=1 -> C=1 -> S=1", *sig),
                implies(atom(*sig, "B", "1"),
                        implies(atom(*sig, "C", "1"), atom(*sig, "S", "1")))));
    CHECK(equal(parse_pakc("~K S=1", *sig), neg(know(atom(*sig, "S", "1")))));
    CHECK(equal(parse_pakc("(B=1)", *sig), atom(*sig, "B", "1")));
}

TEST_CASE("parse errors carry the offending offset") {
    SignaturePtr sig = testutil::circuit_signature();
    auto offset_of = [&](std::string_view text) {
        try {
            parse_pakc(text, *sig);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::size_t(-1);
    };
    CHECK(offset_of("B=1 &") == 5);
    CHECK(offset_of("X=1") == 0);
    CHECK(offset_of("B=7") == 2);
    CHECK(offset_of("B=1 @ C=1") == 4);
    CHECK(offset_of("(B=1") == 4);
    CHECK_THROWS_AS(parse_pakc("", *sig), ParseError);
    // Nested interventions slip past the grammar but the node factory
    // rejects them.
    CHECK_THROWS_AS(parse_pakc("[B:=1] [C:=1] S=1", *sig), ValidationError);
}
