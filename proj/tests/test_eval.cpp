#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

namespace {

struct Peano {
    Signature sig = fixture("peano.strat").signature;
    Strategy pz = Strategy::rule(parse_term("Plus(Zero,x)", sig), parse_term("x", sig));
    Strategy ps = Strategy::rule(parse_term("Plus(Succ(x),y)", sig), parse_term("Succ(Plus(x,y))", sig));
    Strategy S = Strategy::choice(pz, ps);

    Term t(const char* s) const { return parse_ground_term(s, sig); }
};

std::string run(const Strategy& s, const Term& t) {
    EvalOutcome r = eval(s, t);
    return r.is_value() ? r.value.str() : r.str();
}

}  // namespace

TEST_CASE("basic combinators on Peano terms") {
    Peano p;
    CHECK(run(p.pz, p.t("Plus(Zero,Succ(Zero))")) == "Succ(Zero)");
    CHECK(run(p.pz, p.t("Succ(Plus(Zero,Zero))")) == "Fail");
    CHECK(run(p.pz, p.t("Plus(Zero,Plus(Zero,Succ(Zero)))")) == "Plus(Zero,Succ(Zero))");

    Strategy pzpz = Strategy::seq(p.pz, p.pz);
    CHECK(run(pzpz, p.t("Plus(Zero,Plus(Zero,Succ(Zero)))")) == "Succ(Zero)");
    CHECK(run(pzpz, p.t("Plus(Zero,Succ(Plus(Zero,Zero)))")) == "Fail");
    CHECK(run(try_(pzpz), p.t("Plus(Zero,Succ(Plus(Zero,Zero)))")) == "Plus(Zero,Succ(Plus(Zero,Zero)))");

    Term u = p.t("Plus(Plus(Zero,Zero),Plus(Zero,Succ(Zero)))");
    CHECK(run(Strategy::one(p.pz), u) == "Plus(Zero,Plus(Zero,Succ(Zero)))");
    CHECK(run(Strategy::all(p.pz), u) == "Plus(Zero,Succ(Zero))");
    CHECK(run(Strategy::one(p.pz), p.t("Succ(Succ(Plus(Zero,Zero)))")) == "Fail");
    CHECK(run(Strategy::all(p.pz), p.t("Succ(Succ(Plus(Zero,Zero)))")) == "Fail");
}

TEST_CASE("traversals") {
    Peano p;
    Term t = p.t("Plus(Plus(Zero,Zero),Plus(Succ(Zero),Zero))");
    CHECK(run(once_top_down(p.S), t) == "Plus(Zero,Plus(Succ(Zero),Zero))");
    CHECK(run(once_top_down(p.S), p.t("Plus(Zero,Plus(Succ(Zero),Zero))")) == "Plus(Succ(Zero),Zero)");
    CHECK(run(once_bottom_up(p.S), t) == "Plus(Zero,Plus(Succ(Zero),Zero))");
    CHECK(run(once_bottom_up(p.S), p.t("Plus(Zero,Plus(Succ(Zero),Zero))")) == "Plus(Zero,Succ(Plus(Zero,Zero)))");
    CHECK(run(innermost(p.S), t) == "Succ(Zero)");
    CHECK(run(bottom_up(p.S), t) == "Fail");
    CHECK(run(top_down(p.S), t) == "Fail");
    CHECK(run(bottom_up(try_(p.S)), t) == "Succ(Plus(Zero,Zero))");
    CHECK(run(top_down(try_(p.S)), t) == "Plus(Zero,Succ(Zero))");
}

TEST_CASE("all and one on constants") {
    Peano p;
    CHECK(run(Strategy::all(Strategy::fail()), p.t("Zero")) == "Zero");
    CHECK(run(Strategy::one(Strategy::id()), p.t("Zero")) == "Fail");
}

TEST_CASE("divergence runs out of fuel") {
    Peano p;
    Strategy loop = Strategy::mu("X", Strategy::svar("X"));
    EvalOutcome r = eval(loop, p.t("Zero"), 1000);
    CHECK(r.out_of_fuel());
    CHECK(r.fuel_used <= 1000);
    // non-tail recursion deep enough to overflow a naive recursive evaluator
    Strategy grow = Strategy::mu("X", Strategy::seq(Strategy::id(), Strategy::seq(Strategy::svar("X"), Strategy::id())));
    CHECK(eval(grow, p.t("Zero"), 2000000).out_of_fuel());
}

TEST_CASE("unbound strategy variables are an error") {
    Peano p;
    CHECK_THROWS_AS(eval(Strategy::svar("Y"), p.t("Zero")), UnboundStrategyVariable);
    // bound through the context
    Context ctx{{"Y", p.pz}};
    CHECK(eval(ctx, Strategy::svar("Y"), p.t("Plus(Zero,Zero)")).value == p.t("Zero"));
}

TEST_CASE("the fixture program normalizes Peano sums") {
    Program prog = fixture("peano.strat");
    Strategy s = prog.expand();
    Term t = parse_ground_term("Plus(Succ(Succ(Zero)),Plus(Succ(Zero),Zero))", prog.signature);
    CHECK(run(s, t) == "Succ(Succ(Succ(Zero)))");
}

TEST_CASE("deep subjects are traversed without native recursion") {
    Peano p;
    Term t = p.t("Plus(Zero,Zero)");
    for (int i = 0; i < 100000; ++i) t = Term::app("Succ", {t});
    EvalOutcome r = eval(once_bottom_up(p.pz), t, 10000000);
    REQUIRE(r.is_value());
    CHECK(r.value.depth() == 100001);
}

TEST_CASE("determinism, fuel monotonicity, and repeat never failing") {
    Peano p;
    Strategy pool[] = {p.pz, p.ps, p.S, Strategy::one(p.pz), Strategy::all(p.ps), Strategy::seq(p.ps, p.pz)};
    std::size_t checked = 0;
    for (std::size_t i = 0; i < 300; ++i) {
        auto rng = sample_rng(23, i);
        Term t = random_term(p.sig, Sort("Nat"), 5, rng);
        const Strategy& base = pool[i % std::size(pool)];
        Strategy s = i % 2 ? repeat(once_bottom_up(base)) : repeat(base);
        EvalOutcome a = eval(s, t, 5000), b = eval(s, t, 5000);
        CHECK(a.kind == b.kind);
        CHECK(a.fuel_used == b.fuel_used);
        if (a.is_value()) CHECK(a.value == b.value);
        CHECK_FALSE(a.is_failure());
        if (a.out_of_fuel()) continue;
        ++checked;
        for (std::size_t more : {a.fuel_used, a.fuel_used + 1, 4 * a.fuel_used + 10}) {
            EvalOutcome c = eval(s, t, more);
            REQUIRE(c.is_value());
            CHECK(c.value == a.value);
        }
        if (a.fuel_used > 0) CHECK(eval(s, t, a.fuel_used - 1).out_of_fuel());
    }
    CHECK(checked > 200);
}
