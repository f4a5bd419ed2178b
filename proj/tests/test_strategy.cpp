#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

namespace {

Signature peano_sig() { return fixture("peano.strat").signature; }

}  // namespace

TEST_CASE("printer output parses back to the same strategy") {
    Signature sig = peano_sig();
    const char* texts[] = {
        "Identity",
        "Fail",
        "[ Plus(Zero,x) -> x ]",
        "[ Plus(Zero,x) -> x ] ; Identity <+ Fail",
        "([ Plus(Zero,x) -> x ] <+ Fail) ; Identity",
        "mu X.(one(X) <+ [ Plus(Zero,x) -> x ])",
        "all(mu X.(X ; Identity)) ; one(Fail)",
        "(mu X.X) ; Identity",
        "Identity <+ Fail <+ Identity",
        "(Identity <+ Fail) <+ Identity",
        "Identity ; (Fail ; Identity)",
    };
    for (const char* t : texts) {
        CAPTURE(t);
        Strategy s = parse_strategy(t, sig);
        Strategy back = parse_strategy(s.str(), sig);
        CHECK(back == s);
        CHECK(back.str() == s.str());
    }
}

TEST_CASE("derived combinators print as expected") {
    Strategy r = Strategy::rule(Term::app("a"), Term::app("b"));
    CHECK(try_(r).str() == "[ a -> b ] <+ Identity");
    CHECK(repeat(r).str() == "mu X.[ a -> b ] ; X <+ Identity");
    CHECK(once_bottom_up(r).str() == "mu X.one(X) <+ [ a -> b ]");
    CHECK(Strategy::seq(repeat(r), r).str() == "(mu X.[ a -> b ] ; X <+ Identity) ; [ a -> b ]");
    CHECK(innermost(r).str() == "mu X.all(X) ; ([ a -> b ] ; X <+ Identity)");
    CHECK(repeat(r).size() == 6);
}

TEST_CASE("syntax errors carry line and column") {
    const std::string bad =
        "abstract syntax\n"
        "  Nat = Zero() | Succ(Nat)\n"
        "strategies\n"
        "  mainStrat() = [ Succ(q(x)) -> x ]\n";
    try {
        parse_program(bad);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("unknown symbol 'q'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_program("abstract syntax\n Nat = Zero() | Zero()\nstrategies\n"), SyntaxError);
    CHECK_THROWS_AS(parse_program("abstract syntax\n Nat = Succ(Bool)\nstrategies\n"), SyntaxError);
    CHECK_THROWS_AS(parse_program("abstract syntax\n Nat = Zero()\nstrategies\n m() = [ Zero() -> y ]\n"),
                    SyntaxError);
    CHECK_THROWS_AS(parse_program("abstract syntax\n Nat = Zero()\nstrategies\n m() = [ Zero() -> Zero() \n"),
                    SyntaxError);
    CHECK_THROWS_AS(parse_program("abstract syntax\n Nat = bot()\nstrategies\n"), SyntaxError);
}

TEST_CASE("recursive definitions are rejected") {
    const std::string rec =
        "abstract syntax\n"
        "  Nat = Zero() | Succ(Nat)\n"
        "strategies\n"
        "  a() = b()\n"
        "  b() = a() ; Identity\n"
        "  mainStrat() = a()\n";
    CHECK_THROWS_AS(parse_program(rec), Error);
}

TEST_CASE("unknown entry and parameterized entry") {
    Program p = fixture("peano.strat");
    CHECK_THROWS_AS(p.expand("nosuch"), DefinitionError);
    CHECK_THROWS_AS(p.expand("repeat"), DefinitionError);
}

TEST_CASE("expansion is hygienic") {
    // the argument mentions a mu-variable with the same name as the callee's binder
    const std::string text =
        "abstract syntax\n"
        "  Nat = Zero() | Succ(Nat)\n"
        "strategies\n"
        "  rep(s) = mu y.((s ; y) <+ Identity)\n"
        "  mainStrat() = mu y.rep(one(y))\n";
    Program p = parse_program(text);
    Strategy s = p.expand();
    CHECK(free_vars(s).empty());
    // the outer binder and the inner one must differ
    REQUIRE(s.kind() == StrategyKind::Mu);
    const Strategy& inner = s.body();
    REQUIRE(inner.kind() == StrategyKind::Mu);
    CHECK(inner.var() != s.var());
    // one(y) still refers to the outer binder
    const Strategy& call_arg = inner.body().first().first();
    REQUIRE(call_arg.kind() == StrategyKind::One);
    CHECK(call_arg.first().var() == s.var());
}

TEST_CASE("expanded fixture matches the hand-built strategy up to binder names") {
    Program p = fixture("peano.strat");
    Signature sig = p.signature;
    Strategy pz = Strategy::rule(parse_term("Plus(Zero,x)", sig), parse_term("x", sig));
    Strategy ps = Strategy::rule(parse_term("Plus(Succ(x),y)", sig), parse_term("Succ(Plus(x,y))", sig));
    Strategy want = alpha_unique(repeat(once_bottom_up(Strategy::choice(pz, ps), "x"), "y"));
    CHECK(alpha_unique(p.expand()).str() == want.str());
}

TEST_CASE("alpha_unique renames shadowed binders") {
    Strategy s = Strategy::seq(Strategy::mu("X", Strategy::svar("X")), Strategy::mu("X", Strategy::one(Strategy::svar("X"))));
    Strategy u = alpha_unique(s);
    CHECK(u.first().var() != u.second().var());
    CHECK(free_vars(u).empty());
    CHECK(free_vars(Strategy::seq(Strategy::svar("Z"), Strategy::mu("X", Strategy::svar("X")))) ==
          std::set<std::string>{"Z"});
}

TEST_CASE("terms: constants vs variables and sort inference") {
    Signature sig = fixture("intbool.strat").signature;
    Term t = parse_term("odd(Plus(x,Zero))", sig);
    CHECK(t.sort() == "Bool");
    CHECK(t.arg(0).arg(0).is_var());
    CHECK(t.arg(0).arg(0).sort() == "Int");
    CHECK(parse_term("true", sig).is_constant());
    CHECK_THROWS(parse_ground_term("odd(x)", sig));
    // ground subjects may be ill-sorted; only the sorted encodings reject them
    Term ill = parse_ground_term("Succ(true)", sig);
    CHECK_FALSE(sig.well_sorted(ill));
}
