#include <doctest.h>

#include <functional>

#include "support.hpp"

using namespace testing_support;

namespace {

Term list_of(const std::vector<Term>& xs) {
    Term l = Term::app("nil");
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) l = Term::app("cons", {*it, l});
    return l;
}

Term nf(const Trs& trs, const Term& t) {
    NormalizeOutcome r = normalize(trs, t, 100000);
    REQUIRE(r.normal());
    return r.term;
}

bool well_formed_meta(const Term& t) {
    if (t.is_var()) return true;
    if (t.name() == "appl") {
        if (t.arity() != 2) return false;
        const Term& h = t.arg(0);
        if (h.is_var() || h.arity() != 0 || h.name().size() < 5 || h.name().substr(h.name().size() - 4) != "_sym")
            return false;
    }
    for (const auto& a : t.args())
        if (!well_formed_meta(a)) return false;
    return true;
}

}  // namespace

TEST_CASE("meta representation round trip") {
    Program prog = fixture("distfact.strat");
    for (std::size_t i = 0; i < 200; ++i) {
        auto rng = sample_rng(11, i);
        Term t = random_term(prog.signature, std::nullopt, 5, rng);
        Term m = meta_encode(t);
        CHECK(m.name() == "appl");
        CHECK(meta_decode(m, prog.signature) == t);
    }
    Term v = parse_ground_term("Val(a)", prog.signature);
    CHECK(meta_encode(v).str() == "appl(Val_sym,cons(appl(a_sym,nil),nil))");
}

TEST_CASE("malformed meta-terms are rejected") {
    Signature sig = fixture("distfact.strat").signature;
    auto A = [](const char* f, std::vector<Term> a = {}) { return Term::app(f, std::move(a)); };
    CHECK_THROWS_AS(meta_decode(A("Val", {A("a")}), sig), MetaError);
    CHECK_THROWS_AS(meta_decode(A("appl", {A("nosuch_sym"), A("nil")}), sig), MetaError);
    CHECK_THROWS_AS(meta_decode(A("appl", {A("Val_sym"), A("nil")}), sig), MetaError);  // arity
    CHECK_THROWS_AS(meta_decode(A("appl", {A("a_sym"), A("cons", {A("appl", {A("a_sym"), A("nil")}), A("x")})}), sig),
                    MetaError);
    CHECK_THROWS_AS(meta_decode(A("appl", {Term::var("f"), A("nil")}), sig), MetaError);
}

TEST_CASE("Identity at the meta level") {
    Signature sig = fixture("peano.strat").signature;
    Encoding e = translate_meta(sig, {}, Strategy::id());
    CHECK(rule_shapes(e.rules) ==
          std::multiset<std::string>{"phi_0_id(appl(v1,v2)) -> appl(v1,v2)", "phi_0_id(bot(v1)) -> bot(v1)"});
}

TEST_CASE("all(pz) at the meta level") {
    Signature sig = fixture("peano.strat").signature;
    Strategy pz = Strategy::rule(parse_term("Plus(Zero,x)", sig), parse_term("x", sig));
    Encoding e = translate_meta(sig, {}, Strategy::all(pz));
    // traversal 7, rule group 6, list library 9
    CHECK(e.rule_count() == 22);
    auto sh = rule_shapes(e.rules);
    CHECK(sh.count("phi_0_all(appl(v1,v2)) -> propag(appl(v1,phi_0_alllist(v2)))") == 1);
    CHECK(sh.count("phi_1_rule(appl(Plus_sym,cons(appl(Zero_sym,nil),cons(v1,nil)))) -> v1") == 1);
    CHECK(sh.count("phi_0_alllist(nil) -> nil") == 1);

    Trs trs(e.rules);
    auto run = [&](const char* s) {
        Term t = parse_ground_term(s, sig);
        auto rb = e.read_back(nf(trs, e.entry_term(t)));
        return rb.kind == Encoding::Readback::Kind::Value ? rb.term.str()
               : rb.kind == Encoding::Readback::Kind::Failure ? std::string("Fail")
                                                              : std::string("Stuck");
    };
    CHECK(run("Plus(Plus(Zero,Zero),Plus(Zero,Succ(Zero)))") == "Plus(Zero,Succ(Zero))");
    CHECK(run("Succ(Succ(Plus(Zero,Zero)))") == "Fail");
    CHECK(run("Zero") == "Zero");
}

TEST_CASE("list library agrees with native list operations") {
    Trs trs(list_rules());
    CHECK(trs.size() == 9);
    std::vector<Term> atoms;
    for (int i = 0; i < 6; ++i) atoms.push_back(Term::app("c" + std::to_string(i)));
    Term extra = Term::app("z");
    for (std::size_t n = 0; n <= 6; ++n) {
        std::vector<Term> xs(atoms.begin(), atoms.begin() + long(n));
        std::vector<Term> rev(xs.rbegin(), xs.rend());
        std::vector<Term> app = xs;
        app.push_back(extra);
        CHECK(nf(trs, Term::app("rappend", {list_of(xs), extra})) == list_of(app));
        CHECK(nf(trs, Term::app("reverse", {list_of(xs)})) == list_of(rev));
        for (std::size_t m = 0; m <= 6 - n; ++m) {
            std::vector<Term> ys(atoms.begin(), atoms.begin() + long(m));
            std::vector<Term> want = rev;
            want.insert(want.end(), ys.begin(), ys.end());
            CHECK(nf(trs, Term::app("rconcat", {list_of(xs), list_of(ys)})) == list_of(want));
        }
        Term f = Term::app("f_sym");
        CHECK(nf(trs, Term::app("propag", {Term::app("appl", {f, Term::app("bot_list", {list_of(xs)})})})) ==
              Term::app(kBot, {Term::app("appl", {f, list_of(xs)})}));
        CHECK(nf(trs, Term::app("propag", {Term::app("appl", {f, list_of(xs)})})) == Term::app("appl", {f, list_of(xs)}));
    }
}

TEST_CASE("meta encodings never build ill-formed applications") {
    for (const char* name : {"reps_obu_fact", "im_dist", "bu_rf", "simplify"}) {
        CAPTURE(name);
        Program prog = fixture(std::string("table1/") + name + ".strat");
        Encoding e = translate_meta(prog.signature, {}, prog.expand());
        Trs trs(e.rules);
        for (std::size_t i = 0; i < 30; ++i) {
            auto rng = sample_rng(5, i);
            Term t = random_term(prog.signature, std::nullopt, 4, rng);
            bool ok = true;
            NormalizeOutcome r = normalize_observed(trs, e.entry_term(t), 100000, RedexPolicy::innermost(),
                                                    [&](const Term& u) { ok = ok && well_formed_meta(u); });
            CHECK(ok);
            if (r.normal()) CHECK(e.read_back(r.term).kind != Encoding::Readback::Kind::Stuck);
        }
    }
}

TEST_CASE("meta encoding agrees with the evaluator on the fixtures") {
    for (const char* file : {"gfx.strat", "peano.strat", "distfact.strat", "intbool.strat"}) {
        CAPTURE(file);
        Program prog = fixture(file);
        CheckOptions c;
        c.mode = Mode::Meta;
        c.samples = 80;
        c.seed = 9;
        CheckReport r = run_check(prog.signature, prog.expand(), c);
        CHECK_MESSAGE(r.ok(), r.str());
    }
}

TEST_CASE("meta rule count does not depend on the signature size for traversals") {
    Strategy s = Strategy::all(Strategy::id());
    Encoding small = translate_meta(fixture("peano.strat").signature, {}, s);
    Encoding big = translate_meta(fixture("rbtree.strat").signature, {}, s);
    CHECK(small.rule_count() == big.rule_count());
    CHECK(translate(fixture("peano.strat").signature, {}, s).rule_count() <
          translate(fixture("rbtree.strat").signature, {}, s).rule_count());
}
