#include <doctest.h>

#include <functional>

#include "support.hpp"

using namespace testing_support;

namespace {

void collect_rules(const Strategy& s, std::vector<std::pair<Term, Term>>& out) {
    switch (s.kind()) {
        case StrategyKind::Rule:
            out.emplace_back(s.lhs(), s.rhs());
            return;
        case StrategyKind::Seq:
        case StrategyKind::Choice:
            collect_rules(s.first(), out);
            collect_rules(s.second(), out);
            return;
        case StrategyKind::One:
        case StrategyKind::All:
        case StrategyKind::Mu:
            collect_rules(s.first(), out);
            return;
        default:
            return;
    }
}

std::vector<std::pair<Term, Term>> rules_of(const Program& p) {
    std::vector<std::pair<Term, Term>> out;
    collect_rules(p.expand(), out);
    return out;
}

// Every subterm of the lhs that is a linear pattern, not just the lhs itself.
std::vector<Term> linear_subpatterns(const Term& l) {
    std::vector<Term> out;
    for (const auto& p : positions(l)) {
        const Term& u = subterm_at(l, p);
        if (!u.is_var() && is_linear(u)) out.push_back(u);
    }
    return out;
}

std::size_t matching_members(const std::vector<Term>& pats, const Term& t) {
    std::size_t n = 0;
    for (const auto& p : pats) n += match(p, t).has_value();
    return n;
}

}  // namespace

TEST_CASE("complement of Plus(Zero,x) over Peano") {
    Signature sig = fixture("peano.strat").signature;
    Term p = parse_term("Plus(Zero,x)", sig);
    auto u = expand_antiterm(p, sig);
    std::multiset<std::string> got;
    for (const auto& t : u) got.insert(t.str());
    CHECK(got == std::multiset<std::string>{"Zero", "Succ(x1)", "Plus(Succ(x1),x2)", "Plus(Plus(x1,x2),x3)"});
    CHECK(expand_antiterm(p, sig, Sort("Nat")).size() == 4);
    CHECK(expand_not_bot(sig).size() == 3);
    CHECK(expand_antiterm(parse_term("x", sig), sig).empty());
    CHECK_THROWS(expand_antiterm(parse_term("Plus(x,x)", sig), sig));
}

TEST_CASE("anti-term expansions are exact and disjoint (brute force)") {
    struct Case {
        const char* file;
        std::size_t depth;
    };
    for (Case c : {Case{"peano.strat", 4}, Case{"distfact.strat", 3}, Case{"gfx.strat", 4}, Case{"intbool.strat", 3}}) {
        CAPTURE(c.file);
        Program prog = fixture(c.file);
        const Signature& sig = prog.signature;
        std::vector<Term> universe = ground_terms(sig, "", c.depth);
        REQUIRE(!universe.empty());
        for (const auto& [l, r] : rules_of(prog)) {
            for (const Term& pat0 : linear_subpatterns(l)) {
                Term pat = erase_sorts(pat0);
                CAPTURE(pat.str());
                auto anti = expand_antiterm(pat, sig);
                for (const Term& t : universe) {
                    std::size_t hits = matching_members(anti, t);
                    bool matched = match(pat, t).has_value();
                    CHECK(hits <= 1);
                    CHECK((hits == 1) == !matched);
                }
            }
        }
    }
}

TEST_CASE("sorted expansion agrees with the unsorted one on well-sorted terms") {
    for (const char* file : {"intbool.strat", "distfact.strat", "peano.strat"}) {
        CAPTURE(file);
        Program prog = fixture(file);
        const Signature& sig = prog.signature;
        for (const auto& [l, r] : rules_of(prog)) {
            for (const Term& pat : linear_subpatterns(l)) {
                CAPTURE(pat.str());
                Sort s = sig.sort_of(pat);
                auto sorted = expand_antiterm(pat, sig, s);
                auto unsorted = expand_antiterm(erase_sorts(pat), sig);
                for (const Term& p : sorted) CHECK(sig.well_sorted(p));
                for (const Term& t0 : ground_terms(sig, s, 3)) {
                    Term t = sig.annotate(t0);
                    CHECK(matching_members(sorted, t) == matching_members(unsorted, t0));
                }
                CHECK(sorted.size() <= unsorted.size());
            }
        }
    }
}

TEST_CASE("complement of the first balance case") {
    Signature sig = fixture("rbtree.strat").signature;
    Term p = parse_term("balance(T(B,T(R,T(R,a1,a2,a3),x,b),y,T(R,c,z,d)))", sig);
    auto unsorted = expand_antiterm(p, sig);
    CHECK(unsorted.size() == 108);
    auto sorted = expand_antiterm(p, sig, Sort("Tree"));
    // only Tree-sorted alternatives survive at each Tree position
    CHECK(sorted.size() == 24);
}

TEST_CASE("equality rules decide syntactic equality") {
    Signature sig = fixture("peano.strat").signature;
    auto rules = equality_rules(sig, false);
    CHECK(rules.size() == 3 + 6 + 3);
    Trs trs(rules);
    auto terms = ground_terms(sig, "", 3);
    for (const Term& a : terms)
        for (const Term& b : terms) {
            NormalizeOutcome nf = normalize(trs, Term::app(kEq, {a, b}), 10000);
            REQUIRE(nf.normal());
            CHECK(nf.term.name() == (a == b ? kTrue : kFalse));
        }

    Signature ib = fixture("intbool.strat").signature;
    auto sorted = equality_rules(ib, true);
    // clashes only between constructors of the same sort: 3*2 for Int, 4*3 for Bool
    CHECK(sorted.size() == 7 + 6 + 12 + 3);
    CHECK(equality_rules(ib, false).size() == 7 + 42 + 3);
}

TEST_CASE("linearization plus equality test coincides with non-linear matching") {
    Program prog = fixture("distfact.strat");
    const Signature& sig = prog.signature;
    Term l = erase_sorts(parse_term("Plus(Mult(x,y),Mult(x,z))", sig));
    Linearized lin = linearize(l);
    REQUIRE(lin.equations.size() == 1);
    CHECK(is_linear(lin.pattern));
    Term cond = equality_condition(lin);
    Trs eq(equality_rules(sig, false));

    std::size_t nonlinear_hits = 0;
    for (std::size_t i = 0; i < 500; ++i) {
        auto rng = sample_rng(7, i);
        Term t = random_term(sig, std::nullopt, 5, rng);
        // bias towards the interesting shape
        if (i % 2 == 0) {
            auto r2 = sample_rng(8, i);
            Term x = random_term(sig, std::nullopt, 3, r2);
            Term y = random_term(sig, std::nullopt, 3, r2);
            Term z = random_term(sig, std::nullopt, 3, r2);
            t = Term::app("Plus", {Term::app("Mult", {x, y}), Term::app("Mult", {i % 4 == 0 ? x : z, z})});
        }
        bool direct = match(l, t).has_value();
        bool via = false;
        if (auto sigma = match(lin.pattern, t)) {
            NormalizeOutcome nf = normalize(eq, apply_subst(*sigma, cond), 100000);
            REQUIRE(nf.normal());
            via = nf.term.name() == kTrue;
        }
        CHECK(direct == via);
        nonlinear_hits += direct;
    }
    CHECK(nonlinear_hits >= 100);
}

TEST_CASE("schemas expand to the cartesian product of alias alternatives") {
    Signature sig = fixture("peano.strat").signature;
    RuleSchema sch;
    sch.lhs = SchemaPattern::app("f", {SchemaPattern::alias("a", AntiPattern::not_term(parse_term("Plus(Zero,x)", sig))),
                                       SchemaPattern::alias("b", AntiPattern::not_bot())});
    sch.rhs = Term::app("g", {Term::var("a"), Term::var("b")});
    CHECK(schema_product_size(sch, sig) == 4 * 3);
    auto rules = expand_schema(sch, sig);
    REQUIRE(rules.size() == 12);
    for (const auto& r : rules) {
        CHECK(r.lhs.name() == "f");
        CHECK(r.rhs.arg(0) == r.lhs.arg(0));
        CHECK(r.rhs.arg(1) == r.lhs.arg(1));
        CHECK(is_linear(r.lhs));
    }
}
