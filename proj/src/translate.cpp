#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "strat2trs/encoding.hpp"
#include "strat2trs/eval.hpp"

namespace strat {

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Unsorted: return "unsorted";
        case Mode::Sorted: return "sorted";
        case Mode::SortedNoOverload: return "sorted-no-overload";
        case Mode::Meta: return "meta";
    }
    return "?";
}

std::optional<Mode> parse_mode(const std::string& s) {
    if (s == "unsorted" || s == "u") return Mode::Unsorted;
    if (s == "sorted" || s == "s") return Mode::Sorted;
    if (s == "sorted-no-overload") return Mode::SortedNoOverload;
    if (s == "meta" || s == "m") return Mode::Meta;
    return std::nullopt;
}

namespace {

enum class Family { Unary, SeqAux, Psi, PsiI, RuleAux, Fixed };

struct SymInfo {
    GeneratedSymbol g;
    Family family;
    const SymbolDecl* f = nullptr;  // Psi / PsiI
    Sort sort;                      // RuleAux
};

using SP = SchemaPattern;

class Translator {
public:
    Translator(const Signature& sig, bool sorted, bool meta, TranslateOptions opt)
        : sig_(sig), sorted_(sorted), meta_(meta), opt_(opt) {
        if (sorted_)
            sorts_ = sig.sorts();
        else
            sorts_ = {Sort{}};
    }

    // Reserves phi_X for each context binding, translates s, then the bindings.
    std::string run(const Context& ctx, const Strategy& s, bool translate_main = true, std::size_t first_binding = 0) {
        for (const auto& [x, body] : ctx) {
            std::size_t k = counter_++;
            scope_.emplace_back(x, name(k, "svar", Family::Unary, 1));
        }
        std::string entry;
        if (translate_main) entry = visit(s);
        for (std::size_t i = first_binding; i < ctx.size(); ++i) {
            const std::string& phX = scope_[i].second;
            std::size_t k = counter_++;
            std::string pb = visit(ctx[i].second);
            filtered(k, phX, [&](const Term& x) { return Term::app(pb, {x}); });
            prop(k, phX);
        }
        return entry;
    }

    std::vector<RuleSchema> ordered_schemas() const {
        std::vector<RuleSchema> out;
        for (const auto& [k, v] : schemas_) out.insert(out.end(), v.begin(), v.end());
        return out;
    }

    std::vector<GeneratedSymbol> symbols() const {
        std::vector<GeneratedSymbol> out;
        for (const auto& s : syms_) out.push_back(s.g);
        return out;
    }

    const std::vector<SymInfo>& sym_infos() const { return syms_; }
    bool need_eq() const { return need_eq_; }
    bool need_lists() const { return need_lists_; }

private:
    std::string name(std::size_t k, const std::string& tag, Family fam, std::size_t arity,
                     const SymbolDecl* f = nullptr, Sort sort = {}, const std::string& extra = {}) {
        std::string n = (fam == Family::Psi || fam == Family::PsiI) ? "psi_" : "phi_";
        n += std::to_string(k);
        n += "_" + (extra.empty() ? tag : extra);
        syms_.push_back({{n, tag, std::to_string(k) + ":" + tag, arity}, fam, f, std::move(sort)});
        return n;
    }

    std::string prov(std::size_t k, const std::string& tag) const { return std::to_string(k) + ":" + tag; }

    void add(std::size_t k, SP lhs, Term rhs, const std::string& tag) {
        schemas_[k].push_back({std::move(lhs), std::move(rhs), prov(k, tag)});
    }

    Term var(const std::string& n, const Sort& s) const { return Term::var(n, sorted_ ? s : Sort{}); }
    SP pvar(const std::string& n, const Sort& s) const { return SP::var(n, sorted_ ? s : Sort{}); }
    SP wild(const Sort& s) const { return SP::wild(sorted_ ? s : Sort{}); }
    static Term bot(Term t) { return Term::app(kBot, {std::move(t)}); }
    static SP pbot(SP p) { return SP::app(kBot, {std::move(p)}); }

    // x@not-bot: every non-failure value of sort s
    SP filter(const std::string& x, const Sort& s) const {
        if (meta_) return SP::alias(x, AntiPattern::exactly(Term::app("appl", {Term::var("f"), Term::var("a")})));
        return SP::alias(x, AntiPattern::not_bot(sorted_ ? s : Sort{}));
    }

    template <class F>
    void filtered(std::size_t k, const std::string& phi, F rhs, const std::string& tag = "") {
        for (const auto& s : sorts_) add(k, SP::app(phi, {filter("x", s)}), rhs(var("x", s)), tag.empty() ? "filter" : tag);
    }

    void prop(std::size_t k, const std::string& phi) {
        for (const auto& s : sorts_) add(k, SP::app(phi, {pbot(pvar("x", s))}), bot(var("x", s)), "bot");
    }

    Term enc(const Term& t) const { return meta_ ? meta_encode(t) : t; }

    const std::string* lookup(const std::string& x) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == x) return &it->second;
        return nullptr;
    }

    std::string share_key(const Strategy& s) const {
        std::string key = s.str();
        for (const auto& x : free_vars(s)) {
            const std::string* n = lookup(x);
            key += "|" + x + "=" + (n ? *n : "?");
        }
        return key;
    }

    std::string visit(const Strategy& s) {
        if (s.kind() == StrategyKind::SVar) {
            counter_++;
            const std::string* n = lookup(s.var());
            if (!n) throw UnboundStrategyVariable(s.var());
            return *n;
        }
        std::string key;
        if (opt_.share_subterms) {
            key = share_key(s);
            if (auto it = shared_.find(key); it != shared_.end()) {
                counter_ += s.size();
                return it->second;
            }
        }
        std::size_t k = counter_++;
        std::string phi;
        switch (s.kind()) {
            case StrategyKind::Id:
                phi = name(k, "id", Family::Unary, 1);
                filtered(k, phi, [](const Term& x) { return x; });
                prop(k, phi);
                break;
            case StrategyKind::Fail:
                phi = name(k, "fail", Family::Unary, 1);
                filtered(k, phi, [](const Term& x) { return bot(x); });
                prop(k, phi);
                break;
            case StrategyKind::Rule:
                phi = name(k, "rule", Family::Unary, 1);
                rule(k, phi, s.lhs(), s.rhs());
                break;
            case StrategyKind::Seq: {
                phi = name(k, "seq", Family::Unary, 1);
                std::string aux = name(k, "seqaux", Family::SeqAux, 2);
                std::string p1 = visit(s.first());
                std::string p2 = visit(s.second());
                filtered(k, phi, [&](const Term& x) {
                    return Term::app(aux, {Term::app(p2, {Term::app(p1, {x})}), x});
                });
                prop(k, phi);
                for (const auto& so : sorts_) {
                    add(k, SP::app(aux, {filter("x", so), wild(so)}), var("x", so), "seqaux");
                    add(k, SP::app(aux, {pbot(wild(so)), pvar("x", so)}), bot(var("x", so)), "seqaux");
                }
                break;
            }
            case StrategyKind::Choice: {
                if (opt_.fuse_try_rule && s.first().kind() == StrategyKind::Rule &&
                    s.second().kind() == StrategyKind::Id) {
                    // l -> r <+ Identity as one group whose mismatch returns the subject
                    counter_ += 2;
                    phi = name(k, "try", Family::Unary, 1);
                    rule(k, phi, s.first().lhs(), s.first().rhs(), true);
                    break;
                }
                phi = name(k, "choice", Family::Unary, 1);
                std::string aux = name(k, "chaux", Family::Unary, 1);
                std::string p1 = visit(s.first());
                std::string p2 = visit(s.second());
                filtered(k, phi, [&](const Term& x) { return Term::app(aux, {Term::app(p1, {x})}); });
                prop(k, phi);
                for (const auto& so : sorts_) {
                    add(k, SP::app(aux, {pbot(pvar("x", so))}), Term::app(p2, {var("x", so)}), "chaux");
                    add(k, SP::app(aux, {filter("x", so)}), var("x", so), "chaux");
                }
                break;
            }
            case StrategyKind::Mu: {
                phi = name(k, "mu", Family::Unary, 1);
                std::string phX = name(k, "svar", Family::Unary, 1);
                scope_.emplace_back(s.var(), phX);
                std::string pb = visit(s.body());
                scope_.pop_back();
                filtered(k, phi, [&](const Term& x) { return Term::app(pb, {x}); });
                prop(k, phi);
                filtered(k, phX, [&](const Term& x) { return Term::app(pb, {x}); }, "svar");
                prop(k, phX);
                break;
            }
            case StrategyKind::All:
                phi = name(k, "all", Family::Unary, 1);
                if (meta_)
                    meta_all(k, phi, s.body());
                else
                    object_all(k, phi, s.body());
                break;
            case StrategyKind::One:
                phi = name(k, "one", Family::Unary, 1);
                if (meta_)
                    meta_one(k, phi, s.body());
                else
                    object_one(k, phi, s.body());
                break;
            case StrategyKind::SVar:
                break;
        }
        if (opt_.share_subterms) shared_[key] = phi;
        return phi;
    }

    void rule(std::size_t k, const std::string& phi, Term l, Term r, bool keep_on_mismatch = false) {
        if (sorted_) {
            try {
                l = sig_.annotate(l);
                r = sig_.annotate(r);
            } catch (const SortError& e) {
                throw SortError("rule " + l.str() + " -> " + r.str() + ": " + e.what());
            }
            if (l.sort() != r.sort())
                throw SortError("non-sort-preserving rewrite rule " + l.str() + " -> " + r.str() + " (" + l.sort() +
                                " vs " + r.sort() + ")");
        } else {
            l = erase_sorts(l);
            r = erase_sorts(r);
        }
        const Sort sl = sorted_ ? l.sort() : Sort{};
        TermEncoder e = meta_ ? &meta_encode : nullptr;
        if (l.is_var()) {
            add(k, SP::app(phi, {filter(l.name(), sl)}), enc(r), "rule");
        } else if (is_linear(l)) {
            add(k, SP::app(phi, {SP::of(enc(l))}), enc(r), "rule");
        } else {
            need_eq_ = true;
            Linearized lin = linearize(l);
            std::string aux = name(k, "ruleaux", Family::RuleAux, 2, nullptr, sl);
            Term lp = enc(lin.pattern);
            Term cond = equality_condition(lin);
            add(k, SP::app(phi, {SP::of(lp)}), Term::app(aux, {lp, cond}), "rule");
            add(k, SP::app(aux, {SP::of(lp), SP::app(kTrue)}), enc(r), "ruleaux");
            add(k, SP::app(aux, {SP::of(lp), SP::app(kFalse)}), keep_on_mismatch ? lp : bot(lp), "ruleaux");
            l = lin.pattern;
        }
        for (const auto& s : sorts_)
            add(k, SP::app(phi, {SP::alias("y", AntiPattern::not_term(l, sorted_ ? s : Sort{}, e))}),
                keep_on_mismatch ? var("y", s) : bot(var("y", s)), "fail");
        prop(k, phi);
    }

    std::vector<Term> generic_vars(const SymbolDecl& f) const {
        std::vector<Term> xs;
        for (std::size_t i = 0; i < f.arity(); ++i) xs.push_back(var("x" + std::to_string(i + 1), f.domain[i]));
        return xs;
    }

    void object_all(std::size_t k, const std::string& phi, const Strategy& body) {
        std::vector<std::string> psis;
        for (const auto& f : sig_.symbols())
            if (f.arity() > 0) psis.push_back(name(k, "psi", Family::Psi, f.arity() + 1, &f, {}, f.name));
        std::string pS = visit(body);
        prop(k, phi);
        std::size_t pi = 0;
        for (const auto& f : sig_.symbols()) {
            if (f.arity() == 0) {
                add(k, SP::app(phi, {SP::app(f.name)}), Term::app(f.name), "all");
                continue;
            }
            const std::string& psi = psis[pi++];
            auto xs = generic_vars(f);
            Term fx = Term::app(f.name, xs);
            std::vector<Term> calls;
            for (const auto& x : xs) calls.push_back(Term::app(pS, {x}));
            calls.push_back(fx);
            add(k, SP::app(phi, {SP::of(fx)}), Term::app(psi, calls), "all");
            std::vector<SP> ok;
            for (std::size_t i = 0; i < f.arity(); ++i) ok.push_back(filter(xs[i].name(), f.domain[i]));
            ok.push_back(wild(f.codomain));
            add(k, SP::app(psi, ok), fx, "psi");
            for (std::size_t i = 0; i < f.arity(); ++i) {
                std::vector<SP> ps;
                for (std::size_t j = 0; j < f.arity(); ++j)
                    ps.push_back(j == i ? pbot(wild(f.domain[j])) : wild(f.domain[j]));
                ps.push_back(pvar("x", f.codomain));
                add(k, SP::app(psi, ps), bot(var("x", f.codomain)), "psi");
            }
        }
    }

    void object_one(std::size_t k, const std::string& phi, const Strategy& body) {
        std::map<std::string, std::vector<std::string>> psis;
        for (const auto& f : sig_.symbols())
            for (std::size_t i = 1; i <= f.arity(); ++i)
                psis[f.name].push_back(
                    name(k, "psi", Family::PsiI, f.arity(), &f, {}, f.name + "_" + std::to_string(i)));
        std::string pS = visit(body);
        prop(k, phi);
        for (const auto& f : sig_.symbols()) {
            if (f.arity() == 0) {
                add(k, SP::app(phi, {SP::app(f.name)}), bot(Term::app(f.name)), "one");
                continue;
            }
            const auto& ps = psis[f.name];
            const std::size_t n = f.arity();
            auto xs = generic_vars(f);
            Term fx = Term::app(f.name, xs);
            {
                std::vector<Term> a{Term::app(pS, {xs[0]})};
                for (std::size_t j = 1; j < n; ++j) a.push_back(xs[j]);
                add(k, SP::app(phi, {SP::of(fx)}), Term::app(ps[0], a), "one");
            }
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<SP> l;
                for (std::size_t j = 0; j < i; ++j) l.push_back(pbot(SP::of(xs[j])));
                l.push_back(filter(xs[i].name(), f.domain[i]));
                for (std::size_t j = i + 1; j < n; ++j) l.push_back(SP::of(xs[j]));
                add(k, SP::app(ps[i], l), fx, "psi");
            }
            for (std::size_t i = 0; i + 1 < n; ++i) {
                std::vector<SP> l;
                std::vector<Term> r;
                for (std::size_t j = 0; j <= i; ++j) {
                    l.push_back(pbot(SP::of(xs[j])));
                    r.push_back(bot(xs[j]));
                }
                for (std::size_t j = i + 1; j < n; ++j) l.push_back(SP::of(xs[j]));
                r.push_back(Term::app(pS, {xs[i + 1]}));
                for (std::size_t j = i + 2; j < n; ++j) r.push_back(xs[j]);
                add(k, SP::app(ps[i], l), Term::app(ps[i + 1], r), "psi");
            }
            std::vector<SP> l;
            for (std::size_t j = 0; j < n; ++j) l.push_back(pbot(SP::of(xs[j])));
            add(k, SP::app(ps[n - 1], l), bot(fx), "psi");
        }
    }

    // Meta-level traversals walk the argument list of appl(f, args).
    void meta_all(std::size_t k, const std::string& phi, const Strategy& body) {
        need_lists_ = true;
        std::string L = name(k, "all", Family::Fixed, 1, nullptr, {}, "alllist");
        std::string A = name(k, "all", Family::Fixed, 4, nullptr, {}, "allaux");
        std::string pS = visit(body);
        auto V = [](const char* n) { return Term::var(n); };
        auto PV = [](const char* n) { return SP::var(n); };
        auto cons = [](Term h, Term t) { return Term::app("cons", {h, t}); };
        auto pcons = [](SP h, SP t) { return SP::app("cons", {h, t}); };
        Term nil = Term::app("nil");
        prop(k, phi);
        add(k, SP::app(phi, {SP::app("appl", {PV("f"), PV("args")})}),
            Term::app("propag", {Term::app("appl", {V("f"), Term::app(L, {V("args")})})}), "all");
        add(k, SP::app(L, {pcons(PV("h"), PV("t"))}),
            Term::app(A, {Term::app(pS, {V("h")}), V("t"), cons(V("h"), nil), nil}), "alllist");
        add(k, SP::app(L, {SP::app("nil")}), nil, "alllist");
        add(k, SP::app(A, {pbot(SP::wild()), PV("td"), PV("rt"), SP::wild()}),
            Term::app("bot_list", {Term::app("rconcat", {V("rt"), V("td")})}), "allaux");
        add(k, SP::app(A, {filter("x", {}), SP::app("nil"), SP::wild(), PV("rd")}),
            Term::app("reverse", {cons(V("x"), V("rd"))}), "allaux");
        add(k, SP::app(A, {filter("x", {}), pcons(PV("h"), PV("t")), PV("rt"), PV("rd")}),
            Term::app(A, {Term::app(pS, {V("h")}), V("t"), cons(V("h"), V("rt")), cons(V("x"), V("rd"))}), "allaux");
    }

    void meta_one(std::size_t k, const std::string& phi, const Strategy& body) {
        need_lists_ = true;
        std::string L = name(k, "one", Family::Fixed, 1, nullptr, {}, "onelist");
        std::string A = name(k, "one", Family::Fixed, 3, nullptr, {}, "oneaux");
        std::string pS = visit(body);
        auto V = [](const char* n) { return Term::var(n); };
        auto PV = [](const char* n) { return SP::var(n); };
        auto cons = [](Term h, Term t) { return Term::app("cons", {h, t}); };
        auto pcons = [](SP h, SP t) { return SP::app("cons", {h, t}); };
        Term nil = Term::app("nil");
        prop(k, phi);
        add(k, SP::app(phi, {SP::app("appl", {PV("f"), PV("args")})}),
            Term::app("propag", {Term::app("appl", {V("f"), Term::app(L, {V("args")})})}), "one");
        add(k, SP::app(L, {pcons(PV("h"), PV("t"))}), Term::app(A, {Term::app(pS, {V("h")}), V("t"), cons(V("h"), nil)}),
            "onelist");
        add(k, SP::app(L, {SP::app("nil")}), Term::app("bot_list", {nil}), "onelist");
        add(k, SP::app(A, {pbot(SP::wild()), SP::app("nil"), PV("rt")}),
            Term::app("bot_list", {Term::app("reverse", {V("rt")})}), "oneaux");
        add(k, SP::app(A, {pbot(SP::wild()), pcons(PV("h"), PV("t")), PV("rt")}),
            Term::app(A, {Term::app(pS, {V("h")}), V("t"), cons(V("h"), V("rt"))}), "oneaux");
        add(k, SP::app(A, {filter("x", {}), PV("td"), pcons(SP::wild(), PV("rt"))}),
            Term::app("rconcat", {V("rt"), cons(V("x"), V("td"))}), "oneaux");
    }

    const Signature& sig_;
    bool sorted_, meta_;
    TranslateOptions opt_;
    std::vector<Sort> sorts_;
    std::size_t counter_ = 0;
    std::vector<std::pair<std::string, std::string>> scope_;
    std::map<std::size_t, std::vector<RuleSchema>> schemas_;
    std::vector<SymInfo> syms_;
    std::map<std::string, std::string> shared_;
    bool need_eq_ = false, need_lists_ = false;
};

void append_unique(std::vector<PlainRule>& out, std::unordered_set<PlainRule, PlainRuleHash>& seen,
                   std::vector<PlainRule> rs) {
    for (auto& r : rs)
        if (seen.insert(r).second) out.push_back(std::move(r));
}

Signature extended_signature(const Signature& sig, const std::vector<SymInfo>& syms, bool need_eq) {
    Signature ext = sig;
    if (need_eq) {
        if (sig.has_sort(kBoolSort)) throw SortError(std::string("sort name ") + kBoolSort + " is reserved");
        ext.add_sort(kBoolSort);
    }
    const auto& sorts = sig.sorts();
    for (const auto& s : sorts) ext.add_symbol({kBot, {s}, s});
    for (const auto& si : syms) {
        switch (si.family) {
            case Family::Unary:
                for (const auto& s : sorts) ext.add_symbol({si.g.name, {s}, s});
                break;
            case Family::SeqAux:
                for (const auto& s : sorts) ext.add_symbol({si.g.name, {s, s}, s});
                break;
            case Family::Psi: {
                auto dom = si.f->domain;
                dom.push_back(si.f->codomain);
                ext.add_symbol({si.g.name, dom, si.f->codomain});
                break;
            }
            case Family::PsiI:
                ext.add_symbol({si.g.name, si.f->domain, si.f->codomain});
                break;
            case Family::RuleAux:
                ext.add_symbol({si.g.name, {si.sort, kBoolSort}, si.sort});
                break;
            case Family::Fixed:
                break;
        }
    }
    if (need_eq) {
        for (const auto& s : sorts) ext.add_symbol({kEq, {s, s}, kBoolSort});
        ext.add_symbol({kAnd, {kBoolSort, kBoolSort}, kBoolSort});
        ext.add_symbol({kTrue, {}, kBoolSort});
        ext.add_symbol({kFalse, {}, kBoolSort});
    }
    return ext;
}

Encoding build(Mode mode, const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt,
               bool translate_main = true) {
    const bool sorted = mode == Mode::Sorted || mode == Mode::SortedNoOverload;
    const bool meta = mode == Mode::Meta;
    Translator tr(sig, sorted, meta, opt);
    Encoding e;
    e.mode = mode;
    e.source = sig;
    e.entry = tr.run(ctx, s, translate_main);
    e.symbols = tr.symbols();
    e.schemas = tr.ordered_schemas();

    std::unordered_set<PlainRule, PlainRuleHash> seen;
    for (const auto& sc : e.schemas) append_unique(e.rules, seen, expand_schema(sc, sig));
    if (tr.need_eq()) {
        append_unique(e.rules, seen, equality_rules(sig, sorted, meta ? &meta_encode : nullptr));
        e.symbols.push_back({kEq, "eq", "eq", 2});
        e.symbols.push_back({kAnd, "eq", "eq", 2});
        e.symbols.push_back({kTrue, "eq", "eq", 0});
        e.symbols.push_back({kFalse, "eq", "eq", 0});
    }
    if (tr.need_lists()) append_unique(e.rules, seen, list_rules());

    if (sorted) {
        Signature ext = extended_signature(sig, tr.sym_infos(), tr.need_eq());
        for (auto& r : e.rules) {
            try {
                r.lhs = ext.annotate(r.lhs);
                r.rhs = ext.annotate(r.rhs);
            } catch (const SortError& err) {
                throw SortError("generated rule " + r.str() + " is ill-sorted: " + err.what());
            }
            if (r.lhs.sort() != r.rhs.sort())
                throw SortError("generated rule " + r.str() + " is not sort preserving");
        }
        e.extended = std::move(ext);
    }
    return e;
}

bool overloaded_generated(const std::string& n, const std::set<std::string>& unary) {
    return n == kBot || n == kEq || unary.count(n) > 0;
}

Term suffix_overloads(const Term& t, const std::set<std::string>& over) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(suffix_overloads(a, over));
    std::string n = t.name();
    if (overloaded_generated(n, over)) n += "_" + t.arg(0).sort();
    return Term::app(n, std::move(args), t.sort());
}

}  // namespace

Encoding translate(const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt) {
    return build(Mode::Unsorted, sig, ctx, s, opt);
}

Encoding translate_sorted(const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt) {
    return build(Mode::Sorted, sig, ctx, s, opt);
}

Encoding remove_overloading(const Encoding& sorted) {
    if (sorted.mode != Mode::Sorted || !sorted.extended)
        throw Error("overloading can only be removed from a sorted encoding");
    Encoding e = sorted;
    e.mode = Mode::SortedNoOverload;
    // bot, equality and every per-sort phi family get the sort suffix; psi
    // symbols have a single profile already
    std::set<std::string> over;
    for (const auto& g : e.symbols)
        if (g.tag != "psi" && g.tag != "eq") over.insert(g.name);
    for (auto& r : e.rules) {
        r.lhs = suffix_overloads(r.lhs, over);
        r.rhs = suffix_overloads(r.rhs, over);
    }
    Signature ext;
    for (const auto& s : e.extended->sorts()) ext.add_sort(s);
    for (const auto& d : e.extended->symbols()) {
        SymbolDecl nd = d;
        if (overloaded_generated(d.name, over)) nd.name += "_" + d.domain[0];
        ext.add_symbol(nd);
    }
    e.extended = std::move(ext);
    return e;
}

Encoding translate_sorted_no_overload(const Signature& sig, const Context& ctx, const Strategy& s,
                                      TranslateOptions opt) {
    return remove_overloading(build(Mode::Sorted, sig, ctx, s, opt));
}

Encoding translate_meta(const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt) {
    return build(Mode::Meta, sig, ctx, s, opt);
}

Encoding encode(Mode m, const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt) {
    switch (m) {
        case Mode::Unsorted: return translate(sig, ctx, s, opt);
        case Mode::Sorted: return translate_sorted(sig, ctx, s, opt);
        case Mode::SortedNoOverload: return translate_sorted_no_overload(sig, ctx, s, opt);
        case Mode::Meta: return translate_meta(sig, ctx, s, opt);
    }
    throw Error("unknown mode");
}

std::vector<RuleSchema> translate_context(const Signature& sig, const Context& outer, const Context& bound) {
    Context all = outer;
    all.insert(all.end(), bound.begin(), bound.end());
    Translator tr(sig, false, false, {});
    tr.run(all, Strategy::id(), false, outer.size());
    return tr.ordered_schemas();
}

std::vector<PlainRule> collapse_equal_rules(const std::vector<PlainRule>& rules) {
    std::vector<PlainRule> out;
    std::unordered_set<PlainRule, PlainRuleHash> seen;
    for (const auto& r : rules) {
        auto [l, rr] = canonical_vars(erase_sorts(r.lhs), erase_sorts(r.rhs));
        if (seen.insert({l, rr, ""}).second) out.push_back(r);
    }
    return out;
}

Sort sort_check(const Encoding& enc, const Term& t) {
    if (!enc.extended) throw SortError("encoding in mode " + mode_name(enc.mode) + " has no sorts");
    return enc.extended->sort_of(t);
}

}  // namespace strat
