#include "strat2trs/encoding.hpp"

namespace strat {

std::string meta_symbol(const std::string& f) { return f + "_sym"; }

Term meta_encode(const Term& t) {
    if (t.is_var()) return t;
    if (t.name() == kBot && t.arity() == 1) return Term::app(kBot, {meta_encode(t.arg(0))});
    Term list = Term::app("nil");
    for (std::size_t i = t.arity(); i-- > 0;) list = Term::app("cons", {meta_encode(t.arg(i)), list});
    return Term::app("appl", {Term::app(meta_symbol(t.name())), list});
}

Term meta_decode(const Term& t, const Signature& sig) {
    if (t.is_var()) return t;
    if (t.name() == kBot && t.arity() == 1) return Term::app(kBot, {meta_decode(t.arg(0), sig)});
    if (t.name() != "appl" || t.arity() != 2) throw MetaError("not a meta-term: " + t.str());
    const Term& head = t.arg(0);
    const std::string& hn = head.name();
    if (head.is_var() || head.arity() != 0 || hn.size() <= 4 || hn.compare(hn.size() - 4, 4, "_sym") != 0)
        throw MetaError("bad symbol constant in " + t.str());
    std::string f = hn.substr(0, hn.size() - 4);
    std::vector<Term> args;
    const Term* l = &t.arg(1);
    while (!l->is_var() && l->name() == "cons" && l->arity() == 2) {
        args.push_back(meta_decode(l->arg(0), sig));
        l = &l->arg(1);
    }
    if (l->is_var() || l->name() != "nil" || l->arity() != 0) throw MetaError("improper argument list in " + t.str());
    auto ov = sig.overloads(f);
    if (ov.empty()) throw MetaError("unknown symbol " + f + " in meta-term");
    bool arity_ok = false;
    for (const SymbolDecl* d : ov) arity_ok = arity_ok || d->arity() == args.size();
    if (!arity_ok) throw MetaError("symbol " + f + " applied to " + std::to_string(args.size()) + " arguments");
    return Term::app(f, std::move(args));
}

std::vector<PlainRule> list_rules() {
    auto V = [](const char* n) { return Term::var(n); };
    auto A = [](const char* f, std::vector<Term> a) { return Term::app(f, std::move(a)); };
    Term nil = Term::app("nil");
    const std::string p = "lists";
    return {
        {A("rappend", {nil, V("x")}), A("cons", {V("x"), nil}), p},
        {A("rappend", {A("cons", {V("h"), V("t")}), V("x")}), A("cons", {V("h"), A("rappend", {V("t"), V("x")})}), p},
        {A("reverse", {nil}), nil, p},
        {A("reverse", {A("cons", {V("h"), V("t")})}), A("rappend", {A("reverse", {V("t")}), V("h")}), p},
        {A("rconcat", {nil, V("x")}), V("x"), p},
        {A("rconcat", {A("cons", {V("h"), V("t")}), V("x")}), A("rconcat", {V("t"), A("cons", {V("h"), V("x")})}), p},
        {A("propag", {A("appl", {V("f"), A("bot_list", {V("args")})})}), A(kBot, {A("appl", {V("f"), V("args")})}), p},
        {A("propag", {A("appl", {V("f"), A("cons", {V("h"), V("t")})})}), A("appl", {V("f"), A("cons", {V("h"), V("t")})}),
         p},
        {A("propag", {A("appl", {V("f"), nil})}), A("appl", {V("f"), nil}), p},
    };
}

bool Encoding::is_bot(const Term& t) const {
    if (t.is_var() || t.arity() != 1) return false;
    if (t.name() == kBot) return true;
    return mode == Mode::SortedNoOverload && t.name().rfind(std::string(kBot) + "_", 0) == 0 &&
           t.name() != "bot_list";
}

Term Encoding::entry_term(const Term& t) const {
    switch (mode) {
        case Mode::Unsorted:
            return Term::app(entry, {erase_sorts(t)});
        case Mode::Meta:
            return Term::app(entry, {meta_encode(erase_sorts(t))});
        case Mode::Sorted: {
            Term a = source.annotate(t);
            return Term::app(entry, {a}, a.sort());
        }
        case Mode::SortedNoOverload: {
            Term a = source.annotate(t);
            return Term::app(entry + "_" + a.sort(), {a}, a.sort());
        }
    }
    throw Error("unknown mode");
}

static bool is_source_term(const Term& t, const Signature& sig) {
    if (t.is_var()) return false;
    auto ov = sig.overloads(t.name());
    bool ok = false;
    for (const SymbolDecl* d : ov) ok = ok || d->arity() == t.arity();
    if (!ok) return false;
    for (const auto& a : t.args())
        if (!is_source_term(a, sig)) return false;
    return true;
}

Encoding::Readback Encoding::read_back(const Term& nf) const {
    Readback rb;
    bool failed = is_bot(nf);
    Term body = failed ? nf.arg(0) : nf;
    if (mode == Mode::Meta) {
        try {
            body = meta_decode(body, source);
        } catch (const MetaError&) {
            return rb;
        }
    }
    if (!is_source_term(body, source)) return rb;
    rb.kind = failed ? Readback::Kind::Failure : Readback::Kind::Value;
    rb.term = erase_sorts(body);
    return rb;
}

}  // namespace strat
