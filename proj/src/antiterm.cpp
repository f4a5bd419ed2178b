#include "strat2trs/antiterm.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace strat {

SchemaPattern SchemaPattern::var(std::string n, Sort s) {
    SchemaPattern p;
    p.kind = Kind::Var;
    p.name = std::move(n);
    p.sort = std::move(s);
    return p;
}

SchemaPattern SchemaPattern::wild(Sort s) {
    SchemaPattern p;
    p.kind = Kind::Wild;
    p.sort = std::move(s);
    return p;
}

SchemaPattern SchemaPattern::app(std::string f, std::vector<SchemaPattern> args) {
    SchemaPattern p;
    p.kind = Kind::App;
    p.name = std::move(f);
    p.args = std::move(args);
    return p;
}

SchemaPattern SchemaPattern::alias(std::string n, AntiPattern a) {
    SchemaPattern p;
    p.kind = Kind::Alias;
    p.name = std::move(n);
    p.anti = std::move(a);
    return p;
}

SchemaPattern SchemaPattern::of(const Term& t) {
    if (t.is_var()) return var(t.name(), t.sort());
    std::vector<SchemaPattern> args;
    for (const auto& a : t.args()) args.push_back(of(a));
    return app(t.name(), std::move(args));
}

std::string SchemaPattern::str() const {
    switch (kind) {
        case Kind::Var: return name;
        case Kind::Wild: return "_";
        case Kind::Alias: {
            std::string s = name + "@";
            switch (anti.kind) {
                case AntiPattern::Kind::NotBot: return s + "!bot" + (anti.sort.empty() ? "" : "_" + anti.sort);
                case AntiPattern::Kind::NotTerm:
                    return s + "!" + (anti.sort.empty() ? "" : "_" + anti.sort + " ") + anti.term.str();
                case AntiPattern::Kind::Exactly: return s + anti.term.str();
            }
            return s;
        }
        case Kind::App: {
            std::string s = name;
            if (args.empty()) return s;
            s += '(';
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i) s += ',';
                s += args[i].str();
            }
            return s + ')';
        }
    }
    return "?";
}

std::string RuleSchema::str() const { return lhs.str() + " -> " + rhs.str(); }

namespace {

// Fresh variables carry a '#' that no parsed identifier can contain; they are
// renamed to readable names once a pattern is complete.
struct FreshSupply {
    std::string prefix;
    std::size_t next = 0;
    Term make(const Sort& s) { return Term::var(prefix + std::to_string(next++), s); }
};

Term rename_vars(const Term& t, std::map<std::string, std::string>& ren,
                 const std::function<std::string()>& fresh_name, bool only_hash) {
    if (t.is_var()) {
        if (only_hash && t.name().find('#') == std::string::npos) return t;
        auto it = ren.find(t.name());
        if (it == ren.end()) it = ren.emplace(t.name(), fresh_name()).first;
        return Term::var(it->second, t.sort());
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back(rename_vars(a, ren, fresh_name, only_hash));
    return Term::app(t.name(), std::move(args), t.sort());
}

Term canonical(const Term& t, const std::string& base) {
    std::map<std::string, std::string> ren;
    std::size_t k = 0;
    return rename_vars(t, ren, [&] { return base + std::to_string(++k); }, false);
}

Term fresh_copy(const Term& t, FreshSupply& fs) {
    if (t.is_var()) return fs.make(t.sort());
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(fresh_copy(a, fs));
    return Term::app(t.name(), std::move(args), t.sort());
}

Term generic(const SymbolDecl& d, FreshSupply& fs, bool sorted) {
    std::vector<Term> args;
    for (const auto& s : d.domain) args.push_back(fs.make(sorted ? s : Sort{}));
    return Term::app(d.name, std::move(args), sorted ? d.codomain : Sort{});
}

std::vector<Term> not_bot_raw(const Signature& sig, const std::optional<Sort>& sort, FreshSupply& fs) {
    std::vector<Term> out;
    if (sort) {
        for (const SymbolDecl* d : sig.symbols_of_sort(*sort)) out.push_back(generic(*d, fs, true));
    } else {
        for (const auto& d : sig.symbols()) out.push_back(generic(d, fs, false));
    }
    return out;
}

const SymbolDecl* decl_of(const Term& t, const Signature& sig) {
    if (const SymbolDecl* d = sig.unique(t.name())) return d;
    auto ov = sig.overloads(t.name());
    if (ov.empty()) throw SortError("unknown symbol " + t.name() + " in anti-pattern");
    if (!t.sort().empty())
        for (const SymbolDecl* d : ov)
            if (d->codomain == t.sort() && d->arity() == t.arity()) return d;
    throw SortError("cannot resolve overloaded symbol " + t.name() + " in anti-pattern");
}

std::vector<Term> antiterm_raw(const Term& t, const Signature& sig, const std::optional<Sort>& sort,
                               FreshSupply& fs) {
    if (t.is_var()) {
        if (!sort || t.sort().empty() || t.sort() == *sort) return {};
        return not_bot_raw(sig, sort, fs);
    }
    const SymbolDecl* d = decl_of(t, sig);
    if (sort && d->codomain != *sort) return not_bot_raw(sig, sort, fs);
    std::vector<Term> out;
    auto candidates = sort ? sig.symbols_of_sort(*sort) : [&] {
        std::vector<const SymbolDecl*> all;
        for (const auto& g : sig.symbols()) all.push_back(&g);
        return all;
    }();
    for (const SymbolDecl* g : candidates)
        if (!(*g == *d)) out.push_back(generic(*g, fs, sort.has_value()));
    const Sort res = sort ? d->codomain : Sort{};
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (t.arg(i).is_var()) continue;
        std::optional<Sort> si = sort ? std::optional<Sort>(d->domain[i]) : std::nullopt;
        for (const Term& p : antiterm_raw(t.arg(i), sig, si, fs)) {
            std::vector<Term> args;
            // earlier positions keep their positive pattern so the members stay disjoint
            for (std::size_t j = 0; j < i; ++j) {
                Term kept = fresh_copy(t.arg(j), fs);
                if (sort && !kept.is_var() && sig.well_sorted(kept)) kept = sig.annotate(kept);
                args.push_back(kept);
            }
            args.push_back(p);
            for (std::size_t j = i + 1; j < t.arity(); ++j) args.push_back(fs.make(sort ? d->domain[j] : Sort{}));
            out.push_back(Term::app(d->name, std::move(args), res));
        }
    }
    return out;
}

Term strip_if_unsorted(const Term& t, bool sorted) { return sorted ? t : erase_sorts(t); }

// Fresh-copies vars in t with sorts inferred from the signature when sorted.
Term prepare_pattern(const Term& t, const Signature& sig, bool sorted) {
    if (!sorted) return erase_sorts(t);
    if (t.is_var()) return t;
    try {
        return sig.annotate(t);
    } catch (const SortError&) {
        return t;
    }
}

}  // namespace

std::vector<Term> expand_not_bot(const Signature& sig, const std::optional<Sort>& sort) {
    FreshSupply fs{"#", 0};
    std::vector<Term> out;
    for (const Term& p : not_bot_raw(sig, sort, fs)) out.push_back(canonical(p, "x"));
    return out;
}

std::vector<Term> expand_antiterm(const Term& t, const Signature& sig, const std::optional<Sort>& sort) {
    if (!is_linear(t)) throw Error("anti-pattern expansion needs a linear term: " + t.str());
    FreshSupply fs{"#", 0};
    Term u = prepare_pattern(t, sig, sort.has_value());
    std::vector<Term> out;
    for (const Term& p : antiterm_raw(u, sig, sort, fs)) out.push_back(canonical(strip_if_unsorted(p, sort.has_value()), "x"));
    return out;
}

namespace {

struct AliasSite {
    std::string name;
    std::vector<Term> alternatives;
};

std::vector<Term> alternatives_for(const AntiPattern& a, const Signature& sig, FreshSupply& fs) {
    std::vector<Term> alts;
    std::optional<Sort> s = a.sort.empty() ? std::nullopt : std::optional<Sort>(a.sort);
    switch (a.kind) {
        case AntiPattern::Kind::NotBot:
            alts = not_bot_raw(sig, s, fs);
            break;
        case AntiPattern::Kind::NotTerm: {
            Term u = prepare_pattern(a.term, sig, s.has_value());
            alts = antiterm_raw(u, sig, s, fs);
            break;
        }
        case AntiPattern::Kind::Exactly:
            alts.push_back(fresh_copy(a.term, fs));
            break;
    }
    if (a.encode)
        for (auto& t : alts) t = a.encode(t);
    return alts;
}

void collect_sites(const SchemaPattern& p, const Signature& sig, std::vector<AliasSite>& sites,
                   std::set<std::string>& named) {
    switch (p.kind) {
        case SchemaPattern::Kind::Var:
            named.insert(p.name);
            return;
        case SchemaPattern::Kind::Wild:
            return;
        case SchemaPattern::Kind::App:
            for (const auto& a : p.args) collect_sites(a, sig, sites, named);
            return;
        case SchemaPattern::Kind::Alias: {
            named.insert(p.name);
            FreshSupply fs{"#" + std::to_string(sites.size()) + "_", 0};
            sites.push_back({p.name, alternatives_for(p.anti, sig, fs)});
            return;
        }
    }
}

Term build_lhs(const SchemaPattern& p, const std::vector<AliasSite>& sites, const std::vector<std::size_t>& choice,
               std::size_t& site_idx, std::size_t& wild_idx) {
    switch (p.kind) {
        case SchemaPattern::Kind::Var:
            return Term::var(p.name, p.sort);
        case SchemaPattern::Kind::Wild:
            return Term::var("#w" + std::to_string(wild_idx++), p.sort);
        case SchemaPattern::Kind::App: {
            std::vector<Term> args;
            for (const auto& a : p.args) args.push_back(build_lhs(a, sites, choice, site_idx, wild_idx));
            return Term::app(p.name, std::move(args));
        }
        case SchemaPattern::Kind::Alias: {
            std::size_t k = site_idx++;
            return sites[k].alternatives[choice[k]];
        }
    }
    return {};
}

}  // namespace

std::size_t schema_product_size(const RuleSchema& schema, const Signature& sig) {
    std::vector<AliasSite> sites;
    std::set<std::string> named;
    collect_sites(schema.lhs, sig, sites, named);
    std::size_t n = 1;
    for (const auto& s : sites) n *= s.alternatives.size();
    return n;
}

std::vector<PlainRule> expand_schema(const RuleSchema& schema, const Signature& sig) {
    std::vector<AliasSite> sites;
    std::set<std::string> named;
    collect_sites(schema.lhs, sig, sites, named);
    for (const auto& v : variables(schema.rhs)) named.insert(v);
    for (const auto& s : sites)
        if (s.alternatives.empty()) return {};

    std::vector<PlainRule> out;
    std::vector<std::size_t> choice(sites.size(), 0);
    while (true) {
        std::size_t si = 0, wi = 0;
        Term lhs = build_lhs(schema.lhs, sites, choice, si, wi);
        Substitution sigma;
        for (std::size_t k = 0; k < sites.size(); ++k) sigma.bind(sites[k].name, sites[k].alternatives[choice[k]]);
        Term rhs = apply_subst(sigma, schema.rhs);

        std::map<std::string, std::string> ren;
        std::size_t counter = 0;
        auto fresh_name = [&]() {
            std::string n;
            do n = "y" + std::to_string(++counter);
            while (named.count(n));
            return n;
        };
        lhs = rename_vars(lhs, ren, fresh_name, true);
        rhs = rename_vars(rhs, ren, fresh_name, true);
        out.push_back({lhs, rhs, schema.provenance});

        std::size_t k = 0;
        for (; k < sites.size(); ++k) {
            if (++choice[k] < sites[k].alternatives.size()) break;
            choice[k] = 0;
        }
        if (k == sites.size()) break;
    }
    return out;
}

Linearized linearize(const Term& l) {
    std::map<std::string, std::size_t> seen;
    std::set<std::string> names;
    for (const auto& v : variables(l)) names.insert(v);
    Linearized out;
    std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
        if (t.is_var()) {
            auto& n = seen[t.name()];
            if (n++ == 0) return t;
            std::string fresh;
            std::size_t k = n - 1;
            do fresh = t.name() + "_" + std::to_string(k++);
            while (names.count(fresh));
            names.insert(fresh);
            Term renamed = Term::var(fresh, t.sort());
            out.equations.emplace_back(Term::var(t.name(), t.sort()), renamed);
            return renamed;
        }
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(go(a));
        return Term::app(t.name(), std::move(args), t.sort());
    };
    out.pattern = go(l);
    return out;
}

Term equality_condition(const Linearized& lin, TermEncoder) {
    if (lin.equations.empty()) return Term::app(kTrue, {}, kBoolSort);
    Term acc;
    for (std::size_t k = lin.equations.size(); k-- > 0;) {
        const auto& [a, b] = lin.equations[k];
        Term eq = Term::app(kEq, {a, b}, kBoolSort);
        acc = acc.valid() ? Term::app(kAnd, {eq, acc}, kBoolSort) : eq;
    }
    return acc;
}

std::vector<PlainRule> equality_rules(const Signature& sig, bool sorted, TermEncoder enc) {
    std::vector<PlainRule> out;
    auto E = [&](const Term& t) { return enc ? enc(t) : t; };
    const Sort B = sorted ? Sort(kBoolSort) : Sort{};
    auto T = [&] { return Term::app(kTrue, {}, B); };
    auto F = [&] { return Term::app(kFalse, {}, B); };
    auto generic_with = [&](const SymbolDecl& d, const std::string& base) {
        std::vector<Term> args;
        for (std::size_t i = 0; i < d.arity(); ++i)
            args.push_back(Term::var(base + std::to_string(i + 1), sorted ? d.domain[i] : Sort{}));
        return Term::app(d.name, std::move(args), sorted ? d.codomain : Sort{});
    };
    for (const auto& f : sig.symbols()) {
        Term lx = generic_with(f, "x"), ly = generic_with(f, "y");
        Term rhs = T();
        for (std::size_t i = f.arity(); i-- > 0;)
            rhs = Term::app(kAnd, {Term::app(kEq, {lx.arg(i), ly.arg(i)}, B), rhs}, B);
        out.push_back({Term::app(kEq, {E(lx), E(ly)}, B), rhs, "eq"});
    }
    for (const auto& f : sig.symbols()) {
        for (const auto& g : sig.symbols()) {
            if (f == g) continue;
            if (sorted && f.codomain != g.codomain) continue;
            out.push_back({Term::app(kEq, {E(generic_with(f, "x")), E(generic_with(g, "y"))}, B), F(), "eq"});
        }
    }
    Term x = Term::var("x", B);
    out.push_back({Term::app(kAnd, {T(), x}, B), x, "eq"});
    out.push_back({Term::app(kAnd, {F(), x}, B), F(), "eq"});
    out.push_back({Term::app(kAnd, {x, T()}, B), x, "eq"});
    return out;
}

}  // namespace strat
