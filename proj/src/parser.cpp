#include "strat2trs/parser.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace strat {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Eq, Bar, Semi, LtPlus, Dot, LBrack, RBrack, Arrow, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, col;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Eq: return "'='";
        case Tok::Bar: return "'|'";
        case Tok::Semi: return "';'";
        case Tok::LtPlus: return "'<+'";
        case Tok::Dot: return "'.'";
        case Tok::LBrack: return "'['";
        case Tok::RBrack: return "']'";
        case Tok::Arrow: return "'->'";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto adv = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') adv(1);
            continue;
        }
        std::size_t l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), l, cl});
            adv(j - i);
            continue;
        }
        auto two = src.substr(i, 2);
        if (two == "<+") {
            out.push_back({Tok::LtPlus, two, l, cl});
            adv(2);
            continue;
        }
        if (two == "->") {
            out.push_back({Tok::Arrow, two, l, cl});
            adv(2);
            continue;
        }
        Tok k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Eq; break;
            case '|': k = Tok::Bar; break;
            case ';': k = Tok::Semi; break;
            case '.': k = Tok::Dot; break;
            case '[': k = Tok::LBrack; break;
            case ']': k = Tok::RBrack; break;
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
        }
        out.push_back({k, std::string(1, c), l, cl});
        adv(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

// Term syntax tree before symbol resolution.
struct RawTerm {
    std::string name;
    bool call = false;
    std::vector<RawTerm> args;
    std::size_t line, col;
};

class Parser {
public:
    Parser(std::vector<Token> toks, const Signature* sig) : toks_(std::move(toks)), sig_(sig) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok t) const { return peek().kind == t; }
    bool at_word(const std::string& w) const { return at(Tok::Ident) && peek().text == w; }

    Token expect(Tok t) {
        if (!at(t))
            throw SyntaxError(std::string("expected ") + tok_name(t) + ", found " + describe(peek()), peek().line,
                              peek().col);
        return toks_[pos_++];
    }
    void expect_word(const std::string& w) {
        if (!at_word(w)) throw SyntaxError("expected '" + w + "', found " + describe(peek()), peek().line, peek().col);
        ++pos_;
    }
    static std::string describe(const Token& t) {
        if (t.kind == Tok::Ident) return "'" + t.text + "'";
        return tok_name(t.kind);
    }

    Program program() {
        Program prog;
        expect_word("abstract");
        expect_word("syntax");
        struct Ctor {
            Token name;
            std::vector<Token> domain;
            std::string sort;
        };
        std::vector<Ctor> ctors;
        std::vector<std::string> sort_names;
        while (!at_word("strategies") && !at(Tok::End)) {
            Token sname = expect(Tok::Ident);
            expect(Tok::Eq);
            sort_names.push_back(sname.text);
            do {
                Ctor c{expect(Tok::Ident), {}, sname.text};
                if (at(Tok::LParen)) {
                    ++pos_;
                    if (!at(Tok::RParen)) {
                        c.domain.push_back(expect(Tok::Ident));
                        while (at(Tok::Comma)) {
                            ++pos_;
                            c.domain.push_back(expect(Tok::Ident));
                        }
                    }
                    expect(Tok::RParen);
                }
                ctors.push_back(std::move(c));
            } while (at(Tok::Bar) && (++pos_, true));
        }
        for (const auto& s : sort_names) prog.signature.add_sort(s);
        std::set<std::string> seen;
        for (const auto& c : ctors) {
            if (is_reserved_symbol(c.name.text))
                throw SyntaxError("constructor name '" + c.name.text + "' is reserved for generated symbols",
                                  c.name.line, c.name.col);
            if (!seen.insert(c.name.text).second)
                throw SyntaxError("constructor '" + c.name.text + "' declared twice", c.name.line, c.name.col);
            SymbolDecl d{c.name.text, {}, c.sort};
            for (const auto& s : c.domain) {
                if (!prog.signature.has_sort(s.text))
                    throw SyntaxError("undeclared sort '" + s.text + "'", s.line, s.col);
                d.domain.push_back(s.text);
            }
            prog.signature.add_symbol(std::move(d));
        }
        sig_ = &prog.signature;
        expect_word("strategies");
        std::set<std::string> defined;
        while (!at(Tok::End)) {
            Definition def;
            Token name = expect(Tok::Ident);
            def.name = name.text;
            if (at(Tok::LParen)) {
                ++pos_;
                if (!at(Tok::RParen)) {
                    def.params.push_back(expect(Tok::Ident).text);
                    while (at(Tok::Comma)) {
                        ++pos_;
                        def.params.push_back(expect(Tok::Ident).text);
                    }
                }
                expect(Tok::RParen);
            }
            expect(Tok::Eq);
            def.body = strategy();
            if (!defined.insert(def.name).second)
                throw SyntaxError("strategy '" + def.name + "' defined twice", name.line, name.col);
            prog.definitions.push_back(std::move(def));
        }
        return prog;
    }

    RawPtr strategy() {
        RawPtr left = sequence();
        if (at(Tok::LtPlus)) {
            Token t = toks_[pos_++];
            RawPtr right = strategy();
            return node(RawStrategy::Kind::Choice, t, {left, right});
        }
        return left;
    }

    RawPtr sequence() {
        RawPtr left = atom();
        if (at(Tok::Semi)) {
            Token t = toks_[pos_++];
            RawPtr right = sequence();
            return node(RawStrategy::Kind::Seq, t, {left, right});
        }
        return left;
    }

    RawPtr atom() {
        const Token& t = peek();
        if (at(Tok::LParen)) {
            ++pos_;
            RawPtr s = strategy();
            expect(Tok::RParen);
            return s;
        }
        if (at(Tok::LBrack)) {
            Token open = toks_[pos_++];
            RawTerm l = raw_term();
            expect(Tok::Arrow);
            RawTerm r = raw_term();
            expect(Tok::RBrack);
            auto n = std::make_shared<RawStrategy>();
            n->kind = RawStrategy::Kind::Rule;
            n->line = open.line;
            n->col = open.col;
            auto [lt, rt] = resolve_rule(l, r);
            n->lhs = lt;
            n->rhs = rt;
            return n;
        }
        if (!at(Tok::Ident)) throw SyntaxError("expected a strategy, found " + describe(t), t.line, t.col);
        Token id = toks_[pos_++];
        if (id.text == "Identity") return node(RawStrategy::Kind::Id, id, {});
        if (id.text == "Fail") return node(RawStrategy::Kind::Fail, id, {});
        if (id.text == "mu") {
            Token v = expect(Tok::Ident);
            expect(Tok::Dot);
            RawPtr body = strategy();
            auto n = node(RawStrategy::Kind::Mu, id, {body});
            const_cast<RawStrategy&>(*n).name = v.text;
            return n;
        }
        if ((id.text == "one" || id.text == "all") && at(Tok::LParen)) {
            ++pos_;
            RawPtr body = strategy();
            expect(Tok::RParen);
            return node(id.text == "one" ? RawStrategy::Kind::One : RawStrategy::Kind::All, id, {body});
        }
        if (at(Tok::LParen)) {
            ++pos_;
            std::vector<RawPtr> args;
            if (!at(Tok::RParen)) {
                args.push_back(strategy());
                while (at(Tok::Comma)) {
                    ++pos_;
                    args.push_back(strategy());
                }
            }
            expect(Tok::RParen);
            auto n = node(RawStrategy::Kind::Call, id, args);
            const_cast<RawStrategy&>(*n).name = id.text;
            return n;
        }
        auto n = node(RawStrategy::Kind::Name, id, {});
        const_cast<RawStrategy&>(*n).name = id.text;
        return n;
    }

    RawTerm raw_term() {
        Token id = expect(Tok::Ident);
        RawTerm t{id.text, false, {}, id.line, id.col};
        if (at(Tok::LParen)) {
            ++pos_;
            t.call = true;
            if (!at(Tok::RParen)) {
                t.args.push_back(raw_term());
                while (at(Tok::Comma)) {
                    ++pos_;
                    t.args.push_back(raw_term());
                }
            }
            expect(Tok::RParen);
        }
        return t;
    }

    // Symbols resolved against the signature; variable sorts recorded when a
    // declared argument position fixes them.
    Term resolve(const RawTerm& r, const Sort& expected, std::map<std::string, Sort>& var_sorts,
                 std::map<std::string, bool>& conflict, bool allow_vars) {
        const SymbolDecl* d = sig_->unique(r.name);
        if (!r.call && !(d && d->arity() == 0)) {
            if (d) throw SyntaxError("symbol '" + r.name + "' expects " + std::to_string(d->arity()) + " arguments",
                                     r.line, r.col);
            if (!allow_vars) throw SyntaxError("term is not ground: variable '" + r.name + "'", r.line, r.col);
            if (!expected.empty()) {
                auto it = var_sorts.find(r.name);
                if (it == var_sorts.end())
                    var_sorts[r.name] = expected;
                else if (it->second != expected)
                    conflict[r.name] = true;
            }
            return Term::var(r.name);
        }
        if (!d) {
            if (sig_->has_symbol(r.name))
                throw SyntaxError("symbol '" + r.name + "' is overloaded", r.line, r.col);
            throw SyntaxError("unknown symbol '" + r.name + "'", r.line, r.col);
        }
        if (d->arity() != r.args.size())
            throw SyntaxError("symbol '" + r.name + "' expects " + std::to_string(d->arity()) + " arguments, got " +
                                  std::to_string(r.args.size()),
                              r.line, r.col);
        std::vector<Term> args;
        for (std::size_t i = 0; i < r.args.size(); ++i)
            args.push_back(resolve(r.args[i], d->domain[i], var_sorts, conflict, allow_vars));
        return Term::app(r.name, std::move(args));
    }

    static Term attach_sorts(const Term& t, const std::map<std::string, Sort>& vs,
                             const std::map<std::string, bool>& conflict) {
        if (t.is_var()) {
            auto it = vs.find(t.name());
            if (it == vs.end() || conflict.count(t.name())) return t;
            return Term::var(t.name(), it->second);
        }
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(attach_sorts(a, vs, conflict));
        return Term::app(t.name(), std::move(args));
    }

    Term best_effort_annotate(const Term& t) const {
        try {
            return sig_->annotate(t);
        } catch (const SortError&) {
            return t;
        }
    }

    std::pair<Term, Term> resolve_rule(const RawTerm& l, const RawTerm& r) {
        std::map<std::string, Sort> vs;
        std::map<std::string, bool> conflict;
        Term lt = resolve(l, "", vs, conflict, true);
        std::map<std::string, Sort> rvs;
        Term rt = resolve(r, "", rvs, conflict, true);
        auto lvars = variables(lt);
        std::set<std::string> lset(lvars.begin(), lvars.end());
        for (const auto& v : variables(rt))
            if (!lset.count(v))
                throw SyntaxError("variable '" + v + "' of the right-hand side does not occur on the left", r.line,
                                  r.col);
        // a variable-rooted side takes its sort from the other side
        if (lt.is_var() && !vs.count(lt.name()) && !rt.is_var()) {
            if (const SymbolDecl* d = sig_->unique(rt.name())) vs[lt.name()] = d->codomain;
        }
        for (const auto& [v, s] : rvs) {
            auto it = vs.find(v);
            if (it == vs.end())
                vs[v] = s;
            else if (it->second != s)
                conflict[v] = true;
        }
        return {best_effort_annotate(attach_sorts(lt, vs, conflict)),
                best_effort_annotate(attach_sorts(rt, vs, conflict))};
    }

    RawPtr node(RawStrategy::Kind k, const Token& at, std::vector<RawPtr> kids) {
        auto n = std::make_shared<RawStrategy>();
        n->kind = k;
        n->kids = std::move(kids);
        n->line = at.line;
        n->col = at.col;
        return n;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Signature* sig_;
};

void check_definitions(const Program& prog) {
    // names resolve, arities agree, and the call graph is acyclic
    std::map<std::string, std::set<std::string>> calls;
    for (const auto& def : prog.definitions) {
        std::set<std::string> params(def.params.begin(), def.params.end());
        std::vector<std::string> bound;
        std::function<void(const RawPtr&)> go = [&](const RawPtr& r) {
            using K = RawStrategy::Kind;
            if (r->kind == K::Mu) {
                bound.push_back(r->name);
                go(r->kids[0]);
                bound.pop_back();
                return;
            }
            if (r->kind == K::Name) {
                if (std::find(bound.begin(), bound.end(), r->name) != bound.end() || params.count(r->name)) return;
            }
            if (r->kind == K::Name || r->kind == K::Call) {
                const Definition* d = prog.find(r->name);
                if (!d)
                    throw SyntaxError("unknown strategy '" + r->name + "' in definition of " + def.name, r->line,
                                      r->col);
                if (d->params.size() != r->kids.size())
                    throw SyntaxError("strategy '" + r->name + "' expects " + std::to_string(d->params.size()) +
                                          " arguments, got " + std::to_string(r->kids.size()),
                                      r->line, r->col);
                calls[def.name].insert(r->name);
            }
            for (const auto& k : r->kids) go(k);
        };
        go(def.body);
    }
    std::map<std::string, int> state;
    std::function<void(const std::string&, std::vector<std::string>&)> dfs = [&](const std::string& n,
                                                                                  std::vector<std::string>& path) {
        state[n] = 1;
        path.push_back(n);
        for (const auto& m : calls[n]) {
            if (state[m] == 1) {
                std::string cyc;
                auto it = std::find(path.begin(), path.end(), m);
                for (; it != path.end(); ++it) cyc += *it + " -> ";
                throw DefinitionError("recursive strategy definitions are not supported: " + cyc + m);
            }
            if (state[m] == 0) dfs(m, path);
        }
        path.pop_back();
        state[n] = 2;
    };
    for (const auto& def : prog.definitions) {
        std::vector<std::string> path;
        if (state[def.name] == 0) dfs(def.name, path);
    }
}

}  // namespace

bool is_reserved_symbol(const std::string& n) {
    static const std::set<std::string> fixed{"bot",     "bot_list", "appl",  "cons",    "nil",     "rappend",
                                             "reverse", "rconcat",  "propag", "eq_bi",  "and_bi", "true_bi",
                                             "false_bi"};
    if (fixed.count(n)) return true;
    for (const char* p : {"phi_", "psi_", "bot_", "eq_bi_"})
        if (n.rfind(p, 0) == 0) return true;
    return n.size() > 4 && n.compare(n.size() - 4, 4, "_sym") == 0;
}

const Definition* Program::find(const std::string& name) const {
    for (const auto& d : definitions)
        if (d.name == name) return &d;
    return nullptr;
}

Strategy Program::expand(const std::string& entry) const {
    const Definition* main = find(entry);
    if (!main) throw DefinitionError("no strategy named '" + entry + "'");
    if (!main->params.empty()) throw DefinitionError("entry strategy '" + entry + "' must not take parameters");
    std::set<std::string> used;
    auto fresh = [&used](const std::string& base) {
        std::string n = base;
        for (std::size_t k = 1; used.count(n); ++k) n = base + "_" + std::to_string(k);
        used.insert(n);
        return n;
    };
    std::vector<std::string> stack;
    std::function<Strategy(const RawPtr&, const std::map<std::string, Strategy>&, std::map<std::string, std::string>&)>
        go;
    auto call = [&](const Definition& d, std::vector<Strategy> args) -> Strategy {
        if (std::find(stack.begin(), stack.end(), d.name) != stack.end())
            throw DefinitionError("recursive strategy definition: " + d.name);
        std::map<std::string, Strategy> env;
        for (std::size_t i = 0; i < d.params.size(); ++i) env[d.params[i]] = args[i];
        stack.push_back(d.name);
        std::map<std::string, std::string> svars;
        Strategy s = go(d.body, env, svars);
        stack.pop_back();
        return s;
    };
    go = [&](const RawPtr& r, const std::map<std::string, Strategy>& env,
             std::map<std::string, std::string>& svars) -> Strategy {
        using K = RawStrategy::Kind;
        switch (r->kind) {
            case K::Id: return Strategy::id();
            case K::Fail: return Strategy::fail();
            case K::Rule: return Strategy::rule(r->lhs, r->rhs);
            case K::Seq: return Strategy::seq(go(r->kids[0], env, svars), go(r->kids[1], env, svars));
            case K::Choice: return Strategy::choice(go(r->kids[0], env, svars), go(r->kids[1], env, svars));
            case K::One: return Strategy::one(go(r->kids[0], env, svars));
            case K::All: return Strategy::all(go(r->kids[0], env, svars));
            case K::Mu: {
                std::string n = fresh(r->name);
                auto saved = svars;
                svars[r->name] = n;
                Strategy body = go(r->kids[0], env, svars);
                svars = std::move(saved);
                return Strategy::mu(n, body);
            }
            case K::Name: {
                if (auto it = svars.find(r->name); it != svars.end()) return Strategy::svar(it->second);
                if (auto it = env.find(r->name); it != env.end()) return it->second;
                [[fallthrough]];
            }
            case K::Call: {
                const Definition* d = find(r->name);
                if (!d) throw DefinitionError("unknown strategy '" + r->name + "'");
                if (d->params.size() != r->kids.size())
                    throw DefinitionError("strategy '" + r->name + "' expects " + std::to_string(d->params.size()) +
                                          " arguments");
                std::vector<Strategy> args;
                for (const auto& k : r->kids) args.push_back(go(k, env, svars));
                return call(*d, std::move(args));
            }
        }
        throw DefinitionError("unreachable");
    };
    return call(*main, {});
}

Program parse_program(const std::string& text) {
    Parser p(lex(text), nullptr);
    Program prog = p.program();
    check_definitions(prog);
    return prog;
}

Program load_program(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

Term parse_term(const std::string& text, const Signature& sig) {
    Parser p(lex(text), &sig);
    RawTerm r = p.raw_term();
    p.expect(Tok::End);
    std::map<std::string, Sort> vs;
    std::map<std::string, bool> conflict;
    Term t = p.resolve(r, "", vs, conflict, true);
    return p.best_effort_annotate(Parser::attach_sorts(t, vs, conflict));
}

Term parse_ground_term(const std::string& text, const Signature& sig) {
    Parser p(lex(text), &sig);
    RawTerm r = p.raw_term();
    p.expect(Tok::End);
    std::map<std::string, Sort> vs;
    std::map<std::string, bool> conflict;
    return p.resolve(r, "", vs, conflict, false);
}

Strategy parse_strategy(const std::string& text, const Signature& sig) {
    Parser p(lex(text), &sig);
    RawPtr r = p.strategy();
    p.expect(Tok::End);
    // bare names are strategy variables here
    std::function<Strategy(const RawPtr&)> go = [&](const RawPtr& n) -> Strategy {
        using K = RawStrategy::Kind;
        switch (n->kind) {
            case K::Id: return Strategy::id();
            case K::Fail: return Strategy::fail();
            case K::Rule: return Strategy::rule(n->lhs, n->rhs);
            case K::Seq: return Strategy::seq(go(n->kids[0]), go(n->kids[1]));
            case K::Choice: return Strategy::choice(go(n->kids[0]), go(n->kids[1]));
            case K::One: return Strategy::one(go(n->kids[0]));
            case K::All: return Strategy::all(go(n->kids[0]));
            case K::Mu: return Strategy::mu(n->name, go(n->kids[0]));
            case K::Name: return Strategy::svar(n->name);
            case K::Call:
                throw SyntaxError("strategy calls need a program: '" + n->name + "'", n->line, n->col);
        }
        throw SyntaxError("unreachable", n->line, n->col);
    };
    return go(r);
}

}  // namespace strat
