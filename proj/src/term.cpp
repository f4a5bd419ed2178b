#include "strat2trs/term.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

namespace strat {

namespace detail {

// Deep terms (long fuel runs build nesting in the tens of thousands) would
// overflow the stack with the default recursive release, so unique children
// are unlinked onto an explicit worklist instead.
Node::~Node() {
    std::vector<std::shared_ptr<const Node>> work;
    auto steal = [&work](std::vector<Term>& xs) {
        for (auto& a : xs)
            if (a.node_.use_count() == 1) work.push_back(std::move(a.node_));
        xs.clear();
    };
    steal(args);
    while (!work.empty()) {
        std::shared_ptr<const Node> n = std::move(work.back());
        work.pop_back();
        steal(const_cast<Node&>(*n).args);
    }
}

}  // namespace detail

static std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Term Term::var(std::string name, Sort sort) {
    auto n = std::make_shared<detail::Node>();
    n->is_var = true;
    n->hash = mix(std::hash<std::string>{}(name), 0x51ed27);
    n->name = std::move(name);
    n->sort = std::move(sort);
    n->ground = false;
    return Term(std::move(n));
}

Term Term::app(std::string symbol, std::vector<Term> args, Sort sort) {
    auto n = std::make_shared<detail::Node>();
    std::size_t h = std::hash<std::string>{}(symbol);
    std::size_t sz = 1, dp = 0;
    bool gr = true;
    for (const auto& a : args) {
        h = mix(h, a.hash());
        sz += a.size();
        dp = std::max(dp, a.depth());
        gr = gr && a.ground();
    }
    n->name = std::move(symbol);
    n->args = std::move(args);
    n->sort = std::move(sort);
    n->hash = h;
    n->size = sz;
    n->depth = dp + 1;
    n->ground = gr;
    return Term(std::move(n));
}

bool Term::is_var() const { return node_->is_var; }
const std::string& Term::name() const { return node_->name; }
const Sort& Term::sort() const { return node_->sort; }
const std::vector<Term>& Term::args() const { return node_->args; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::depth() const { return node_->depth; }
std::size_t Term::hash() const { return node_->hash; }
bool Term::ground() const { return node_->ground; }

Term Term::with_sort(Sort s) const {
    if (is_var()) return var(name(), std::move(s));
    return app(name(), args(), std::move(s));
}

Term Term::with_args(std::vector<Term> a) const { return app(name(), std::move(a), sort()); }

// Variables compare by name and sort; application nodes ignore their sort
// annotation since it is a function of the structure.
bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    std::vector<std::pair<const detail::Node*, const detail::Node*>> work{{a.node_.get(), b.node_.get()}};
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        if (x == y) continue;
        if (x->hash != y->hash || x->is_var != y->is_var || x->name != y->name ||
            x->args.size() != y->args.size())
            return false;
        if (x->is_var) {
            if (x->sort != y->sort) return false;
            continue;
        }
        for (std::size_t i = 0; i < x->args.size(); ++i)
            work.emplace_back(x->args[i].node_.get(), y->args[i].node_.get());
    }
    return true;
}

static void print(std::ostream& os, const Term& t) {
    // (term, next argument index); index 0 means the head is not printed yet
    std::vector<std::pair<const Term*, std::size_t>> work{{&t, 0}};
    while (!work.empty()) {
        auto& [cur, i] = work.back();
        if (i == 0) {
            os << cur->name();
            if (cur->is_var() || cur->arity() == 0) {
                work.pop_back();
                continue;
            }
            os << '(';
        } else if (i == cur->arity()) {
            os << ')';
            work.pop_back();
            continue;
        } else {
            os << ',';
        }
        const Term* next = &cur->arg(i++);
        work.emplace_back(next, 0);
    }
}

std::string Term::str() const {
    std::ostringstream os;
    print(os, *this);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
    print(os, t);
    return os;
}

Position Position::child(std::size_t i) const {
    Position p = *this;
    p.path.push_back(i);
    return p;
}

std::string Position::str() const {
    if (path.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(path[i]);
    }
    return s;
}

const Term* Substitution::lookup(const std::string& v) const {
    for (const auto& [k, t] : bindings_)
        if (k == v) return &t;
    return nullptr;
}

bool Substitution::bind(const std::string& v, const Term& t) {
    if (const Term* old = lookup(v)) return *old == t;
    bindings_.emplace_back(v, t);
    return true;
}

bool match_into(const Term& p, const Term& s, Substitution& sigma) {
    if (p.is_var()) {
        if (!p.sort().empty() && !s.sort().empty() && p.sort() != s.sort()) return false;
        return sigma.bind(p.name(), s);
    }
    if (s.is_var() || p.name() != s.name() || p.arity() != s.arity()) return false;
    for (std::size_t i = 0; i < p.arity(); ++i)
        if (!match_into(p.arg(i), s.arg(i), sigma)) return false;
    return true;
}

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
    Substitution sigma;
    if (!match_into(pattern, subject, sigma)) return std::nullopt;
    return sigma;
}

Term apply_subst(const Substitution& sigma, const Term& t) {
    if (t.is_var()) {
        if (const Term* b = sigma.lookup(t.name())) return *b;
        return t;
    }
    if (t.ground()) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back(apply_subst(sigma, a));
    return Term::app(t.name(), std::move(args), t.sort());
}

const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (std::size_t i : p.path) {
        if (cur->is_var() || i == 0 || i > cur->arity())
            throw PositionError("position " + p.str() + " not in term");
        cur = &cur->arg(i - 1);
    }
    return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& u) {
    std::vector<const Term*> chain{&t};
    for (std::size_t i : p.path) {
        const Term* cur = chain.back();
        if (cur->is_var() || i == 0 || i > cur->arity())
            throw PositionError("position " + p.str() + " not in term");
        chain.push_back(&cur->arg(i - 1));
    }
    Term result = u;
    for (std::size_t k = p.path.size(); k-- > 0;) {
        const Term* parent = chain[k];
        std::vector<Term> args = parent->args();
        args[p.path[k] - 1] = result;
        result = Term::app(parent->name(), std::move(args), parent->sort());
    }
    return result;
}

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    std::vector<std::pair<const Term*, Position>> work{{&t, Position{}}};
    while (!work.empty()) {
        auto [cur, pos] = std::move(work.back());
        work.pop_back();
        out.push_back(pos);
        if (cur->is_var()) continue;
        for (std::size_t i = cur->arity(); i > 0; --i) work.emplace_back(&cur->arg(i - 1), pos.child(i));
    }
    return out;
}

static void collect_vars(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
    if (t.is_var()) {
        if (seen.insert(t.name()).second) out.push_back(t.name());
        return;
    }
    for (const auto& a : t.args()) collect_vars(a, out, seen);
}

std::vector<std::string> variables(const Term& t) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_vars(t, out, seen);
    return out;
}

bool is_linear(const Term& t) {
    std::set<std::string> seen;
    std::function<bool(const Term&)> go = [&](const Term& u) {
        if (u.is_var()) return seen.insert(u.name()).second;
        for (const auto& a : u.args())
            if (!go(a)) return false;
        return true;
    };
    return go(t);
}

Term erase_sorts(const Term& t) {
    // post-order rebuild with an explicit stack
    std::vector<std::pair<const Term*, bool>> work{{&t, false}};
    std::vector<Term> done;
    while (!work.empty()) {
        auto [cur, expanded] = work.back();
        work.pop_back();
        if (cur->is_var()) {
            done.push_back(cur->sort().empty() ? *cur : Term::var(cur->name()));
        } else if (!expanded) {
            work.emplace_back(cur, true);
            for (std::size_t i = cur->arity(); i-- > 0;) work.emplace_back(&cur->arg(i), false);
        } else {
            std::vector<Term> args(std::make_move_iterator(done.end() - long(cur->arity())),
                                   std::make_move_iterator(done.end()));
            done.resize(done.size() - cur->arity());
            done.push_back(Term::app(cur->name(), std::move(args)));
        }
    }
    return done.back();
}

std::pair<Term, Term> canonical_vars(const Term& lhs, const Term& rhs) {
    std::map<std::string, std::string> ren;
    std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
        if (t.is_var()) {
            auto key = t.name() + "\x1f" + t.sort();
            auto it = ren.find(key);
            if (it == ren.end()) it = ren.emplace(key, "v" + std::to_string(ren.size() + 1)).first;
            return Term::var(it->second, t.sort());
        }
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(go(a));
        return Term::app(t.name(), std::move(args), t.sort());
    };
    Term l = go(lhs);
    Term r = go(rhs);
    return {l, r};
}

void Signature::add_sort(const Sort& s) {
    if (!has_sort(s)) sorts_.push_back(s);
}

bool Signature::has_sort(const Sort& s) const {
    return std::find(sorts_.begin(), sorts_.end(), s) != sorts_.end();
}

void Signature::add_symbol(SymbolDecl d) {
    for (const auto& s : d.domain)
        if (!has_sort(s)) throw SortError("symbol " + d.name + " uses undeclared sort " + s);
    if (!has_sort(d.codomain)) throw SortError("symbol " + d.name + " uses undeclared sort " + d.codomain);
    for (std::size_t i : by_name_[d.name]) {
        if (symbols_[i].domain == d.domain) {
            if (symbols_[i].codomain == d.codomain) return;
            throw SortError("ambiguous overload of symbol " + d.name);
        }
    }
    by_name_[d.name].push_back(symbols_.size());
    symbols_.push_back(std::move(d));
}

std::vector<const SymbolDecl*> Signature::symbols_of_sort(const Sort& s) const {
    std::vector<const SymbolDecl*> out;
    for (const auto& d : symbols_)
        if (d.codomain == s) out.push_back(&d);
    return out;
}

std::vector<const SymbolDecl*> Signature::overloads(const std::string& name) const {
    std::vector<const SymbolDecl*> out;
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return out;
    for (std::size_t i : it->second) out.push_back(&symbols_[i]);
    return out;
}

const SymbolDecl* Signature::unique(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end() || it->second.size() != 1) return nullptr;
    return &symbols_[it->second.front()];
}

const SymbolDecl* Signature::resolve(const std::string& name, const std::vector<Sort>& arg_sorts) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return nullptr;
    for (std::size_t i : it->second)
        if (symbols_[i].domain == arg_sorts) return &symbols_[i];
    return nullptr;
}

Term Signature::annotate(const Term& t) const {
    // explicit post-order walk; subject terms can be deep
    struct Frame {
        const Term* t;
        std::size_t next = 0;
        std::vector<Term> done;
        Position pos;
    };
    std::vector<Frame> stack;
    stack.push_back({&t, 0, {}, {}});
    Term result;
    while (!stack.empty()) {
        Frame& f = stack.back();
        const Term& cur = *f.t;
        if (cur.is_var()) {
            if (cur.sort().empty())
                throw SortError("variable " + cur.name() + " has no sort at position " + f.pos.str());
            if (!has_sort(cur.sort())) throw SortError("variable " + cur.name() + " has unknown sort " + cur.sort());
            result = cur;
        } else if (f.next < cur.arity()) {
            Position p = f.pos.child(f.next + 1);
            const Term* child = &cur.arg(f.next);
            stack.push_back({child, 0, {}, std::move(p)});
            continue;
        } else {
            std::vector<Sort> as;
            for (const auto& a : f.done) as.push_back(a.sort());
            const SymbolDecl* d = resolve(cur.name(), as);
            if (!d) {
                std::string msg = has_symbol(cur.name()) ? "ill-sorted application of " : "unknown symbol ";
                msg += cur.name() + " at position " + f.pos.str();
                if (has_symbol(cur.name())) {
                    msg += " (argument sorts:";
                    for (const auto& s : as) msg += " " + s;
                    msg += ")";
                }
                throw SortError(msg);
            }
            result = Term::app(cur.name(), std::move(f.done), d->codomain);
        }
        stack.pop_back();
        if (!stack.empty()) {
            stack.back().done.push_back(result);
            stack.back().next++;
        }
    }
    return result;
}

bool Signature::well_sorted(const Term& t) const {
    try {
        annotate(t);
        return true;
    } catch (const SortError&) {
        return false;
    }
}

Signature Signature::flattened(const Sort& top) const {
    Signature out;
    out.add_sort(top);
    for (const auto& d : symbols_) {
        SymbolDecl f{d.name, std::vector<Sort>(d.arity(), top), top};
        auto existing = out.overloads(d.name);
        if (!existing.empty()) {
            if (existing.front()->arity() == f.arity()) continue;
            throw SortError("symbol " + d.name + " is declared with two arities");
        }
        out.add_symbol(std::move(f));
    }
    return out;
}

std::optional<std::size_t> Signature::min_depth(const Sort& s) const {
    std::map<Sort, std::size_t> best;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& d : symbols_) {
            std::size_t dp = 0;
            bool ok = true;
            for (const auto& a : d.domain) {
                auto it = best.find(a);
                if (it == best.end()) {
                    ok = false;
                    break;
                }
                dp = std::max(dp, it->second);
            }
            if (!ok) continue;
            auto it = best.find(d.codomain);
            if (it == best.end() || it->second > dp + 1) {
                best[d.codomain] = dp + 1;
                changed = true;
            }
        }
    }
    auto it = best.find(s);
    if (it == best.end()) return std::nullopt;
    return it->second;
}

bool Signature::inhabited(const Sort& s) const { return min_depth(s).has_value(); }

}  // namespace strat
