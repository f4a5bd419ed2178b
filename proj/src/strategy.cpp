#include "strat2trs/strategy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace strat {

struct Strategy::Node {
    StrategyKind kind;
    Term lhs, rhs;
    Strategy a, b;
    std::string var;
    std::size_t size = 1;
};

static std::shared_ptr<Strategy::Node> make_node(StrategyKind k) {
    auto n = std::make_shared<Strategy::Node>();
    n->kind = k;
    return n;
}

Strategy Strategy::id() { return Strategy(make_node(StrategyKind::Id)); }
Strategy Strategy::fail() { return Strategy(make_node(StrategyKind::Fail)); }

Strategy Strategy::rule(Term lhs, Term rhs) {
    auto n = make_node(StrategyKind::Rule);
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Strategy(n);
}

Strategy Strategy::seq(Strategy a, Strategy b) {
    auto n = make_node(StrategyKind::Seq);
    n->size = 1 + a.size() + b.size();
    n->a = std::move(a);
    n->b = std::move(b);
    return Strategy(n);
}

Strategy Strategy::choice(Strategy a, Strategy b) {
    auto n = make_node(StrategyKind::Choice);
    n->size = 1 + a.size() + b.size();
    n->a = std::move(a);
    n->b = std::move(b);
    return Strategy(n);
}

Strategy Strategy::one(Strategy s) {
    auto n = make_node(StrategyKind::One);
    n->size = 1 + s.size();
    n->a = std::move(s);
    return Strategy(n);
}

Strategy Strategy::all(Strategy s) {
    auto n = make_node(StrategyKind::All);
    n->size = 1 + s.size();
    n->a = std::move(s);
    return Strategy(n);
}

Strategy Strategy::mu(std::string var, Strategy body) {
    auto n = make_node(StrategyKind::Mu);
    n->size = 1 + body.size();
    n->var = std::move(var);
    n->a = std::move(body);
    return Strategy(n);
}

Strategy Strategy::svar(std::string var) {
    auto n = make_node(StrategyKind::SVar);
    n->var = std::move(var);
    return Strategy(n);
}

StrategyKind Strategy::kind() const { return node_->kind; }
const Term& Strategy::lhs() const { return node_->lhs; }
const Term& Strategy::rhs() const { return node_->rhs; }
const Strategy& Strategy::first() const { return node_->a; }
const Strategy& Strategy::second() const { return node_->b; }
const std::string& Strategy::var() const { return node_->var; }
std::size_t Strategy::size() const { return node_->size; }

bool operator==(const Strategy& x, const Strategy& y) {
    if (x.node_ == y.node_) return true;
    if (!x.node_ || !y.node_) return false;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
        case StrategyKind::Id:
        case StrategyKind::Fail:
            return true;
        case StrategyKind::Rule:
            return x.lhs() == y.lhs() && x.rhs() == y.rhs();
        case StrategyKind::Seq:
        case StrategyKind::Choice:
            return x.first() == y.first() && x.second() == y.second();
        case StrategyKind::One:
        case StrategyKind::All:
            return x.first() == y.first();
        case StrategyKind::Mu:
            return x.var() == y.var() && x.first() == y.first();
        case StrategyKind::SVar:
            return x.var() == y.var();
    }
    return false;
}

// Precedence: choice 1, seq 2, atoms 3. Mu bodies extend to the right, so a
// mu is wrapped whenever something follows it.
static void print(std::ostream& os, const Strategy& s, int ctx) {
    switch (s.kind()) {
        case StrategyKind::Id:
            os << "Identity";
            return;
        case StrategyKind::Fail:
            os << "Fail";
            return;
        case StrategyKind::Rule:
            os << "[ " << s.lhs() << " -> " << s.rhs() << " ]";
            return;
        case StrategyKind::SVar:
            os << s.var();
            return;
        case StrategyKind::One:
        case StrategyKind::All:
            os << (s.kind() == StrategyKind::One ? "one(" : "all(");
            print(os, s.first(), 0);
            os << ')';
            return;
        case StrategyKind::Mu:
            if (ctx > 0) os << '(';
            os << "mu " << s.var() << ".";
            print(os, s.first(), 0);
            if (ctx > 0) os << ')';
            return;
        case StrategyKind::Seq: {
            bool paren = ctx >= 2;
            if (paren) os << '(';
            print(os, s.first(), 2);
            os << " ; ";
            print(os, s.second(), 1);
            if (paren) os << ')';
            return;
        }
        case StrategyKind::Choice: {
            bool paren = ctx >= 1;
            if (paren) os << '(';
            print(os, s.first(), 1);
            os << " <+ ";
            print(os, s.second(), 0);
            if (paren) os << ')';
            return;
        }
    }
}

std::string Strategy::str() const {
    std::ostringstream os;
    print(os, *this, 0);
    return os.str();
}

std::set<std::string> free_vars(const Strategy& s) {
    std::set<std::string> out;
    std::function<void(const Strategy&, std::vector<std::string>&)> go = [&](const Strategy& t,
                                                                               std::vector<std::string>& bound) {
        switch (t.kind()) {
            case StrategyKind::SVar:
                if (std::find(bound.begin(), bound.end(), t.var()) == bound.end()) out.insert(t.var());
                return;
            case StrategyKind::Mu:
                bound.push_back(t.var());
                go(t.first(), bound);
                bound.pop_back();
                return;
            case StrategyKind::Seq:
            case StrategyKind::Choice:
                go(t.first(), bound);
                go(t.second(), bound);
                return;
            case StrategyKind::One:
            case StrategyKind::All:
                go(t.first(), bound);
                return;
            default:
                return;
        }
    };
    std::vector<std::string> bound;
    go(s, bound);
    return out;
}

Strategy alpha_unique(const Strategy& s) {
    std::set<std::string> used = free_vars(s);
    auto fresh = [&used](const std::string& base) {
        std::string n = base;
        for (std::size_t k = 1; used.count(n); ++k) n = base + "_" + std::to_string(k);
        used.insert(n);
        return n;
    };
    std::function<Strategy(const Strategy&, std::map<std::string, std::string>&)> go =
        [&](const Strategy& t, std::map<std::string, std::string>& ren) -> Strategy {
        switch (t.kind()) {
            case StrategyKind::SVar: {
                auto it = ren.find(t.var());
                return it == ren.end() ? t : Strategy::svar(it->second);
            }
            case StrategyKind::Mu: {
                std::string n = fresh(t.var());
                auto saved = ren;
                ren[t.var()] = n;
                Strategy body = go(t.first(), ren);
                ren = std::move(saved);
                return Strategy::mu(n, body);
            }
            case StrategyKind::Seq:
                return Strategy::seq(go(t.first(), ren), go(t.second(), ren));
            case StrategyKind::Choice:
                return Strategy::choice(go(t.first(), ren), go(t.second(), ren));
            case StrategyKind::One:
                return Strategy::one(go(t.first(), ren));
            case StrategyKind::All:
                return Strategy::all(go(t.first(), ren));
            default:
                return t;
        }
    };
    std::map<std::string, std::string> ren;
    return go(s, ren);
}

Strategy try_(Strategy s) { return Strategy::choice(std::move(s), Strategy::id()); }

Strategy repeat(Strategy s, const std::string& x) {
    return Strategy::mu(x, try_(Strategy::seq(std::move(s), Strategy::svar(x))));
}

Strategy once_bottom_up(Strategy s, const std::string& x) {
    return Strategy::mu(x, Strategy::choice(Strategy::one(Strategy::svar(x)), std::move(s)));
}

Strategy bottom_up(Strategy s, const std::string& x) {
    return Strategy::mu(x, Strategy::seq(Strategy::all(Strategy::svar(x)), std::move(s)));
}

Strategy once_top_down(Strategy s, const std::string& x) {
    return Strategy::mu(x, Strategy::choice(std::move(s), Strategy::one(Strategy::svar(x))));
}

Strategy top_down(Strategy s, const std::string& x) {
    return Strategy::mu(x, Strategy::seq(std::move(s), Strategy::all(Strategy::svar(x))));
}

Strategy innermost(Strategy s, const std::string& x) {
    return Strategy::mu(
        x, Strategy::seq(Strategy::all(Strategy::svar(x)), try_(Strategy::seq(std::move(s), Strategy::svar(x)))));
}

}  // namespace strat
