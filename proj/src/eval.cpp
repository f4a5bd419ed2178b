#include "strat2trs/eval.hpp"

#include <cstdlib>
#include <memory>
#include <variant>

namespace strat {

std::size_t default_fuel() {
    if (const char* v = std::getenv("STRAT2TRS_FUEL")) {
        char* end = nullptr;
        unsigned long long n = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && end != v) return static_cast<std::size_t>(n);
    }
    return kDefaultFuel;
}

std::string EvalOutcome::str() const {
    switch (kind) {
        case Kind::Value: return value.str();
        case Kind::Failure: return "Fail";
        case Kind::OutOfFuel: return "OutOfFuel(" + std::to_string(fuel_used) + ")";
    }
    return "?";
}

namespace {

struct Binding {
    std::string var;
    Strategy body;
    std::shared_ptr<const Binding> next;
};
using Env = std::shared_ptr<const Binding>;

const Strategy* lookup(const Env& env, const std::string& x) {
    for (const Binding* b = env.get(); b; b = b->next.get())
        if (b->var == x) return &b->body;
    return nullptr;
}

struct SeqK {
    Env env;
    Strategy second;
};
struct ChoiceK {
    Env env;
    Strategy second;
    Term subject;
};
struct OneK {
    Env env;
    Strategy s;
    Term subject;
    std::size_t index;
};
struct AllK {
    Env env;
    Strategy s;
    Term subject;
    std::vector<Term> done;
};
using Frame = std::variant<SeqK, ChoiceK, OneK, AllK>;

}  // namespace

// An explicit continuation stack keeps deep recursion (mu X.X, long repeats)
// off the native stack.
EvalOutcome eval(const Context& ctx, const Strategy& s0, const Term& t0, std::size_t fuel) {
    Env env;
    for (const auto& [x, body] : ctx) env = std::make_shared<const Binding>(Binding{x, body, env});

    std::vector<Frame> stack;
    bool evaluating = true;
    Env cur_env = env;
    Strategy cur = s0;
    Term subject = t0;
    std::optional<Term> result;
    std::size_t used = 0;

    auto go = [&](Env e, Strategy s, Term t) {
        cur_env = std::move(e);
        cur = std::move(s);
        subject = std::move(t);
        evaluating = true;
    };
    auto ret = [&](std::optional<Term> r) {
        result = std::move(r);
        evaluating = false;
    };

    while (true) {
        if (evaluating) {
            if (used >= fuel) {
                EvalOutcome o;
                o.kind = EvalOutcome::Kind::OutOfFuel;
                o.fuel_used = used;
                return o;
            }
            ++used;
            switch (cur.kind()) {
                case StrategyKind::Id:
                    ret(subject);
                    break;
                case StrategyKind::Fail:
                    ret(std::nullopt);
                    break;
                case StrategyKind::Rule: {
                    if (auto sigma = match(cur.lhs(), subject))
                        ret(apply_subst(*sigma, cur.rhs()));
                    else
                        ret(std::nullopt);
                    break;
                }
                case StrategyKind::Seq:
                    stack.push_back(SeqK{cur_env, cur.second()});
                    go(cur_env, cur.first(), subject);
                    break;
                case StrategyKind::Choice:
                    stack.push_back(ChoiceK{cur_env, cur.second(), subject});
                    go(cur_env, cur.first(), subject);
                    break;
                case StrategyKind::Mu: {
                    // re-entering the same binder would only shadow an identical binding
                    const Strategy* old = lookup(cur_env, cur.var());
                    Env e = old && *old == cur.body()
                                ? cur_env
                                : std::make_shared<const Binding>(Binding{cur.var(), cur.body(), cur_env});
                    go(e, cur.body(), subject);
                    break;
                }
                case StrategyKind::SVar: {
                    const Strategy* body = lookup(cur_env, cur.var());
                    if (!body) throw UnboundStrategyVariable(cur.var());
                    go(cur_env, *body, subject);
                    break;
                }
                case StrategyKind::One:
                    if (subject.is_var() || subject.arity() == 0) {
                        ret(std::nullopt);
                    } else {
                        stack.push_back(OneK{cur_env, cur.body(), subject, 0});
                        go(cur_env, cur.body(), subject.arg(0));
                    }
                    break;
                case StrategyKind::All:
                    if (subject.is_var() || subject.arity() == 0) {
                        ret(subject);
                    } else {
                        stack.push_back(AllK{cur_env, cur.body(), subject, {}});
                        go(cur_env, cur.body(), subject.arg(0));
                    }
                    break;
            }
            continue;
        }

        if (stack.empty()) {
            EvalOutcome o;
            o.fuel_used = used;
            if (result) {
                o.kind = EvalOutcome::Kind::Value;
                o.value = *result;
            } else {
                o.kind = EvalOutcome::Kind::Failure;
            }
            return o;
        }
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (auto* k = std::get_if<SeqK>(&f)) {
            if (result)
                go(k->env, k->second, *result);
            else
                ret(std::nullopt);
        } else if (auto* k = std::get_if<ChoiceK>(&f)) {
            if (!result) go(k->env, k->second, k->subject);
        } else if (auto* k = std::get_if<OneK>(&f)) {
            if (result) {
                std::vector<Term> args = k->subject.args();
                args[k->index] = *result;
                ret(k->subject.with_args(std::move(args)));
            } else if (k->index + 1 < k->subject.arity()) {
                std::size_t i = k->index + 1;
                Term child = k->subject.arg(i);
                Env e = k->env;
                Strategy s = k->s;
                stack.push_back(OneK{k->env, k->s, k->subject, i});
                go(e, s, child);
            }
        } else if (auto* k = std::get_if<AllK>(&f)) {
            if (!result) continue;
            k->done.push_back(*result);
            if (k->done.size() == k->subject.arity()) {
                ret(k->subject.with_args(std::move(k->done)));
            } else {
                Term child = k->subject.arg(k->done.size());
                Env e = k->env;
                Strategy s = k->s;
                stack.push_back(std::move(*k));
                go(e, s, child);
            }
        }
    }
}

}  // namespace strat
