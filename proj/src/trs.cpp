#include "strat2trs/trs.hpp"

#include <algorithm>
#include <unordered_set>

namespace strat {

Trs::Trs(std::vector<PlainRule> rules) : rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (rules_[i].lhs.is_var())
            var_rooted_.push_back(i);
        else
            by_root_[rules_[i].lhs.name()].push_back(i);
    }
}

namespace {

template <class F>
void for_candidates(const std::unordered_map<std::string, std::vector<std::size_t>>& by_root,
                    const std::vector<std::size_t>& var_rooted, const Term& t, F&& f) {
    static const std::vector<std::size_t> none;
    const std::vector<std::size_t>* rooted = &none;
    if (!t.is_var()) {
        auto it = by_root.find(t.name());
        if (it != by_root.end()) rooted = &it->second;
    }
    if (var_rooted.empty()) {
        for (std::size_t i : *rooted)
            if (!f(i)) return;
        return;
    }
    std::vector<std::size_t> merged;
    std::merge(rooted->begin(), rooted->end(), var_rooted.begin(), var_rooted.end(), std::back_inserter(merged));
    for (std::size_t i : merged)
        if (!f(i)) return;
}

}  // namespace

std::optional<std::pair<std::size_t, Term>> Trs::rewrite_root(const Term& t) const {
    std::optional<std::pair<std::size_t, Term>> out;
    for_candidates(by_root_, var_rooted_, t, [&](std::size_t i) {
        Substitution sigma;
        if (!match_into(rules_[i].lhs, t, sigma)) return true;
        out.emplace(i, apply_subst(sigma, rules_[i].rhs));
        return false;
    });
    return out;
}

std::vector<std::pair<std::size_t, Term>> Trs::root_reducts(const Term& t) const {
    std::vector<std::pair<std::size_t, Term>> out;
    for_candidates(by_root_, var_rooted_, t, [&](std::size_t i) {
        Substitution sigma;
        if (match_into(rules_[i].lhs, t, sigma)) out.emplace_back(i, apply_subst(sigma, rules_[i].rhs));
        return true;
    });
    return out;
}

bool Trs::is_redex(const Term& t) const {
    bool found = false;
    for_candidates(by_root_, var_rooted_, t, [&](std::size_t i) {
        Substitution sigma;
        found = match_into(rules_[i].lhs, t, sigma);
        return !found;
    });
    return found;
}

namespace {

struct Visit {
    const Term* t;
    std::size_t next;
};

Position path_of(const std::vector<Visit>& st) {
    Position p;
    for (std::size_t i = 0; i + 1 < st.size(); ++i) p.path.push_back(st[i].next);
    return p;
}

// Leftmost-innermost: the first redex in post-order has no redex below it.
std::optional<Position> find_innermost(const Trs& trs, const Term& t) {
    std::vector<Visit> st{{&t, 0}};
    while (!st.empty()) {
        Visit& v = st.back();
        if (!v.t->is_var() && v.next < v.t->arity()) {
            const Term* c = &v.t->arg(v.next);
            ++v.next;
            st.push_back({c, 0});
            continue;
        }
        if (trs.is_redex(*v.t)) return path_of(st);
        st.pop_back();
    }
    return std::nullopt;
}

std::optional<Position> find_outermost(const Trs& trs, const Term& t) {
    std::vector<Visit> st{{&t, 0}};
    if (trs.is_redex(t)) return Position{};
    while (!st.empty()) {
        Visit& v = st.back();
        if (v.t->is_var() || v.next >= v.t->arity()) {
            st.pop_back();
            continue;
        }
        const Term* c = &v.t->arg(v.next);
        ++v.next;
        st.push_back({c, 0});
        if (trs.is_redex(*c)) return path_of(st);
    }
    return std::nullopt;
}

template <class F>
void for_each_position(const Term& t, F&& f) {
    std::vector<Visit> st{{&t, 0}};
    f(t, Position{});
    while (!st.empty()) {
        Visit& v = st.back();
        if (v.t->is_var() || v.next >= v.t->arity()) {
            st.pop_back();
            continue;
        }
        const Term* c = &v.t->arg(v.next);
        ++v.next;
        st.push_back({c, 0});
        f(*c, path_of(st));
    }
}

}  // namespace

std::optional<StepResult> step(const Trs& trs, const Term& t, const RedexPolicy& policy, std::mt19937_64* rng) {
    using K = RedexPolicy::Kind;
    if (policy.kind == K::Random) {
        std::vector<std::pair<Position, std::pair<std::size_t, Term>>> all;
        for_each_position(t, [&](const Term& u, const Position& p) {
            for (auto& r : trs.root_reducts(u)) all.emplace_back(p, std::move(r));
        });
        if (all.empty()) return std::nullopt;
        std::mt19937_64 local(policy.seed);
        std::mt19937_64& g = rng ? *rng : local;
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        auto& [pos, red] = all[pick(g)];
        return StepResult{replace_at(t, pos, red.second), red.first, pos};
    }
    auto pos = policy.kind == K::LeftmostInnermost ? find_innermost(trs, t) : find_outermost(trs, t);
    if (!pos) return std::nullopt;
    auto red = trs.rewrite_root(subterm_at(t, *pos));
    return StepResult{replace_at(t, *pos, red->second), red->first, *pos};
}

namespace {

struct Frame {
    Term node;
    std::vector<Term> args;
    std::size_t next = 0;
    bool changed = false;
};

Term reconstruct(std::vector<Frame>& st) {
    Term acc = st.back().node;
    for (std::size_t i = st.size() - 1; i-- > 0;) {
        const Frame& p = st[i];
        std::vector<Term> args = p.args;
        args.push_back(acc);
        for (std::size_t j = p.next + 1; j < p.node.arity(); ++j) args.push_back(p.node.arg(j));
        acc = p.node.with_args(std::move(args));
    }
    return acc;
}

// Arguments are normalized left to right before the root is tried, which is
// exactly the leftmost-innermost sequence. Subterms already known to be normal
// (for instance those substituted into a contractum) are not revisited.
NormalizeOutcome innermost_fast(const Trs& trs, const Term& t, std::size_t fuel, const TraceSink* trace) {
    std::unordered_map<const void*, Term> normal;
    std::vector<Frame> st;
    st.push_back({t, {}, 0, false});
    std::size_t steps = 0, total = t.size();
    while (true) {
        Frame& f = st.back();
        if (!f.node.is_var() && f.next < f.node.arity()) {
            Term c = f.node.arg(f.next);
            if (c.is_var() || normal.count(c.identity())) {
                f.args.push_back(std::move(c));
                f.next++;
                continue;
            }
            st.push_back({std::move(c), {}, 0, false});
            continue;
        }
        Term cur = f.changed ? f.node.with_args(std::move(f.args)) : f.node;
        auto red = cur.is_var() ? std::nullopt : trs.rewrite_root(cur);
        if (red) {
            if (steps >= fuel) {
                st.back() = {cur, {}, cur.arity(), false};
                return {NormalizeOutcome::Kind::OutOfFuel, reconstruct(st), steps};
            }
            ++steps;
            total = total - cur.size() + red->second.size();
            if (trace) {
                Position p;
                for (std::size_t i = 0; i + 1 < st.size(); ++i) p.path.push_back(st[i].next + 1);
                (*trace)({steps, p, red->first, total, &cur, &red->second});
            }
            st.back() = {std::move(red->second), {}, 0, false};
            continue;
        }
        normal.emplace(cur.identity(), cur);
        st.pop_back();
        if (st.empty()) return {NormalizeOutcome::Kind::NormalForm, cur, steps};
        Frame& p = st.back();
        if (cur.identity() != p.node.arg(p.next).identity()) p.changed = true;
        p.args.push_back(std::move(cur));
        p.next++;
    }
}

}  // namespace

NormalizeOutcome normalize(const Trs& trs, const Term& t, std::size_t fuel, const RedexPolicy& policy,
                           const TraceSink* trace) {
    if (policy.kind == RedexPolicy::Kind::LeftmostInnermost) return innermost_fast(trs, t, fuel, trace);
    std::mt19937_64 rng(policy.seed);
    Term cur = t;
    std::size_t steps = 0;
    while (true) {
        auto s = step(trs, cur, policy, &rng);
        if (!s) return {NormalizeOutcome::Kind::NormalForm, cur, steps};
        if (steps >= fuel) return {NormalizeOutcome::Kind::OutOfFuel, cur, steps};
        ++steps;
        if (trace) {
            Term redex = subterm_at(cur, s->position);
            cur = std::move(s->term);
            (*trace)({steps, s->position, s->rule, cur.size(), &redex, &subterm_at(cur, s->position)});
        } else {
            cur = std::move(s->term);
        }
    }
}

NormalizeOutcome normalize_observed(const Trs& trs, const Term& t, std::size_t fuel, const RedexPolicy& policy,
                                    const std::function<void(const Term&)>& observer) {
    std::mt19937_64 rng(policy.seed);
    Term cur = t;
    observer(cur);
    std::size_t steps = 0;
    while (true) {
        auto s = step(trs, cur, policy, &rng);
        if (!s) return {NormalizeOutcome::Kind::NormalForm, cur, steps};
        if (steps >= fuel) return {NormalizeOutcome::Kind::OutOfFuel, cur, steps};
        ++steps;
        cur = std::move(s->term);
        observer(cur);
    }
}

std::vector<Term> reducts(const Trs& trs, const Term& t) {
    std::vector<Term> out;
    std::unordered_set<Term, TermHash> seen;
    for_each_position(t, [&](const Term& u, const Position& p) {
        for (auto& [i, r] : trs.root_reducts(u)) {
            Term whole = replace_at(t, p, r);
            if (seen.insert(whole).second) out.push_back(whole);
        }
    });
    return out;
}

bool is_normal_form(const Trs& trs, const Term& t) {
    bool redex = false;
    for_each_position(t, [&](const Term& u, const Position&) {
        if (!redex && trs.is_redex(u)) redex = true;
    });
    return !redex;
}

}  // namespace strat
