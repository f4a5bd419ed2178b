#pragma once

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "strat2trs/encoding.hpp"
#include "strat2trs/eval.hpp"
#include "strat2trs/frontend.hpp"
#include "strat2trs/parser.hpp"
#include "strat2trs/trs.hpp"

namespace testing_support {

using namespace strat;

inline std::string fixture_path(const std::string& rel) { return std::string(FIXTURE_DIR) + "/" + rel; }
inline Program fixture(const std::string& rel) { return load_program(fixture_path(rel)); }

inline const std::vector<std::string>& table1_names() {
    static const std::vector<std::string> names{
        "reps_dist", "reps_fact", "reps_dist_fact", "td_dist",  "obu_fact", "reps_obu_fact",
        "factorize", "simplify",  "im_dist",        "im_fact",  "bu_rf",    "reps_obu_rgf"};
    return names;
}

// Every ground term of depth <= d (of sort s, or over all symbols when s is empty).
inline std::vector<Term> ground_terms(const Signature& sig0, const Sort& s, std::size_t d) {
    Signature sig = s.empty() ? sig0.flattened() : sig0;
    Sort target = s.empty() ? sig.sorts().front() : s;
    std::map<Sort, std::vector<Term>> level;  // terms of depth <= current bound
    for (std::size_t depth = 1; depth <= d; ++depth) {
        std::map<Sort, std::vector<Term>> next;
        for (const auto& f : sig.symbols()) {
            std::vector<std::vector<Term>> choices;
            bool empty = false;
            for (const auto& a : f.domain) {
                choices.push_back(level[a]);
                empty = empty || level[a].empty();
            }
            if (empty) continue;
            std::vector<std::size_t> idx(f.arity(), 0);
            while (true) {
                std::vector<Term> args;
                for (std::size_t i = 0; i < f.arity(); ++i) args.push_back(choices[i][idx[i]]);
                next[f.codomain].push_back(Term::app(f.name, std::move(args)));
                std::size_t i = 0;
                while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
                if (i == idx.size()) break;
            }
        }
        level = std::move(next);
    }
    return level[target];
}

// Minimal reader for the (VAR ...) (RULES ...) format, written independently
// of the emitter.
struct TpdbRule {
    Term lhs, rhs;
};

class TpdbReader {
public:
    explicit TpdbReader(std::string text) : s_(std::move(text)) {}

    std::vector<TpdbRule> read() {
        std::vector<TpdbRule> rules;
        while (true) {
            skip();
            if (i_ >= s_.size()) break;
            expect('(');
            std::string kw = ident();
            if (kw == "VAR") {
                while (skip(), peek() != ')') vars_.insert(ident());
                expect(')');
            } else if (kw == "RULES") {
                while (skip(), peek() != ')') {
                    Term l = term();
                    skip();
                    if (s_.compare(i_, 2, "->") != 0) throw std::runtime_error("expected ->");
                    i_ += 2;
                    Term r = term();
                    rules.push_back({l, r});
                }
                expect(')');
            } else {
                int depth = 1;
                while (depth > 0 && i_ < s_.size()) {
                    if (s_[i_] == '(') ++depth;
                    if (s_[i_] == ')') --depth;
                    ++i_;
                }
            }
        }
        return rules;
    }

    const std::set<std::string>& vars() const { return vars_; }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    void expect(char c) {
        skip();
        if (peek() != c) throw std::runtime_error(std::string("expected ") + c + " at " + std::to_string(i_));
        ++i_;
    }
    std::string ident() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (b == i_) throw std::runtime_error("expected identifier at " + std::to_string(i_));
        return s_.substr(b, i_ - b);
    }
    Term term() {
        std::string n = ident();
        skip();
        if (peek() != '(') return vars_.count(n) ? Term::var(n) : Term::app(n);
        ++i_;
        std::vector<Term> args;
        skip();
        if (peek() == ')') {
            ++i_;
            return Term::app(n, {});
        }
        while (true) {
            args.push_back(term());
            skip();
            if (peek() == ',') {
                ++i_;
                continue;
            }
            expect(')');
            break;
        }
        return Term::app(n, std::move(args));
    }

    std::string s_;
    std::size_t i_ = 0;
    std::set<std::string> vars_;
};

// Rules compared up to variable names and sort annotations.
inline std::multiset<std::string> rule_shapes(const std::vector<PlainRule>& rules) {
    std::multiset<std::string> out;
    for (const auto& r : rules) {
        auto [l, rr] = canonical_vars(erase_sorts(r.lhs), erase_sorts(r.rhs));
        out.insert(l.str() + " -> " + rr.str());
    }
    return out;
}

inline std::vector<std::string> generated_unary(const Encoding& enc) {
    std::vector<std::string> out;
    for (const auto& g : enc.symbols)
        if (g.arity == 1 && g.tag != "psi") out.push_back(g.name);
    return out;
}

}  // namespace testing_support
