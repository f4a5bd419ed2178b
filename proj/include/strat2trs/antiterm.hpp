#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strat2trs/term.hpp"

namespace strat {

using TermEncoder = Term (*)(const Term&);

// The set of terms an aliased position may take.
struct AntiPattern {
    enum class Kind {
        NotBot,   // every term of `sort` (every term when unsorted)
        NotTerm,  // complement of `term` within `sort`
        Exactly,  // the single linear pattern `term`
    };
    Kind kind = Kind::NotBot;
    Term term;
    Sort sort;
    TermEncoder encode = nullptr;  // applied to every expansion (meta-level rules)

    static AntiPattern not_bot(Sort s = {}) { return {Kind::NotBot, {}, std::move(s), nullptr}; }
    static AntiPattern not_term(Term t, Sort s = {}, TermEncoder enc = nullptr) {
        return {Kind::NotTerm, std::move(t), std::move(s), enc};
    }
    static AntiPattern exactly(Term t) { return {Kind::Exactly, std::move(t), {}, nullptr}; }
};

struct SchemaPattern {
    enum class Kind { Var, Wild, App, Alias };
    Kind kind = Kind::Wild;
    std::string name;  // Var / Alias name, App symbol
    Sort sort;
    std::vector<SchemaPattern> args;
    AntiPattern anti;

    static SchemaPattern var(std::string n, Sort s = {});
    static SchemaPattern wild(Sort s = {});
    static SchemaPattern app(std::string f, std::vector<SchemaPattern> args = {});
    static SchemaPattern alias(std::string n, AntiPattern a);
    static SchemaPattern of(const Term& t);  // positive pattern

    std::string str() const;
};

struct RuleSchema {
    SchemaPattern lhs;
    Term rhs;
    std::string provenance;
    std::string str() const;
};

struct PlainRule {
    Term lhs, rhs;
    std::string provenance;
    std::string str() const { return lhs.str() + " -> " + rhs.str(); }
    friend bool operator==(const PlainRule& a, const PlainRule& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

struct PlainRuleHash {
    std::size_t operator()(const PlainRule& r) const { return r.lhs.hash() * 31 + r.rhs.hash(); }
};

// Ground-instance sets as lists of linear patterns with variables x1, x2, ...
// A nullopt sort means the unsorted reading over every symbol.
std::vector<Term> expand_not_bot(const Signature& sig, const std::optional<Sort>& sort = std::nullopt);
// Pairwise disjoint patterns whose ground instances are exactly the terms
// (of `sort`) not matched by the linear pattern t.
std::vector<Term> expand_antiterm(const Term& t, const Signature& sig, const std::optional<Sort>& sort = std::nullopt);
// Cartesian product over every aliased position; aliases are replaced in the rhs.
std::vector<PlainRule> expand_schema(const RuleSchema& schema, const Signature& sig);
std::size_t schema_product_size(const RuleSchema& schema, const Signature& sig);

// Non-left-linear rules: repeated variable occurrences renamed apart.
struct Linearized {
    Term pattern;
    std::vector<std::pair<Term, Term>> equations;  // (original occurrence, renamed occurrence)
};
Linearized linearize(const Term& l);

inline constexpr const char* kBoolSort = "boolbi";
inline constexpr const char* kEq = "eq_bi";
inline constexpr const char* kAnd = "and_bi";
inline constexpr const char* kTrue = "true_bi";
inline constexpr const char* kFalse = "false_bi";

// x1 = y1 /\ (x2 = y2 /\ ...) for the equations of a linearization.
Term equality_condition(const Linearized& lin, TermEncoder enc = nullptr);
// Decomposition, clash and conjunction rules deciding syntactic equality of
// ground terms over sig; sorted rules only compare terms of the same sort.
std::vector<PlainRule> equality_rules(const Signature& sig, bool sorted, TermEncoder enc = nullptr);

}  // namespace strat
