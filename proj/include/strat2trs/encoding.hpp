#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strat2trs/antiterm.hpp"
#include "strat2trs/strategy.hpp"
#include "strat2trs/term.hpp"

namespace strat {

enum class Mode { Unsorted, Sorted, SortedNoOverload, Meta };

std::string mode_name(Mode m);
std::optional<Mode> parse_mode(const std::string& s);

inline constexpr const char* kBot = "bot";

class MetaError : public Error {
public:
    using Error::Error;
};

struct GeneratedSymbol {
    std::string name;
    std::string tag;         // id, rule, seq, seqaux, psi, ...
    std::string provenance;  // "<preorder index>:<tag>" or an auxiliary role
    std::size_t arity = 1;
};

struct TranslateOptions {
    // Structurally equal sub-strategies (with the same free variables) share one symbol.
    bool share_subterms = false;
    // Encode `l -> r <+ Identity` with a single symbol (failure to match yields the subject).
    bool fuse_try_rule = false;
};

struct Encoding {
    Mode mode = Mode::Unsorted;
    Signature source;
    std::string entry;
    std::vector<GeneratedSymbol> symbols;
    std::vector<RuleSchema> schemas;
    std::vector<PlainRule> rules;
    std::optional<Signature> extended;  // sorted modes only

    std::size_t rule_count() const { return rules.size(); }
    bool is_sorted() const { return mode == Mode::Sorted || mode == Mode::SortedNoOverload; }

    // phi_S(t) in the representation the rules expect (sort-annotated,
    // suffixed, or meta-encoded as the mode requires).
    Term entry_term(const Term& t) const;

    struct Readback {
        enum class Kind { Value, Failure, Stuck } kind = Kind::Stuck;
        Term term;  // the value, or the failed subject
    };
    Readback read_back(const Term& normal_form) const;

    bool is_bot(const Term& t) const;
};

Encoding translate(const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt = {});
Encoding translate_sorted(const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt = {});
Encoding translate_sorted_no_overload(const Signature& sig, const Context& ctx, const Strategy& s,
                                      TranslateOptions opt = {});
// Suffixes every per-sort generated symbol with the sort of its first argument.
Encoding remove_overloading(const Encoding& sorted);
Encoding translate_meta(const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt = {});
Encoding encode(Mode m, const Signature& sig, const Context& ctx, const Strategy& s, TranslateOptions opt = {});

// Schemas for the bindings of `bound` under the outer context (unsorted).
std::vector<RuleSchema> translate_context(const Signature& sig, const Context& outer, const Context& bound);

// Merges rules that coincide after erasing sorts and renaming variables.
std::vector<PlainRule> collapse_equal_rules(const std::vector<PlainRule>& rules);

// Meta-level representation: f(t1..tn) as appl(f_sym, cons(t1, ... nil)).
std::string meta_symbol(const std::string& f);
Term meta_encode(const Term& t);
Term meta_decode(const Term& t, const Signature& sig);
std::vector<PlainRule> list_rules();

// Sort of a term over the extended signature of a sorted encoding.
Sort sort_check(const Encoding& enc, const Term& t);

}  // namespace strat
