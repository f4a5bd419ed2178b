#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "strat2trs/encoding.hpp"
#include "strat2trs/eval.hpp"
#include "strat2trs/strategy.hpp"
#include "strat2trs/term.hpp"

namespace strat {

// Untyped TPDB text: (VAR ...) (RULES ...). Sorted encodings are emitted through
// their no-overload renaming; names outside [A-Za-z0-9_] are mangled and the
// table is appended as a COMMENT block.
std::string emit_tpdb(const Encoding& enc);
std::string emit_text(const Encoding& enc);
std::string emit_json(const Encoding& enc);

// Uniform choice among the symbols (of the sort) that still fit the depth budget.
Term random_term(const Signature& sig, const std::optional<Sort>& sort, std::size_t max_depth, std::mt19937_64& rng);
std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index);

struct CheckOptions {
    Mode mode = Mode::Unsorted;
    std::size_t samples = 200;
    std::size_t max_depth = 5;
    std::size_t fuel = kDefaultFuel;
    std::uint64_t seed = 0;
    bool share_subterms = false;
    bool fuse_try_rule = false;
    std::optional<Sort> sort;  // sorted modes; defaults to the first declared sort
};

struct Disagreement {
    std::size_t index;
    Term subject;
    std::string expected;
    std::string actual;
};

struct CheckReport {
    Mode mode = Mode::Unsorted;
    std::size_t samples = 0;
    std::size_t agreements = 0;
    std::size_t fuel_exempt = 0;
    std::size_t rule_count = 0;
    std::vector<Disagreement> disagreements;
    double seconds = 0;  // wall time; not part of str()

    bool ok() const { return disagreements.empty(); }
    double exempt_fraction() const { return samples ? double(fuel_exempt) / double(samples) : 0.0; }
    std::string str() const;
};

// Evaluates s on random subjects and compares with the normal form of the
// encoding (innermost normalization, same fuel on both sides).
CheckReport run_check(const Signature& sig, const Strategy& s, const CheckOptions& opt);
CheckReport run_check(const Signature& sig, const Strategy& s, const Encoding& enc, const CheckOptions& opt);

struct Counts {
    std::size_t unsorted = 0, sorted = 0, sorted_collapsed = 0, meta = 0;
};
// Rule counts under increasingly aggressive conventions: one symbol per
// occurrence, shared symbols for equal sub-strategies, and sharing plus fused
// `rule <+ Identity`.
struct CountRow {
    Counts plain, shared, fused;
};
Counts count_rules(const Signature& sig, const Strategy& s, TranslateOptions opt);
CountRow count_rules(const Signature& sig, const Strategy& s);

// Command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace strat
