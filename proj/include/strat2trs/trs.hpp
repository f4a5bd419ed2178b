#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "strat2trs/antiterm.hpp"
#include "strat2trs/term.hpp"

namespace strat {

struct RedexPolicy {
    enum class Kind { LeftmostInnermost, LeftmostOutermost, Random };
    Kind kind = Kind::LeftmostInnermost;
    std::uint64_t seed = 0;

    static RedexPolicy innermost() { return {}; }
    static RedexPolicy outermost() { return {Kind::LeftmostOutermost, 0}; }
    static RedexPolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

class Trs {
public:
    Trs() = default;
    explicit Trs(std::vector<PlainRule> rules);

    const std::vector<PlainRule>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }

    // First rule (in rule order) applicable at the root.
    std::optional<std::pair<std::size_t, Term>> rewrite_root(const Term& t) const;
    // Every rule applicable at the root with its contractum.
    std::vector<std::pair<std::size_t, Term>> root_reducts(const Term& t) const;
    bool is_redex(const Term& t) const;

private:
    std::vector<PlainRule> rules_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_root_;
    std::vector<std::size_t> var_rooted_;
};

struct StepResult {
    Term term;
    std::size_t rule;
    Position position;
};

std::optional<StepResult> step(const Trs& trs, const Term& t, const RedexPolicy& policy = {},
                               std::mt19937_64* rng = nullptr);

struct TraceEntry {
    std::size_t step;
    Position position;
    std::size_t rule;
    std::size_t size;  // of the whole term after the step
    // valid only during the callback
    const Term* redex = nullptr;
    const Term* contractum = nullptr;
};
using TraceSink = std::function<void(const TraceEntry&)>;

struct NormalizeOutcome {
    enum class Kind { NormalForm, OutOfFuel };
    Kind kind = Kind::NormalForm;
    Term term;  // normal form, or the last term reached
    std::size_t steps = 0;
    bool normal() const { return kind == Kind::NormalForm; }
};

// Fuel counts contractions.
NormalizeOutcome normalize(const Trs& trs, const Term& t, std::size_t fuel, const RedexPolicy& policy = {},
                           const TraceSink* trace = nullptr);
// Step-by-step normalization handing every intermediate term (including the
// start term) to the observer.
NormalizeOutcome normalize_observed(const Trs& trs, const Term& t, std::size_t fuel, const RedexPolicy& policy,
                                    const std::function<void(const Term&)>& observer);

std::vector<Term> reducts(const Trs& trs, const Term& t);
bool is_normal_form(const Trs& trs, const Term& t);

}  // namespace strat
