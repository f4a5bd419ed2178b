#pragma once

#include <cstddef>
#include <string>

#include "strat2trs/strategy.hpp"
#include "strat2trs/term.hpp"

namespace strat {

inline constexpr std::size_t kDefaultFuel = 100000;

// Reads STRAT2TRS_FUEL, falling back to kDefaultFuel.
std::size_t default_fuel();

class UnboundStrategyVariable : public Error {
public:
    explicit UnboundStrategyVariable(const std::string& x)
        : Error("unbound strategy variable " + x), var_(x) {}
    const std::string& var() const { return var_; }

private:
    std::string var_;
};

struct EvalOutcome {
    enum class Kind { Value, Failure, OutOfFuel };
    Kind kind = Kind::Failure;
    Term value;              // Value only
    std::size_t fuel_used = 0;

    bool is_value() const { return kind == Kind::Value; }
    bool is_failure() const { return kind == Kind::Failure; }
    bool out_of_fuel() const { return kind == Kind::OutOfFuel; }
    std::string str() const;
};

// Big-step evaluation; each inference-rule application consumes one unit of fuel.
EvalOutcome eval(const Context& ctx, const Strategy& s, const Term& t, std::size_t fuel = kDefaultFuel);
inline EvalOutcome eval(const Strategy& s, const Term& t, std::size_t fuel = kDefaultFuel) {
    return eval(Context{}, s, t, fuel);
}

}  // namespace strat
