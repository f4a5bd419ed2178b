#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strat2trs/term.hpp"

namespace strat {

enum class StrategyKind { Id, Fail, Rule, Seq, Choice, One, All, Mu, SVar };

class Strategy {
public:
    Strategy() = default;

    static Strategy id();
    static Strategy fail();
    static Strategy rule(Term lhs, Term rhs);
    static Strategy seq(Strategy a, Strategy b);
    static Strategy choice(Strategy a, Strategy b);
    static Strategy one(Strategy s);
    static Strategy all(Strategy s);
    static Strategy mu(std::string var, Strategy body);
    static Strategy svar(std::string var);

    bool valid() const { return static_cast<bool>(node_); }
    StrategyKind kind() const;
    const Term& lhs() const;
    const Term& rhs() const;
    const Strategy& first() const;   // Seq/Choice left, One/All/Mu body
    const Strategy& second() const;  // Seq/Choice right
    const Strategy& body() const { return first(); }
    const std::string& var() const;  // Mu binder or SVar name

    // Number of AST nodes.
    std::size_t size() const;

    std::string str() const;

    friend bool operator==(const Strategy& a, const Strategy& b);

    struct Node;

private:
    explicit Strategy(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Strategy contexts map strategy variables to strategies, innermost binding last.
using Context = std::vector<std::pair<std::string, Strategy>>;

std::set<std::string> free_vars(const Strategy& s);
// Renames binders so that every mu binds a distinct name not free anywhere.
Strategy alpha_unique(const Strategy& s);

// Derived strategies; `x` names the recursion variable.
Strategy try_(Strategy s);
Strategy repeat(Strategy s, const std::string& x = "X");
Strategy once_bottom_up(Strategy s, const std::string& x = "X");
Strategy bottom_up(Strategy s, const std::string& x = "X");
Strategy once_top_down(Strategy s, const std::string& x = "X");
Strategy top_down(Strategy s, const std::string& x = "X");
Strategy innermost(Strategy s, const std::string& x = "X");

}  // namespace strat
