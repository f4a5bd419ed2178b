#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "strat2trs/strategy.hpp"
#include "strat2trs/term.hpp"

namespace strat {

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t line, std::size_t col)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_, col_;
};

// Definition-level problems: unknown names, arity, recursion.
class DefinitionError : public Error {
public:
    using Error::Error;
};

// Strategy expressions as written, before definitions are inlined.
struct RawStrategy {
    enum class Kind { Id, Fail, Rule, Seq, Choice, One, All, Mu, Name, Call };
    Kind kind;
    Term lhs, rhs;
    std::string name;  // Mu binder, Name, Call target
    std::vector<std::shared_ptr<const RawStrategy>> kids;
    std::size_t line = 0, col = 0;
};
using RawPtr = std::shared_ptr<const RawStrategy>;

struct Definition {
    std::string name;
    std::vector<std::string> params;
    RawPtr body;
};

struct Program {
    Signature signature;
    std::vector<Definition> definitions;

    const Definition* find(const std::string& name) const;
    // Inlines every definition reachable from `entry` and makes binders unique.
    Strategy expand(const std::string& entry = "mainStrat") const;
};

// Names the encoders reserve for generated symbols.
bool is_reserved_symbol(const std::string& name);

Program parse_program(const std::string& text);
Program load_program(const std::string& path);

// Terms: bare identifiers are constants when the signature declares them,
// otherwise variables. Variable sorts are inferred from argument positions.
Term parse_term(const std::string& text, const Signature& sig);
Term parse_ground_term(const std::string& text, const Signature& sig);
// A standalone strategy expression without definitions.
Strategy parse_strategy(const std::string& text, const Signature& sig);

}  // namespace strat
