#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace strat {

// An empty sort means "no sort information" (unsorted terms and variables).
using Sort = std::string;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SortError : public Error {
public:
    using Error::Error;
};

class PositionError : public Error {
public:
    using Error::Error;
};

class Term;

namespace detail {
struct Node;
}

class Term {
public:
    Term() = default;

    static Term var(std::string name, Sort sort = {});
    static Term app(std::string symbol, std::vector<Term> args = {}, Sort sort = {});

    bool valid() const { return static_cast<bool>(node_); }
    bool is_var() const;
    bool is_constant() const { return !is_var() && arity() == 0; }
    const std::string& name() const;
    const Sort& sort() const;
    const std::vector<Term>& args() const;
    const Term& arg(std::size_t i) const { return args()[i]; }
    std::size_t arity() const { return args().size(); }

    std::size_t size() const;
    std::size_t depth() const;
    std::size_t hash() const;
    bool ground() const;

    // Same shape, new sort annotation on the root.
    Term with_sort(Sort s) const;
    Term with_args(std::vector<Term> args) const;

    const void* identity() const { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

    std::string str() const;

private:
    explicit Term(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
    friend struct detail::Node;
};

namespace detail {
struct Node {
    bool is_var = false;
    std::string name;
    Sort sort;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t size = 1;
    std::size_t depth = 1;
    bool ground = true;
    ~Node();
};
}  // namespace detail

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Positions are 1-based argument indices from the root; the empty path is the root.
struct Position {
    std::vector<std::size_t> path;

    bool is_root() const { return path.empty(); }
    Position child(std::size_t i) const;
    std::string str() const;
    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

class Substitution {
public:
    const Term* lookup(const std::string& var) const;
    // Returns false if var is already bound to a different term.
    bool bind(const std::string& var, const Term& t);
    std::size_t size() const { return bindings_.size(); }
    const std::vector<std::pair<std::string, Term>>& bindings() const { return bindings_; }

private:
    std::vector<std::pair<std::string, Term>> bindings_;
};

std::optional<Substitution> match(const Term& pattern, const Term& subject);
bool match_into(const Term& pattern, const Term& subject, Substitution& sigma);
Term apply_subst(const Substitution& sigma, const Term& t);

const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);
std::vector<Position> positions(const Term& t);

std::vector<std::string> variables(const Term& t);  // first-occurrence order
bool is_linear(const Term& t);
Term erase_sorts(const Term& t);
// Renames variables to v1, v2, ... in order of first occurrence (lhs then rhs).
std::pair<Term, Term> canonical_vars(const Term& lhs, const Term& rhs);

struct SymbolDecl {
    std::string name;
    std::vector<Sort> domain;
    Sort codomain;
    std::size_t arity() const { return domain.size(); }
    friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

class Signature {
public:
    void add_sort(const Sort& s);
    // Overloading is allowed only with pairwise distinct domains.
    void add_symbol(SymbolDecl d);

    bool has_sort(const Sort& s) const;
    const std::vector<Sort>& sorts() const { return sorts_; }
    const std::vector<SymbolDecl>& symbols() const { return symbols_; }
    std::vector<const SymbolDecl*> symbols_of_sort(const Sort& s) const;
    std::vector<const SymbolDecl*> overloads(const std::string& name) const;
    const SymbolDecl* unique(const std::string& name) const;  // null if absent or overloaded
    const SymbolDecl* resolve(const std::string& name, const std::vector<Sort>& arg_sorts) const;
    bool has_symbol(const std::string& name) const { return by_name_.count(name) > 0; }

    // Every sort annotated; throws SortError on ill-sorted input or unsorted variables.
    Term annotate(const Term& t) const;
    Sort sort_of(const Term& t) const { return annotate(t).sort(); }
    bool well_sorted(const Term& t) const;

    // Copy with a single sort `top` and every profile flattened onto it.
    Signature flattened(const Sort& top = "Top") const;
    bool inhabited(const Sort& s) const;
    // Minimal depth of a ground term of sort s (nullopt if uninhabited).
    std::optional<std::size_t> min_depth(const Sort& s) const;

private:
    std::vector<Sort> sorts_;
    std::vector<SymbolDecl> symbols_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_name_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

}  // namespace strat
