#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "strat2trs/frontend.hpp"

namespace strat {

namespace {

bool plain_name(const std::string& n) {
    if (n.empty()) return false;
    for (char c : n)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

class Mangler {
public:
    explicit Mangler(std::set<std::string> taken) : taken_(std::move(taken)) {}

    const std::string& symbol(const std::string& n) { return get(n, syms_, ""); }
    const std::string& variable(const std::string& n) { return get(n, vars_, "v_"); }

    const std::map<std::string, std::string>& table() const { return changed_; }

private:
    const std::string& get(const std::string& n, std::map<std::string, std::string>& m, const std::string& prefix) {
        auto it = m.find(n);
        if (it != m.end()) return it->second;
        std::string out;
        if (plain_name(n) && (prefix.empty() || !taken_.count(n))) {
            out = n;
        } else {
            out = prefix;
            for (char c : n) {
                if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                    out += c;
                } else {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "_x%02X", static_cast<unsigned char>(c));
                    out += buf;
                }
            }
            std::string base = out;
            for (int k = 1; taken_.count(out); ++k) out = base + "_" + std::to_string(k);
            changed_[n] = out;
        }
        taken_.insert(out);
        return m.emplace(n, out).first->second;
    }

    std::set<std::string> taken_;
    std::map<std::string, std::string> syms_, vars_, changed_;
};

void collect_symbols(const Term& t, std::set<std::string>& out) {
    if (t.is_var()) return;
    out.insert(t.name());
    for (const auto& a : t.args()) collect_symbols(a, out);
}

void print_mangled(std::ostream& os, const Term& t, Mangler& m) {
    if (t.is_var()) {
        os << m.variable(t.name());
        return;
    }
    os << m.symbol(t.name());
    if (t.arity() == 0) return;
    os << '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) os << ',';
        print_mangled(os, t.arg(i), m);
    }
    os << ')';
}

}  // namespace

std::string emit_tpdb(const Encoding& enc0) {
    const Encoding& enc = enc0.mode == Mode::Sorted ? remove_overloading(enc0) : enc0;
    std::set<std::string> symbols;
    for (const auto& r : enc.rules) {
        collect_symbols(r.lhs, symbols);
        collect_symbols(r.rhs, symbols);
    }
    Mangler m(symbols);
    // symbols first so variables yield to them on a clash
    for (const auto& s : symbols) m.symbol(s);
    std::vector<std::string> vars;
    std::set<std::string> seen;
    for (const auto& r : enc.rules)
        for (const auto& v : variables(r.lhs)) {
            const std::string& mv = m.variable(v);
            if (seen.insert(mv).second) vars.push_back(mv);
        }
    std::ostringstream os;
    os << "(VAR ";
    for (std::size_t i = 0; i < vars.size(); ++i) os << (i ? " " : "") << vars[i];
    os << ")\n(RULES\n";
    for (const auto& r : enc.rules) {
        os << "  ";
        print_mangled(os, r.lhs, m);
        os << " -> ";
        print_mangled(os, r.rhs, m);
        os << '\n';
    }
    os << ")\n";
    if (!m.table().empty()) {
        os << "(COMMENT mangled names:";
        for (const auto& [from, to] : m.table()) os << ' ' << from << " => " << to << ';';
        os << ")\n";
    }
    return os.str();
}

std::string emit_text(const Encoding& enc) {
    std::ostringstream os;
    os << "# mode " << mode_name(enc.mode) << ", entry " << enc.entry << ", " << enc.rules.size() << " rules\n";
    for (const auto& r : enc.rules) os << r.lhs << " -> " << r.rhs << "    # " << r.provenance << '\n';
    return os.str();
}

std::string emit_json(const Encoding& enc) {
    using nlohmann::json;
    json j;
    j["mode"] = mode_name(enc.mode);
    j["entry"] = enc.entry;
    json syms = json::array();
    for (const auto& s : enc.symbols)
        syms.push_back({{"name", s.name}, {"tag", s.tag}, {"provenance", s.provenance}, {"arity", s.arity}});
    j["symbols"] = syms;
    json rules = json::array();
    for (const auto& r : enc.rules) {
        json vars = json::array();
        std::set<std::string> seen;
        std::function<void(const Term&)> go = [&](const Term& t) {
            if (t.is_var()) {
                if (seen.insert(t.name()).second) {
                    json v{{"name", t.name()}};
                    if (!t.sort().empty()) v["sort"] = t.sort();
                    vars.push_back(v);
                }
                return;
            }
            for (const auto& a : t.args()) go(a);
        };
        go(r.lhs);
        json jr{{"lhs", r.lhs.str()}, {"rhs", r.rhs.str()}, {"provenance", r.provenance}, {"vars", vars}};
        if (enc.is_sorted() && !r.lhs.sort().empty()) jr["sort"] = r.lhs.sort();
        rules.push_back(jr);
    }
    j["rules"] = rules;
    return j.dump(2) + "\n";
}

}  // namespace strat
