#include <chrono>
#include <map>
#include <sstream>

#include "strat2trs/frontend.hpp"
#include "strat2trs/trs.hpp"

namespace strat {

namespace {

class Generator {
public:
    explicit Generator(const Signature& sig) : sig_(sig) {
        for (const auto& s : sig_.sorts())
            if (auto d = sig_.min_depth(s)) min_[s] = *d;
    }

    std::optional<std::size_t> min_depth(const Sort& s) const {
        auto it = min_.find(s);
        if (it == min_.end()) return std::nullopt;
        return it->second;
    }

    Term make(const Sort& s, std::size_t budget, std::mt19937_64& rng) const {
        std::vector<const SymbolDecl*> fit;
        for (const SymbolDecl* d : sig_.symbols_of_sort(s)) {
            bool ok = true;
            for (const auto& a : d->domain) {
                auto m = min_depth(a);
                if (!m || *m + 1 > budget) {
                    ok = false;
                    break;
                }
            }
            if (ok) fit.push_back(d);
        }
        if (fit.empty()) throw Error("no ground term of sort " + s + " within depth " + std::to_string(budget));
        std::uniform_int_distribution<std::size_t> pick(0, fit.size() - 1);
        const SymbolDecl* d = fit[pick(rng)];
        std::vector<Term> args;
        args.reserve(d->arity());
        for (const auto& a : d->domain) args.push_back(make(a, budget - 1, rng));
        return Term::app(d->name, std::move(args));
    }

private:
    const Signature& sig_;
    std::map<Sort, std::size_t> min_;
};

}  // namespace

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                      std::uint32_t(std::uint64_t(index) >> 32)};
    return std::mt19937_64(seq);
}

Term random_term(const Signature& sig, const std::optional<Sort>& sort, std::size_t max_depth, std::mt19937_64& rng) {
    if (!sort) {
        Signature flat = sig.flattened();
        return Generator(flat).make(flat.sorts().front(), max_depth, rng);
    }
    return Generator(sig).make(*sort, max_depth, rng);
}

std::string CheckReport::str() const {
    std::ostringstream os;
    os << mode_name(mode) << ": samples " << samples << ", agreements " << agreements << ", fuel-exempt "
       << fuel_exempt << ", disagreements " << disagreements.size() << ", rules " << rule_count << '\n';
    for (const auto& d : disagreements)
        os << "  #" << d.index << " " << d.subject << ": evaluator " << d.expected << ", encoding " << d.actual
           << '\n';
    return os.str();
}

CheckReport run_check(const Signature& sig, const Strategy& s, const CheckOptions& opt) {
    Encoding enc = encode(opt.mode, sig, {}, s, TranslateOptions{opt.share_subterms, opt.fuse_try_rule});
    return run_check(sig, s, enc, opt);
}

CheckReport run_check(const Signature& sig, const Strategy& s, const Encoding& enc, const CheckOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.mode = enc.mode;
    rep.rule_count = enc.rule_count();
    Trs trs(enc.rules);

    // Unsorted and meta encodings accept any term over the symbols; the sorted
    // ones are only defined on well-sorted subjects.
    std::optional<Signature> flat;
    std::optional<Sort> sort;
    if (enc.is_sorted()) {
        if (sig.sorts().empty()) throw Error("signature declares no sort");
        sort = opt.sort ? *opt.sort : sig.sorts().front();
        if (!sig.has_sort(*sort)) throw Error("unknown sort " + *sort);
    } else {
        flat = sig.flattened();
        sort = flat->sorts().front();
    }
    Generator gen(flat ? *flat : sig);

    for (std::size_t i = 0; i < opt.samples; ++i) {
        auto rng = sample_rng(opt.seed, i);
        Term subject = gen.make(*sort, opt.max_depth, rng);
        ++rep.samples;
        EvalOutcome ev = eval(s, subject, opt.fuel);
        NormalizeOutcome nf = normalize(trs, enc.entry_term(subject), opt.fuel);
        if (ev.out_of_fuel() || !nf.normal()) {
            ++rep.fuel_exempt;
            continue;
        }
        auto rb = enc.read_back(nf.term);
        bool agree = false;
        if (ev.is_value())
            agree = rb.kind == Encoding::Readback::Kind::Value && rb.term == erase_sorts(ev.value);
        else
            agree = rb.kind == Encoding::Readback::Kind::Failure && rb.term == subject;
        if (agree) {
            ++rep.agreements;
        } else {
            std::string expected = ev.is_value() ? ev.value.str() : ev.str();
            rep.disagreements.push_back({i, subject, expected, nf.term.str()});
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

Counts count_rules(const Signature& sig, const Strategy& s, TranslateOptions opt) {
    Counts c;
    c.unsorted = translate(sig, {}, s, opt).rule_count();
    Encoding srt = translate_sorted(sig, {}, s, opt);
    c.sorted = srt.rule_count();
    c.sorted_collapsed = collapse_equal_rules(srt.rules).size();
    c.meta = translate_meta(sig, {}, s, opt).rule_count();
    return c;
}

CountRow count_rules(const Signature& sig, const Strategy& s) {
    return {count_rules(sig, s, {false, false}), count_rules(sig, s, {true, false}), count_rules(sig, s, {true, true})};
}

}  // namespace strat
