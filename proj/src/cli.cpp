#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "strat2trs/frontend.hpp"
#include "strat2trs/parser.hpp"
#include "strat2trs/trs.hpp"

namespace strat {

namespace {

// Input problems (syntax, sorts, unknown names, unreadable files) exit with 2.
struct UsageError : Error {
    using Error::Error;
};

Program load(const std::string& path) {
    try {
        return load_program(path);
    } catch (const SyntaxError& e) {
        throw UsageError(path + ":" + e.what());
    } catch (const Error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Strategy entry_strategy(const Program& p, const std::string& entry) {
    try {
        return p.expand(entry);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

Mode mode_arg(const std::string& s) {
    auto m = parse_mode(s);
    if (!m) throw UsageError("unknown mode '" + s + "' (unsorted, sorted, sorted-no-overload, meta)");
    return *m;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compile rewriting strategies into plain term rewriting systems", "strat2trs"};
    app.require_subcommand(1);

    std::string file, entry = "mainStrat", mode = "unsorted";

    auto* enc_cmd = app.add_subcommand("encode", "translate the entry strategy into a TRS");
    std::string emit = "tpdb", output;
    bool collapse = false, share = false, fuse = false;
    enc_cmd->add_option("file", file, "strategy program")->required();
    enc_cmd->add_option("--mode", mode, "unsorted, sorted, sorted-no-overload or meta");
    enc_cmd->add_option("--emit", emit, "tpdb, text or json")->check(CLI::IsMember({"tpdb", "text", "json"}));
    enc_cmd->add_flag("--collapse-equal-rules", collapse, "merge rules equal up to sorts and renaming");
    enc_cmd->add_flag("--share-subterms", share, "one symbol per distinct sub-strategy");
    enc_cmd->add_flag("--fuse-try-rule", fuse, "encode `rule <+ Identity` with a single symbol");
    enc_cmd->add_option("-o,--output", output, "write to this file instead of stdout");
    enc_cmd->add_option("--entry", entry, "entry strategy");

    auto* eval_cmd = app.add_subcommand("eval", "apply the entry strategy to a ground term");
    std::string term_text, trs_mode;
    std::size_t fuel = default_fuel();
    bool trace = false;
    eval_cmd->add_option("file", file, "strategy program")->required();
    eval_cmd->add_option("--term", term_text, "ground subject")->required();
    eval_cmd->add_option("--fuel", fuel, "step budget");
    eval_cmd->add_option("--trs-mode", trs_mode, "normalize the encoding in this mode instead of interpreting");
    eval_cmd->add_flag("--trace", trace, "print every rewrite step (with --trs-mode)");
    eval_cmd->add_option("--entry", entry, "entry strategy");

    auto* check_cmd = app.add_subcommand("check", "compare the evaluator with an encoding on random subjects");
    CheckOptions copt;
    copt.fuel = default_fuel();
    std::string sort;
    check_cmd->add_option("file", file, "strategy program")->required();
    check_cmd->add_option("--mode", mode, "unsorted, sorted, sorted-no-overload or meta");
    check_cmd->add_option("--samples", copt.samples, "number of subjects");
    check_cmd->add_option("--max-depth", copt.max_depth, "maximal subject depth");
    check_cmd->add_option("--fuel", copt.fuel, "step budget on both sides");
    check_cmd->add_option("--seed", copt.seed, "random seed");
    check_cmd->add_option("--sort", sort, "subject sort for the sorted modes");
    check_cmd->add_flag("--share-subterms", copt.share_subterms, "one symbol per distinct sub-strategy");
    check_cmd->add_flag("--fuse-try-rule", copt.fuse_try_rule, "encode `rule <+ Identity` with a single symbol");
    check_cmd->add_option("--entry", entry, "entry strategy");

    auto* counts_cmd = app.add_subcommand("counts", "rule counts of every encoding");
    counts_cmd->add_option("file", file, "strategy program")->required();
    counts_cmd->add_option("--entry", entry, "entry strategy");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        Program prog = load(file);
        Strategy s = entry_strategy(prog, entry);
        const Signature& sig = prog.signature;

        if (*enc_cmd) {
            Encoding enc = encode(mode_arg(mode), sig, {}, s, TranslateOptions{share, fuse});
            if (collapse) enc.rules = collapse_equal_rules(enc.rules);
            std::string text = emit == "tpdb" ? emit_tpdb(enc) : emit == "json" ? emit_json(enc) : emit_text(enc);
            if (output.empty()) {
                out << text;
            } else {
                std::ofstream f(output);
                if (!f) throw UsageError("cannot write " + output);
                f << text;
            }
            return 0;
        }

        if (*eval_cmd) {
            Term t;
            try {
                t = parse_ground_term(term_text, sig);
            } catch (const Error& e) {
                throw UsageError(std::string("--term: ") + e.what());
            }
            if (trs_mode.empty()) {
                EvalOutcome r = eval(s, t, fuel);
                out << (r.is_value() ? r.value.str() : r.str()) << '\n';
                return r.out_of_fuel() ? 1 : 0;
            }
            Encoding enc = encode(mode_arg(trs_mode), sig, {}, s);
            Trs trs(enc.rules);
            TraceSink sink = [&](const TraceEntry& e) {
                out << "step " << e.step << " at " << e.position.str() << " rule " << e.rule << " size " << e.size
                    << '\n';
            };
            NormalizeOutcome nf = normalize(trs, enc.entry_term(t), fuel, {}, trace ? &sink : nullptr);
            if (!nf.normal()) {
                out << "OutOfFuel(" << nf.steps << ")\n";
                return 1;
            }
            auto rb = enc.read_back(nf.term);
            switch (rb.kind) {
                case Encoding::Readback::Kind::Value:
                    out << rb.term << '\n';
                    return 0;
                case Encoding::Readback::Kind::Failure:
                    out << "Fail\n";
                    return 0;
                case Encoding::Readback::Kind::Stuck:
                    err << "normal form is not a result: " << nf.term << '\n';
                    return 1;
            }
        }

        if (*check_cmd) {
            copt.mode = mode_arg(mode);
            if (!sort.empty()) copt.sort = sort;
            CheckReport rep = run_check(sig, s, copt);
            out << rep.str();
            err << "wall time " << rep.seconds << " s\n";
            return rep.ok() ? 0 : 1;
        }

        if (*counts_cmd) {
            CountRow r = count_rules(sig, s);
            auto line = [&](const char* label, const Counts& c) {
                out << label << "  U " << c.unsorted << "  S " << c.sorted << " (collapsed " << c.sorted_collapsed
                    << ")  M " << c.meta << '\n';
            };
            line("per-occurrence", r.plain);
            line("shared        ", r.shared);
            line("shared+fused  ", r.fused);
            return 0;
        }
    } catch (const UsageError& e) {
        err << "strat2trs: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "strat2trs: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace strat
