// souslin: command-line front end over the interval-scheme library.
//
// Subcommands cover the coding walk (encode/decode/scheme-dump), the cut
// machinery and its bounded law sweeps (cut/axioms/sigma-member), the
// split-interval bidirectedness reports (doublearrow-check), and the
// diagonalization driver with offline trace verification
// (diagonalize/verify-trace).
//
// Output is a human-readable table by default and the library's JSON forms
// under --json. Exit codes: 0 = verdict Holds/True, 1 = Fails/False,
// 2 = Unknown/budget exhausted, 64 = usage error, 70 = internal error.

#include <CLI11.hpp>

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "souslin/diagonal.hpp"
#include "souslin/doublearrow.hpp"
#include "souslin/openmap.hpp"
#include "souslin/rat.hpp"
#include "souslin/scheme.hpp"
#include "souslin/seqtree.hpp"
#include "souslin/serialize.hpp"
#include "souslin/topology.hpp"

namespace {

using nlohmann::json;
using namespace souslin;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

// Display form for index sequences: mathematical angle brackets, no spaces.
std::string pretty_seq(const FinSeq& s) {
    std::string out = "⟨";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.at(i));
    }
    out += "⟩";
    return out;
}

json parse_json_arg(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw invalid_input(what + ": malformed JSON: " + e.what());
    }
}

Branch parse_branch_arg(const std::string& text, const std::string& what) {
    return branch_from_json(parse_json_arg(text, what));
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

std::string describe(const CheckResult& r) {
    switch (r.verdict()) {
        case CheckResult::Verdict::HoldsToDepth:
            return "holds to depth " + std::to_string(r.depth());
        case CheckResult::Verdict::FailsWithWitness:
            return "fails; witness: " + r.witness().dump();
        case CheckResult::Verdict::Unknown:
            return "unknown; budget " + std::to_string(r.depth()) + " exhausted";
    }
    return "unknown";
}

int verdict_exit(const CheckResult& r) {
    switch (r.verdict()) {
        case CheckResult::Verdict::HoldsToDepth:
            return kExitHolds;
        case CheckResult::Verdict::FailsWithWitness:
            return kExitFails;
        case CheckResult::Verdict::Unknown:
            return kExitUnknown;
    }
    return kExitUnknown;
}

int trivalent_exit(Trivalent t) {
    switch (t) {
        case Trivalent::True:
            return kExitHolds;
        case Trivalent::False:
            return kExitFails;
        case Trivalent::Unknown:
            return kExitUnknown;
    }
    return kExitUnknown;
}

int status_exit(DiagStatus s) {
    switch (s) {
        case DiagStatus::Running:
        case DiagStatus::S2RefutationReady:
            return kExitHolds;
        case DiagStatus::S1Failure:
        case DiagStatus::PreconditionFailed:
            return kExitFails;
        case DiagStatus::BudgetExhausted:
            return kExitUnknown;
    }
    return kExitUnknown;
}

// ---------------------------------------------------------------------------
// Subcommand option bundles. Every subcommand writes its exit code into `code`
// through the shared Context so main() can return it after parsing.

struct Context {
    bool json_out = false;
    std::uint64_t seed = 0;  // reserved for sampled checks; all shipped checks are exact
    int code = kExitHolds;
};

void run_encode(Context& ctx, const std::string& x_text, std::size_t depth) {
    const Rat x = Rat::parse(x_text);
    const FinSeq node = encode(x, depth);
    if (ctx.json_out) {
        emit(to_json(node));
    } else {
        std::cout << pretty_seq(node) << std::endl;
    }
    ctx.code = kExitHolds;
}

void run_decode(Context& ctx, const std::string& branch_text, std::size_t budget) {
    const Branch b = parse_branch_arg(branch_text, "--branch");
    const DecodeResult r = decode(b, budget);
    if (ctx.json_out) {
        emit(json{{"value", to_json(r.value)}, {"exact", r.exact}});
    } else {
        std::cout << r.value.str() << (r.exact ? " (exact)" : " (lower bound; budget exhausted)")
                  << std::endl;
    }
    ctx.code = kExitHolds;
}

void run_cut(Context& ctx, const std::string& point_text, std::size_t level, std::size_t budget) {
    const Rat x = Rat::parse(point_text);
    const Branch q = encode_branch(x);
    const CheckResult r = cut_base_nbhd_check(q, level, budget);
    if (ctx.json_out) {
        emit(to_json(r));
    } else {
        std::cout << "point " << x.str() << ", canonical neighborhoods up to level " << level
                  << ":" << std::endl;
        for (std::size_t m = 1; m <= level; ++m) {
            std::cout << "  m=" << m << "  neighborhood " << cut_base_element(x, m).str()
                      << "  swept values " << cut_interval(q, m, budget).str() << std::endl;
        }
        std::cout << "verdict: " << describe(r) << std::endl;
    }
    ctx.code = verdict_exit(r);
}

void run_scheme_dump(Context& ctx, std::size_t depth, SeqEntry children) {
    std::vector<std::pair<FinSeq, IntervalDesc>> rows;
    const std::function<void(const FinSeq&)> walk = [&](const FinSeq& a) {
        rows.emplace_back(a, node_interval(a));
        if (a.size() < depth) {
            for (SeqEntry e = 0; e < children; ++e) walk(a.extended(e));
        }
    };
    walk(FinSeq{});
    if (ctx.json_out) {
        json out = json::array();
        for (const auto& [node, interval] : rows) {
            out.push_back(json{{"node", to_json(node)}, {"interval", to_json(interval)}});
        }
        emit(out);
    } else {
        std::size_t width = 0;
        for (const auto& [node, interval] : rows) width = std::max(width, node.size());
        // Each entry takes at most a few characters; pad by the printed form.
        std::size_t text_width = 0;
        std::vector<std::string> names;
        names.reserve(rows.size());
        for (const auto& [node, interval] : rows) {
            names.push_back(pretty_seq(node));
            // The angle brackets are 3 bytes each in UTF-8; count display columns.
            text_width = std::max(text_width, names.back().size() - 4);
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::cout << names[i];
            for (std::size_t pad = names[i].size() - 4; pad < text_width; ++pad) std::cout << ' ';
            std::cout << "  " << rows[i].second.str() << std::endl;
        }
    }
    ctx.code = kExitHolds;
}

void run_axioms(Context& ctx, SeqEntry entry_bound, std::size_t depth) {
    const CheckResult r = cut_laws_check(entry_bound, depth);
    if (ctx.json_out) {
        emit(to_json(r));
    } else {
        std::cout << "cut-law sweep (entries < " << entry_bound << ", levels <= " << depth
                  << "): " << describe(r) << std::endl;
    }
    ctx.code = verdict_exit(r);
}

void run_sigma_member(Context& ctx, const std::string& member_text, const std::string& base_text,
                      std::size_t level, std::size_t budget) {
    const Branch z = parse_branch_arg(member_text, "--member");
    const Branch p = parse_branch_arg(base_text, "--base");
    const Trivalent t = basic_nbhd_member(z, p, level, budget);
    if (ctx.json_out) {
        emit(to_json(t));
    } else {
        std::cout << "member " << z.str() << " of basic neighborhood (" << p.str() << ", level "
                  << level << "): " << trivalent_name(t) << std::endl;
    }
    ctx.code = trivalent_exit(t);
}

void run_doublearrow_check(Context& ctx, const std::string& relation_name, unsigned long grid,
                           std::size_t k_max) {
    const RelationKind rel =
        relation_name == "lex" ? RelationKind::Lex : RelationKind::Constructed;

    // Sample grid in lexicographic order over the reduced space (the carrier
    // of the aggregate check, which excludes the maximum (1,0)): side-1 copies
    // of i/N for i < N and side-0 copies for 0 < i < N.
    std::vector<DoubleArrowPoint> samples;
    samples.reserve(2 * grid);
    for (unsigned long i = 0; i < grid; ++i) {
        const Rat v(static_cast<long>(i), grid);
        if (i > 0) samples.emplace_back(v, 0);
        samples.emplace_back(v, 1);
    }

    std::vector<BidirCheckReport> reports;
    reports.reserve(samples.size());
    for (const DoubleArrowPoint& z : samples) {
        const LookDirection dir = z.side() == 1 ? LookDirection::Right : LookDirection::Left;
        reports.push_back(looks_check(z, dir, k_max, rel));
    }
    const CheckResult aggregate = bidirected_check(rel, samples, k_max);

    if (ctx.json_out) {
        json points = json::array();
        for (const BidirCheckReport& r : reports) points.push_back(to_json(r));
        emit(json{{"relation", relation_name},
                  {"grid", grid},
                  {"k_max", k_max},
                  {"points", std::move(points)},
                  {"aggregate", to_json(aggregate)}});
    } else {
        std::cout << "relation " << relation_name << ", grid denominator " << grid << ", k_max "
                  << k_max << ":" << std::endl;
        for (const BidirCheckReport& r : reports) {
            std::cout << "  " << std::left << std::setw(12) << r.point.str()
                      << (r.direction == LookDirection::Right ? " looks right" : " looks left ")
                      << "  witnesses " << r.witnesses.size() << "  " << describe(r.verdict)
                      << std::endl;
        }
        std::cout << "aggregate: " << describe(aggregate) << std::endl;
    }
    ctx.code = verdict_exit(aggregate);
}

void run_diagonalize(Context& ctx, const std::string& oracle_name, std::size_t steps,
                     std::size_t budget, const std::string& out_path) {
    const std::unique_ptr<SchemeOracle> oracle = make_oracle(oracle_name);
    const std::string space_name =
        oracle_name == "vs" ? "sorgenfrey" : "double-arrow-constructed";
    const std::unique_ptr<BidirSpace> space = make_space(space_name);

    const DiagTrace trace = diagonalize(*oracle, *space, steps, budget);
    const json jt = to_json(trace);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw invalid_input("--out: cannot open \"" + out_path + "\" for writing");
        out << jt.dump(2) << "\n";
        if (!out) throw invalid_input("--out: write to \"" + out_path + "\" failed");
    }

    if (ctx.json_out) {
        emit(jt);
    } else {
        std::cout << "oracle " << trace.oracle_name << " on space " << trace.space_name
                  << std::endl;
        std::cout << "status: " << diag_status_name(trace.status);
        if (!trace.stop_reason.empty()) std::cout << " -- " << trace.stop_reason;
        std::cout << std::endl;
        for (const DiagStep& s : trace.steps) {
            std::cout << "  step " << s.n << (s.even ? " (even)" : "  (odd)") << "  x="
                      << point_str(s.x) << "  m=" << s.m << "  xn=" << point_str(s.xn)
                      << "  cone=" << s.cone_index << "  k=" << s.k << "  a=" << s.a
                      << "  next=" << pretty_seq(s.p_next) << std::endl;
        }
        std::cout << "nodes: ";
        for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
            if (i) std::cout << " -> ";
            std::cout << pretty_seq(trace.nodes[i]);
        }
        std::cout << std::endl;
        if (!trace.certificates.empty()) {
            std::cout << "certificates: " << trace.certificates.size()
                      << " (full payloads under --json or --out)" << std::endl;
        }
    }
    ctx.code = status_exit(trace.status);
}

void run_verify_trace(Context& ctx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open trace file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    const DiagTrace trace = diag_trace_from_json(parse_json_arg(buf.str(), path));
    const CheckResult r = verify_trace(trace);
    if (ctx.json_out) {
        emit(to_json(r));
    } else {
        std::cout << "trace: oracle " << trace.oracle_name << " on space " << trace.space_name
                  << ", " << trace.steps.size() << " steps, status "
                  << diag_status_name(trace.status) << std::endl;
        std::cout << "verdict: " << describe(r) << std::endl;
    }
    ctx.code = verdict_exit(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact-arithmetic interval schemes, cut machinery, split-interval "
        "bidirectedness reports, and the diagonalization driver"};
    app.require_subcommand(1);

    Context ctx;
    app.add_flag("--json", ctx.json_out, "emit the library's JSON forms instead of tables");
    app.add_option("--seed", ctx.seed,
                   "sampling seed for sampled checks (all shipped checks are exact and ignore it)");

    struct {
        std::string x;
        std::size_t depth = 0;
    } enc;
    CLI::App* enc_cmd =
        app.add_subcommand("encode", "node of the coding walk through a rational");
    enc_cmd->fallthrough();
    enc_cmd->add_option("--x", enc.x, "rational point, \"p/q\" or \"p\"")->required();
    enc_cmd->add_option("--depth", enc.depth, "node length")->required();
    enc_cmd->callback([&] { run_encode(ctx, enc.x, enc.depth); });

    struct {
        std::string branch;
        std::size_t budget = 64;
    } dec;
    CLI::App* dec_cmd = app.add_subcommand("decode", "value of a branch of the coding walk");
    dec_cmd->fallthrough();
    dec_cmd
        ->add_option("--branch", dec.branch,
                     "branch JSON, e.g. {\"prefix\":[0,2],\"tail\":{\"kind\":\"zero\"}}")
        ->required();
    dec_cmd->add_option("--depth-budget", dec.budget, "entry scan budget (default 64)");
    dec_cmd->callback([&] { run_decode(ctx, dec.branch, dec.budget); });

    struct {
        std::string point;
        std::size_t level = 0;
        std::size_t budget = 64;
    } cutc;
    CLI::App* cut_cmd = app.add_subcommand(
        "cut", "nested-neighborhood evidence for the branch through a point");
    cut_cmd->fallthrough();
    cut_cmd->add_option("--point", cutc.point, "rational point \"p/q\"")->required();
    cut_cmd->add_option("--level", cutc.level, "largest neighborhood level checked")->required();
    cut_cmd->add_option("--depth-budget", cutc.budget, "entry scan budget (default 64)");
    cut_cmd->callback([&] { run_cut(ctx, cutc.point, cutc.level, cutc.budget); });

    struct {
        std::size_t depth = 0;
        SeqEntry children = 0;
    } dump;
    CLI::App* dump_cmd =
        app.add_subcommand("scheme-dump", "node intervals of the real-line scheme");
    dump_cmd->fallthrough();
    dump_cmd->add_option("--depth", dump.depth, "largest node length")->required();
    dump_cmd->add_option("--children", dump.children, "children enumerated per node")->required();
    dump_cmd->callback([&] { run_scheme_dump(ctx, dump.depth, dump.children); });

    struct {
        SeqEntry entry_bound = 0;
        std::size_t depth = 0;
    } ax;
    CLI::App* ax_cmd =
        app.add_subcommand("axioms", "exhaustive cut-law sweep over the sequence-space scheme");
    ax_cmd->fallthrough();
    ax_cmd->add_option("--entry-bound", ax.entry_bound, "entries range over [0, bound)")
        ->required();
    ax_cmd->add_option("--depth", ax.depth, "head length and level bound")->required();
    ax_cmd->callback([&] { run_axioms(ctx, ax.entry_bound, ax.depth); });

    struct {
        std::string member;
        std::string base;
        std::size_t level = 0;
        std::size_t budget = 64;
    } sm;
    CLI::App* sm_cmd = app.add_subcommand(
        "sigma-member", "membership in a basic neighborhood of the sequence-space topology");
    sm_cmd->fallthrough();
    sm_cmd->add_option("--member", sm.member, "candidate branch JSON")->required();
    sm_cmd->add_option("--base", sm.base, "base branch JSON")->required();
    sm_cmd->add_option("--level", sm.level, "agreement level of the neighborhood")->required();
    sm_cmd->add_option("--depth-budget", sm.budget, "entry scan budget (default 64)");
    sm_cmd->callback([&] { run_sigma_member(ctx, sm.member, sm.base, sm.level, sm.budget); });

    struct {
        std::string relation;
        unsigned long grid = 0;
        std::size_t kmax = 0;
    } dac;
    CLI::App* dac_cmd = app.add_subcommand(
        "doublearrow-check", "bidirectedness report over a split-interval sample grid");
    dac_cmd->fallthrough();
    dac_cmd->add_option("--relation", dac.relation, "lex or constructed")
        ->required()
        ->check(CLI::IsMember({"lex", "constructed"}));
    dac_cmd->add_option("--grid", dac.grid, "grid denominator: samples i/N on both sides")
        ->required()
        ->check(CLI::PositiveNumber);
    dac_cmd->add_option("--kmax", dac.kmax, "canonical neighborhoods checked per point")
        ->required();
    dac_cmd->callback([&] { run_doublearrow_check(ctx, dac.relation, dac.grid, dac.kmax); });

    struct {
        std::string oracle;
        std::size_t steps = 0;
        std::size_t budget = 64;
        std::string out;
    } dg;
    CLI::App* dg_cmd = app.add_subcommand(
        "diagonalize", "run the diagonal recursion against a base oracle");
    dg_cmd->fallthrough();
    dg_cmd->add_option("--oracle", dg.oracle, "vs or double-arrow-w")
        ->required()
        ->check(CLI::IsMember({"vs", "double-arrow-w"}));
    dg_cmd->add_option("--steps", dg.steps, "rounds to attempt")->required();
    dg_cmd->add_option("--budget", dg.budget, "entry scan budget (default 64)");
    dg_cmd->add_option("--out", dg.out, "also write the trace JSON to this file");
    dg_cmd->callback([&] { run_diagonalize(ctx, dg.oracle, dg.steps, dg.budget, dg.out); });

    struct {
        std::string file;
    } vt;
    CLI::App* vt_cmd =
        app.add_subcommand("verify-trace", "re-check a recorded trace's invariants offline");
    vt_cmd->fallthrough();
    vt_cmd->add_option("file", vt.file, "trace JSON file")->required()->check(CLI::ExistingFile);
    vt_cmd->callback([&] { run_verify_trace(ctx, vt.file); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const souslin::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\nRun with --help for usage." << std::endl;
        return kExitUsage;
    } catch (const souslin::precondition_failed& e) {
        std::cerr << "error: " << e.what() << "\nRun with --help for usage." << std::endl;
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return kExitInternal;
    }
    return ctx.code;
}
