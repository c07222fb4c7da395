#include "exstab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "exstab/analytic.hpp"
#include "exstab/enumerate.hpp"
#include "exstab/error.hpp"
#include "exstab/instance.hpp"
#include "exstab/montecarlo.hpp"
#include "exstab/stability.hpp"

namespace exstab {
namespace {

using nlohmann::json;

std::string fmt_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_elapsed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
    out << content;
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
    if (path.empty())
        out << content;
    else
        write_file(path, content);
}

MatchKind parse_side(const std::string& s) {
    return s == "two" ? MatchKind::two_sided : MatchKind::one_sided;
}

StabilityKind parse_kind(const std::string& s) {
    if (s == "e-stable" || s == "exchange") return StabilityKind::exchange;
    if (s == "stable" || s == "classic") return StabilityKind::classic;
    return StabilityKind::doubly;
}

const char* side_name(MatchKind k) { return k == MatchKind::two_sided ? "two" : "one"; }

// ---- gen -------------------------------------------------------------

struct GenOpts {
    std::string side;
    int n = 0;
    std::uint64_t seed = 0;
    std::string out_path;
};

void cmd_gen(const GenOpts& o, std::ostream& out) {
    const std::string text = o.side == "two" ? write_instance(generate_two_sided(o.n, Seed{o.seed}))
                                             : write_instance(generate_one_sided(o.n, Seed{o.seed}));
    emit(out, o.out_path, text);
}

// ---- check -----------------------------------------------------------

struct CheckOpts {
    std::string instance_path, matching_path, kind, format;
};

json report_to_json(const BlockingReport& rep) {
    json j;
    j["verdict"] = rep.verdict;
    if (rep.witness) {
        j["witness"] = {{"type", witness_type_name(rep.witness->type)},
                        {"pair", {rep.witness->a + 1, rep.witness->b + 1}}};
    }
    return j;
}

std::string report_to_csv(const BlockingReport& rep) {
    std::string row = "verdict,witness_type,pair_a,pair_b\n";
    row += rep.verdict ? "true" : "false";
    if (rep.witness) {
        row += ",";
        row += witness_type_name(rep.witness->type);
        row += "," + std::to_string(rep.witness->a + 1) + "," + std::to_string(rep.witness->b + 1);
    } else {
        row += ",,,";
    }
    row += '\n';
    return row;
}

BlockingReport check_dispatch(const AnyInstance& inst, const Matching& m, StabilityKind kind) {
    return std::visit(
        [&](const auto& i) -> BlockingReport {
            switch (kind) {
                case StabilityKind::exchange: return is_exchange_stable(i, m);
                case StabilityKind::classic: return is_stable(i, m);
                case StabilityKind::doubly: {
                    // exchange is checked first; the witness comes from the
                    // first failing check
                    BlockingReport ex = is_exchange_stable(i, m);
                    if (!ex.verdict) return ex;
                    return is_stable(i, m);
                }
            }
            return {};
        },
        inst);
}

void cmd_check(const CheckOpts& o, std::ostream& out) {
    const AnyInstance inst = read_instance(read_file(o.instance_path));
    const Matching m = read_matching(read_file(o.matching_path));
    const MatchKind want =
        std::holds_alternative<PreferenceInstance>(inst) ? MatchKind::two_sided : MatchKind::one_sided;
    if (m.kind != want || m.size() != instance_size(inst))
        throw ContractError("instance and matching files disagree on side or size");
    const BlockingReport rep = check_dispatch(inst, m, parse_kind(o.kind));
    if (o.format == "json")
        out << report_to_json(rep).dump() << '\n';
    else
        out << report_to_csv(rep);
}

// ---- enumerate ---------------------------------------------------------

struct EnumOpts {
    std::string instance_path, kind, format;
    bool retain = false;
};

void cmd_enumerate(const EnumOpts& o, std::ostream& out) {
    const AnyInstance inst = read_instance(read_file(o.instance_path));
    const StabilityKind kind = parse_kind(o.kind);
    const EnumerationResult res = std::visit(
        [&](const auto& i) { return enumerate_pruned(i, kind, o.retain); }, inst);
    if (o.format == "json") {
        json j;
        j["instance_id"] = o.instance_path;
        j["kind"] = stability_kind_name(res.kind);
        j["count"] = res.count;
        j["nodes_visited"] = res.nodes_visited;
        if (o.retain) {
            json ms = json::array();
            for (const Matching& m : res.matchings) {
                json jm = json::array();
                for (int p : m.partner) jm.push_back(p + 1);
                ms.push_back(jm);
            }
            j["matchings"] = ms;
        }
        out << j.dump() << '\n';
    } else {
        out << "instance_id,kind,count,nodes_visited\n"
            << o.instance_path << ',' << stability_kind_name(res.kind) << ',' << res.count << ','
            << res.nodes_visited << '\n';
    }
}

// ---- exact -------------------------------------------------------------

struct ExactOpts {
    std::string side, quantity, format;
    int n = 0;
};

void cmd_exact(const ExactOpts& o, std::ostream& out) {
    Rational value;
    std::string name;
    if (o.quantity == "p") {
        name = "p_estable";
        value = o.side == "two" ? exact_p_estable_two_sided(o.n) : exact_p_estable_one_sided(o.n);
    } else if (o.quantity == "expected") {
        name = "expected_count";
        value = o.side == "two" ? exact_expected_count_two_sided(o.n)
                                : exact_expected_count_one_sided(o.n);
    } else {
        name = "p_doubly";
        value = exact_p_doubly_one_sided(o.n);  // one-sided only, validated at parse
    }
    if (o.format == "json") {
        json j;
        j["n"] = o.n;
        j["quantity"] = name;
        j["num"] = numerator_string(value);
        j["den"] = denominator_string(value);
        j["value"] = to_double(value);
        out << j.dump() << '\n';
    } else {
        out << "n,quantity,numerator,denominator,float_value\n"
            << o.n << ',' << name << ',' << numerator_string(value) << ','
            << denominator_string(value) << ',' << fmt_g17(to_double(value)) << '\n';
    }
}

// ---- hcurve ------------------------------------------------------------

struct HcurveOpts {
    int grid = 99;
    bool maximize = false;
    std::string format;
};

void cmd_hcurve(const HcurveOpts& o, std::ostream& out) {
    if (o.maximize) {
        const auto [xi, h] = maximize_rate_function();
        if (o.format == "json") {
            json j;
            j["xi_max"] = xi;
            j["H_max"] = h;
            out << j.dump() << '\n';
        } else {
            out << "xi_max,H_max\n" << fmt_g17(xi) << ',' << fmt_g17(h) << '\n';
        }
        return;
    }
    if (o.format == "json") {
        json rows = json::array();
        for (int i = 1; i <= o.grid; ++i) {
            const double xi = static_cast<double>(i) / (o.grid + 1);
            rows.push_back({{"xi", xi}, {"H", rate_function(xi).h}});
        }
        out << json{{"grid", rows}}.dump() << '\n';
    } else {
        out << "xi,H\n";
        for (int i = 1; i <= o.grid; ++i) {
            const double xi = static_cast<double>(i) / (o.grid + 1);
            out << fmt_g17(xi) << ',' << fmt_g17(rate_function(xi).h) << '\n';
        }
    }
}

// ---- counts ------------------------------------------------------------

struct CountsOpts {
    std::string quantity, format;
    int n = -1;
    int nu = 0;
};

void cmd_counts(const CountsOpts& o, std::ostream& out) {
    BigInt value;
    if (o.quantity == "derangements")
        value = count_derangements(o.nu);
    else if (o.quantity == "B")
        value = count_B(o.nu);
    else if (o.quantity == "Bnnu")
        value = count_B2(o.n, o.nu);
    else
        value = count_even_cycle_perms(o.nu);
    const bool has_n = o.quantity == "Bnnu";
    if (o.format == "json") {
        json j;
        j["quantity"] = o.quantity;
        if (has_n) j["n"] = o.n;
        j["nu"] = o.nu;
        j["value"] = value.get_str();
        out << j.dump() << '\n';
    } else {
        out << "quantity,n,nu,value\n"
            << o.quantity << ',' << (has_n ? std::to_string(o.n) : "") << ',' << o.nu << ','
            << value.get_str() << '\n';
    }
}

// ---- estimate ----------------------------------------------------------

struct EstimateOpts {
    std::string side, kind, format;
    int n = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string ranks_path;
    std::string argmax_path;
    bool timing = false;
    double rank_epsilon = 0.1;
};

std::string summary_csv(const EstimateSummary& s, bool timing) {
    std::string row = "side,kind,n,trials,seed,mean,stderr,second_moment,ci_lo,ci_hi,elapsed_s\n";
    row += side_name(s.side);
    row += ',';
    row += stability_kind_name(s.kind);
    row += ',' + std::to_string(s.n) + ',' + std::to_string(s.trials) + ',' + std::to_string(s.seed);
    row += ',' + fmt_g17(s.mean) + ',' + fmt_g17(s.stderr_mean) + ',' + fmt_g17(s.second_moment);
    row += ',' + fmt_g17(s.ci_lo) + ',' + fmt_g17(s.ci_hi);
    // timing is suppressed by default so repeated runs are byte-identical
    row += ',' + fmt_elapsed(timing ? s.elapsed_s : 0.0);
    row += '\n';
    return row;
}

json summary_json(const EstimateSummary& s, bool timing) {
    json j;
    j["side"] = side_name(s.side);
    j["kind"] = stability_kind_name(s.kind);
    j["n"] = s.n;
    j["trials"] = s.trials;
    j["seed"] = s.seed;
    j["mean"] = s.mean;
    j["stderr"] = s.stderr_mean;
    j["second_moment"] = s.second_moment;
    j["ci_lo"] = s.ci_lo;
    j["ci_hi"] = s.ci_hi;
    j["elapsed_s"] = timing ? s.elapsed_s : 0.0;
    return j;
}

std::string ranks_csv(const RankLawResult& res, MatchKind side, int n) {
    std::string out = "side,n,instance_trial,matching_index,R,Q,R_norm\n";
    for (const RankSample& r : res.samples) {
        out += side_name(side);
        out += ',' + std::to_string(n) + ',' + std::to_string(r.trial) + ',' +
               std::to_string(r.matching_index) + ',' + std::to_string(r.r) + ',';
        if (side == MatchKind::two_sided) out += std::to_string(r.q);
        out += ',' + fmt_g17(r.r_norm) + '\n';
    }
    return out;
}

void cmd_estimate(const EstimateOpts& o, std::ostream& out) {
    ExperimentConfig cfg;
    cfg.side = parse_side(o.side);
    cfg.n = o.n;
    cfg.trials = o.trials;
    cfg.seed = Seed{o.seed};
    cfg.kind = parse_kind(o.kind);
    cfg.threads = o.threads;
    cfg.rank_epsilon = o.rank_epsilon;

    EstimateSummary summary;
    if (!o.ranks_path.empty()) {
        cfg.retain_ranks = true;
        const RankLawResult res = collect_rank_law(cfg);
        write_file(o.ranks_path, ranks_csv(res, cfg.side, cfg.n));
        summary = res.counts;
    } else if (!o.argmax_path.empty()) {
        const SecondMomentResult res = estimate_second_moment(cfg);
        std::string text = "# trial " + std::to_string(res.argmax_trial) + ", " +
                           std::to_string(res.max_count) + " matchings of kind " +
                           stability_kind_name(cfg.kind) + "\n";
        text += res.argmax_instance_text;
        write_file(o.argmax_path, text);
        summary = res.summary;
    } else if (cfg.kind == StabilityKind::doubly) {
        summary = estimate_doubly_stable_prob(cfg);
    } else {
        summary = estimate_counts(cfg);
    }

    if (o.format == "json")
        out << summary_json(summary, o.timing).dump() << '\n';
    else
        out << summary_csv(summary, o.timing);
}

// ---- report ------------------------------------------------------------

struct ReportOpts {
    std::vector<std::string> inputs;
    std::string out_path;
};

void cmd_report(const ReportOpts& o, std::ostream& out) {
    std::string header;
    std::string merged;
    for (const std::string& path : o.inputs) {
        std::istringstream in(read_file(path));
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("empty CSV \"" + path + "\"");
        if (header.empty()) {
            header = line;
            merged = header + '\n';
        } else if (line != header) {
            throw std::runtime_error("CSV headers disagree between inputs (\"" + path + "\")");
        }
        while (std::getline(in, line))
            if (!line.empty()) merged += line + '\n';
    }
    emit(out, o.out_path, merged);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exchange-stable matching toolkit"};
    app.require_subcommand(1);

    const auto side_values = CLI::IsMember({"two", "one"});
    const auto kind_values = CLI::IsMember({"e-stable", "stable", "doubly"});
    const auto format_values = CLI::IsMember({"csv", "json"});

    GenOpts gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random preference instance");
    gen_cmd->add_option("--side", gen.side, "market type")->required()->check(side_values);
    gen_cmd->add_option("--n", gen.n, "market size per side")->required();
    gen_cmd->add_option("--seed", gen.seed, "64-bit master seed (required: no wall-clock default)")
        ->required();
    gen_cmd->add_option("--out", gen.out_path, "output file (default: stdout)");

    CheckOpts check;
    auto* check_cmd = app.add_subcommand("check", "check a matching against an instance");
    check_cmd->add_option("--instance", check.instance_path, "instance file")->required();
    check_cmd->add_option("--matching", check.matching_path, "matching file")->required();
    check_cmd
        ->add_option("--kind", check.kind,
                     "stability notion (doubly runs the exchange check first)")
        ->required()
        ->check(CLI::IsMember({"exchange", "classic", "doubly"}));
    check_cmd->add_option("--format", check.format, "output encoding")
        ->default_val("csv")
        ->check(format_values);

    EnumOpts enumerate;
    auto* enum_cmd = app.add_subcommand("enumerate", "enumerate all matchings of a kind");
    enum_cmd->add_option("--instance", enumerate.instance_path, "instance file")->required();
    enum_cmd->add_option("--kind", enumerate.kind, "matching kind")->required()->check(kind_values);
    enum_cmd->add_flag("--retain", enumerate.retain,
                       "include the matchings themselves (JSON output only)");
    enum_cmd->add_option("--format", enumerate.format, "output encoding")
        ->default_val("csv")
        ->check(format_values);

    ExactOpts exact;
    auto* exact_cmd =
        app.add_subcommand("exact", "exact rational expectation formulas (cap via EXSTAB_TERM_CAP)");
    exact_cmd->add_option("--side", exact.side, "market type")->required()->check(side_values);
    exact_cmd->add_option("--n", exact.n, "market size")->required();
    exact_cmd->add_option("--quantity", exact.quantity, "p | expected | doubly (doubly: one-sided)")
        ->default_val("expected")
        ->check(CLI::IsMember({"p", "expected", "doubly"}));
    exact_cmd->add_option("--format", exact.format, "output encoding")
        ->default_val("csv")
        ->check(format_values);

    HcurveOpts hcurve;
    auto* hcurve_cmd = app.add_subcommand("hcurve", "second-moment rate function grid / maximizer");
    hcurve_cmd->add_option("--grid", hcurve.grid, "number of interior grid points")
        ->default_val(99)
        ->check(CLI::PositiveNumber);
    hcurve_cmd->add_flag("--maximize", hcurve.maximize, "emit the maximizer instead of the grid");
    hcurve_cmd->add_option("--format", hcurve.format, "output encoding")
        ->default_val("csv")
        ->check(format_values);

    CountsOpts counts;
    auto* counts_cmd = app.add_subcommand("counts", "combinatorial counters");
    counts_cmd
        ->add_option("--quantity", counts.quantity,
                     "derangements | B | Bnnu | evencycle (Bnnu also needs --n)")
        ->required()
        ->check(CLI::IsMember({"derangements", "B", "Bnnu", "evencycle"}));
    counts_cmd->add_option("--n", counts.n, "market size (Bnnu only)");
    counts_cmd->add_option("--nu", counts.nu, "argument nu")->required();
    counts_cmd->add_option("--format", counts.format, "output encoding")
        ->default_val("csv")
        ->check(format_values);

    EstimateOpts estimate;
    auto* est_cmd = app.add_subcommand(
        "estimate", "seeded Monte Carlo experiments (guidance: two-sided n <= 12, one-sided n <= 16)");
    est_cmd->add_option("--side", estimate.side, "market type")->required()->check(side_values);
    est_cmd->add_option("--n", estimate.n, "market size")->required();
    est_cmd->add_option("--trials", estimate.trials, "number of trials")
        ->required()
        ->check(CLI::PositiveNumber);
    est_cmd->add_option("--seed", estimate.seed, "64-bit master seed (required: no wall-clock default)")
        ->required();
    est_cmd->add_option("--kind", estimate.kind, "e-stable | stable | doubly (doubly estimates P(exists))")
        ->required()
        ->check(kind_values);
    est_cmd->add_option("--threads", estimate.threads, "requested parallelism (advisory; 1 = serial)")
        ->default_val(0);
    est_cmd->add_option("--ranks", estimate.ranks_path,
                        "write per-matching rank samples to this CSV (e-stable kind only)");
    est_cmd->add_option("--argmax-out", estimate.argmax_path,
                        "write the instance attaining the max count, in instance text format");
    est_cmd->add_flag("--timing", estimate.timing,
                      "report measured wall time in elapsed_s (off by default: keeps repeated "
                      "runs byte-identical)");
    est_cmd->add_option("--rank-epsilon", estimate.rank_epsilon,
                        "half-width of the rank-law band around 1")
        ->default_val(0.1);
    est_cmd->add_option("--format", estimate.format, "output encoding")
        ->default_val("csv")
        ->check(format_values);

    ReportOpts report;
    auto* report_cmd = app.add_subcommand("report", "merge summary CSV files");
    report_cmd->add_option("--in", report.inputs, "input CSV files")->required()->expected(-1);
    report_cmd->add_option("--out", report.out_path, "output file (default: stdout)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (gen_cmd->parsed()) {
            if (gen.side == "one" && (gen.n < 2 || gen.n % 2 != 0))
                throw ContractError("one-sided market needs even n >= 2");
            cmd_gen(gen, out);
        } else if (check_cmd->parsed()) {
            cmd_check(check, out);
        } else if (enum_cmd->parsed()) {
            cmd_enumerate(enumerate, out);
        } else if (exact_cmd->parsed()) {
            if (exact.quantity == "doubly" && exact.side != "one") {
                err << "--quantity doubly requires --side one\n";
                return 2;
            }
            cmd_exact(exact, out);
        } else if (hcurve_cmd->parsed()) {
            cmd_hcurve(hcurve, out);
        } else if (counts_cmd->parsed()) {
            if (counts.quantity == "Bnnu" && counts.n < 0) {
                err << "--quantity Bnnu requires --n\n";
                return 2;
            }
            cmd_counts(counts, out);
        } else if (est_cmd->parsed()) {
            if (!estimate.ranks_path.empty() && estimate.kind != "e-stable") {
                err << "--ranks records e-stable matchings; use --kind e-stable\n";
                return 2;
            }
            if (!estimate.ranks_path.empty() && !estimate.argmax_path.empty()) {
                err << "--ranks and --argmax-out select different experiments; pass one of them\n";
                return 2;
            }
            cmd_estimate(estimate, out);
        } else if (report_cmd->parsed()) {
            cmd_report(report, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace exstab
