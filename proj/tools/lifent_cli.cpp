// lifent command line: exact measures, plug-in estimation, asymptotic
// constants, Monte Carlo studies, convergence traces and the reference-table
// reproduction.
//
// Exit codes: 0 success, 2 usage, 3 data validation, 4 reference-table
// mismatch, 5 statistical assertion failure (--assert).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lifent/io.hpp"
#include "lifent/tables.hpp"

namespace {

using namespace lifent;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitTables = 4;
constexpr int kExitStatistical = 5;

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Raised when a flag value (not the data it points at) is bad; maps to exit 2.
struct FlagError {
    Error err;
};

template <class F>
auto flag_phase(F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw FlagError{e};
    }
}

bool measure_in_nats(MeasureId id) {
    return id != MeasureId::mean_residual && id != MeasureId::mean_past;
}

struct CommonFlags {
    std::string dist_path, pair_path, support_path;
    std::string measure_str;
    int j = 0;
    std::string convention = "paper";
    std::string cov_mode = "delta";
    std::string out_path;
    std::string format = "json";
};

IndexConvention conv_of(const CommonFlags& f) {
    if (f.convention == "paper") return IndexConvention::paper_inclusive;
    if (f.convention == "proper") return IndexConvention::conditional_proper;
    raise(errc::parse_error, "unknown convention '" + f.convention + "'; valid: paper, proper");
}

// Loaded p plus optional exact q side.
struct Inputs {
    std::optional<FinitePmf> p;
    std::optional<FinitePmf> q;
};

Inputs load_inputs(const CommonFlags& f, bool need_q) {
    Inputs in;
    if (!f.pair_path.empty()) {
        auto parsed = parse_paired_json(read_file(f.pair_path));
        in.p = parsed.p();
        in.q = parsed.q();
    } else if (!f.dist_path.empty()) {
        auto parsed = parse_distribution_file(read_file(f.dist_path));
        if (std::holds_alternative<PairedPmfs>(parsed)) {
            in.p = std::get<PairedPmfs>(parsed).p();
            in.q = std::get<PairedPmfs>(parsed).q();
        } else {
            in.p = std::get<FinitePmf>(parsed);
        }
    }
    if (need_q && !in.q)
        raise(errc::missing_q, "this measure needs a paired file ({\"p\":..,\"q\":..}); "
                               "pass it via --pair");
    return in;
}

// ---- exact ----------------------------------------------------------------

struct ExactCell {
    std::optional<int> j;
    std::optional<double> value;
    std::string status; // "ok" or "x"
};

int cmd_exact(const CommonFlags& f) {
    const MeasureId id = flag_phase([&] { return parse_measure(f.measure_str); });
    const IndexConvention conv = flag_phase([&] { return conv_of(f); });
    Inputs in = load_inputs(f, measure_is_paired(id));
    if (!in.p) raise(errc::parse_error, "no distribution given; pass --dist or --pair");
    const FinitePmf& p = *in.p;
    const FinitePmf* q = in.q ? &*in.q : nullptr;

    std::vector<ExactCell> cells;
    bool any_x = false;
    if (!measure_is_time_indexed(id)) {
        cells.push_back({std::nullopt, evaluate(id, p, q, {}, conv), "ok"});
    } else if (f.j != 0) {
        if (measure_is_residual_type(id) && f.j == p.size()) {
            cells.push_back({f.j, std::nullopt, "x"});
            any_x = true;
        } else {
            cells.push_back({f.j, evaluate(id, p, q, f.j, conv), "ok"});
        }
    } else {
        for (int j = 1; j <= p.size(); ++j) {
            if (measure_is_residual_type(id) && j == p.size()) {
                cells.push_back({j, std::nullopt, "x"});
                any_x = true;
            } else {
                cells.push_back({j, evaluate(id, p, q, j, conv), "ok"});
            }
        }
    }

    const char* unit = measure_in_nats(id) ? " nats" : "";
    for (const auto& c : cells) {
        std::string head = f.measure_str;
        if (c.j) head += "(j=" + std::to_string(*c.j) + ")";
        if (c.value)
            std::cout << head << " = " << fmt(*c.value) << unit << "\n";
        else
            std::cout << head << " = x (undefined: survival past the last support point is zero)\n";
    }

    if (!f.out_path.empty()) {
        if (f.format == "csv") {
            std::string csv = "measure,j,value,status\n";
            for (const auto& c : cells) {
                csv += f.measure_str;
                csv += ',';
                csv += c.j ? std::to_string(*c.j) : "";
                csv += ',';
                csv += c.value ? format_double(*c.value) : "";
                csv += ',';
                csv += c.status;
                csv += '\n';
            }
            write_file(f.out_path, csv);
        } else {
            nlohmann::json out;
            out["measure"] = f.measure_str;
            out["convention"] = f.convention;
            auto& arr = out["values"];
            arr = nlohmann::json::array();
            for (const auto& c : cells) {
                nlohmann::json cj;
                cj["j"] = c.j ? nlohmann::json(*c.j) : nlohmann::json(nullptr);
                cj["value"] = c.value ? nlohmann::json(*c.value) : nlohmann::json(nullptr);
                cj["status"] = c.status;
                arr.push_back(cj);
            }
            write_file(f.out_path, out.dump(2) + "\n");
        }
    }
    // a lone inadmissible cell is a data-level condition, a full sweep is not
    return (any_x && f.j != 0) ? kExitData : 0;
}

// ---- estimate ---------------------------------------------------------------

int cmd_estimate(const CommonFlags& f, const std::string& sample_path,
                 const std::string& counts_path) {
    const MeasureId id = flag_phase([&] { return parse_measure(f.measure_str); });
    const IndexConvention conv = flag_phase([&] { return conv_of(f); });
    Inputs in = load_inputs(f, measure_is_paired(id));

    std::optional<EmpiricalDist> emp;
    if (!counts_path.empty()) {
        emp = parse_counts_json(read_file(counts_path));
    } else if (!sample_path.empty()) {
        std::vector<double> support;
        if (!f.support_path.empty())
            support = parse_support_json(read_file(f.support_path));
        else if (in.p)
            support.assign(in.p->support().begin(), in.p->support().end());
        else
            raise(errc::parse_error,
                  "a declared support is required; pass --support or --dist");
        const auto sample = parse_sample_lines(read_file(sample_path));
        emp = fit_empirical(sample, support);
    } else {
        raise(errc::parse_error, "no data given; pass --sample or --counts");
    }

    std::optional<int> j;
    if (measure_is_time_indexed(id)) {
        if (f.j == 0)
            raise(errc::bad_time_index,
                  std::string("measure '") + f.measure_str + "' needs --j");
        j = f.j;
    }
    const FinitePmf* q = in.q ? &*in.q : nullptr;
    const double value = plugin_measure(*emp, id, j, q, conv);
    const char* unit = measure_in_nats(id) ? " nats" : "";
    std::cout << "plugin " << f.measure_str;
    if (j) std::cout << "(j=" << *j << ")";
    std::cout << " = " << fmt(value) << unit << "  [n=" << emp->n() << "]\n";

    nlohmann::json out;
    out["measure"] = f.measure_str;
    out["j"] = j ? nlohmann::json(*j) : nlohmann::json(nullptr);
    out["n"] = emp->n();
    out["estimate"] = value;

    if (in.p && same_support(emp->support(), in.p->support())) {
        const double truth = evaluate(id, *in.p, q, j, conv);
        const DeviationStats dev = deviation_stats(*emp, *in.p, j.value_or(in.p->size()));
        std::cout << "truth  " << fmt(truth) << "   error " << fmt(value - truth) << "\n";
        std::cout << "deviations: a_n(p)=" << fmt(dev.a_n_p) << "  a_n(P)=" << fmt(dev.a_n_P)
                  << "  a_n(Pbar)=" << fmt(dev.a_n_Pbar) << "  a_Rn(p)=" << fmt(dev.a_Rn_p)
                  << "  a_Pn(p)=" << fmt(dev.a_Pn_p) << "\n";
        out["truth"] = truth;
        out["error"] = value - truth;
        out["a_n_p"] = dev.a_n_p;
        out["a_n_P"] = dev.a_n_P;
        out["a_n_Pbar"] = dev.a_n_Pbar;
        out["a_Rn_p"] = dev.a_Rn_p;
        out["a_Pn_p"] = dev.a_Pn_p;
    }
    if (!f.out_path.empty()) write_file(f.out_path, out.dump(2) + "\n");
    return 0;
}

// ---- asymptotics ------------------------------------------------------------

int cmd_asymptotics(const CommonFlags& f) {
    const MeasureId id = flag_phase([&] { return parse_measure(f.measure_str); });
    const CovMode mode = flag_phase([&] { return parse_cov_mode(f.cov_mode); });
    const IndexConvention conv = flag_phase([&] { return conv_of(f); });
    Inputs in = load_inputs(f, measure_is_paired(id));
    if (!in.p) raise(errc::parse_error, "no distribution given; pass --dist or --pair");
    std::optional<int> j;
    if (measure_is_time_indexed(id)) {
        if (f.j == 0)
            raise(errc::bad_time_index,
                  std::string("measure '") + f.measure_str + "' needs --j");
        j = f.j;
    }
    const FinitePmf* q = in.q ? &*in.q : nullptr;
    const AsymptoticSpec spec = sigma_sq(id, *in.p, q, j, mode, conv);
    const std::string json = asymptotic_spec_json(spec);
    std::cout << json;
    if (!f.out_path.empty()) write_file(f.out_path, json);
    return 0;
}

// ---- mc / trace -------------------------------------------------------------

int cmd_mc(const CommonFlags& f, std::int64_t n, int reps, std::uint64_t seed, bool assert_ks) {
    const MeasureId id = flag_phase([&] { return parse_measure(f.measure_str); });
    flag_phase([&] {
        if (reps < 2) raise(errc::too_few_draws, "--reps must be at least 2");
        if (n < 1) raise(errc::bad_study, "--n must be at least 1");
        return 0;
    });
    const IndexConvention conv = flag_phase([&] { return conv_of(f); });
    const CovMode mode = flag_phase([&] { return parse_cov_mode(f.cov_mode); });
    Inputs in = load_inputs(f, measure_is_paired(id));
    if (!in.p) raise(errc::parse_error, "no distribution given; pass --dist or --pair");
    std::optional<int> j;
    if (measure_is_time_indexed(id)) {
        if (f.j == 0)
            raise(errc::bad_time_index,
                  std::string("measure '") + f.measure_str + "' needs --j");
        j = f.j;
    }
    McStudy study{*in.p, in.q, id, j, n, reps, seed, mode, conv};

    const McReport report = run_study(study);
    const std::string summary = mc_summary_json(study, report);
    std::cout << summary;
    if (!f.out_path.empty()) {
        write_file(f.out_path + ".json", summary);
        write_file(f.out_path + ".csv", mc_draws_csv(report));
    }
    if (assert_ks && report.ks_stat_studentized > report.ks_critical_95) {
        std::cerr << "KS assertion failed: " << fmt(report.ks_stat_studentized) << " > "
                  << fmt(report.ks_critical_95) << "\n";
        return kExitStatistical;
    }
    return 0;
}

std::vector<std::int64_t> parse_grid(const std::string& spec) {
    std::vector<std::int64_t> grid;
    if (spec.find(':') != std::string::npos) {
        std::int64_t a = 0, step = 0, b = 0;
        if (std::sscanf(spec.c_str(), "%ld:%ld:%ld", &a, &step, &b) != 3 || step <= 0)
            raise(errc::bad_grid, "grid must be start:step:stop or a comma list");
        for (std::int64_t v = a; v <= b; v += step) grid.push_back(v);
    } else {
        std::size_t pos = 0;
        while (pos < spec.size()) {
            const auto comma = spec.find(',', pos);
            const std::string tok = spec.substr(pos, comma == std::string::npos ? spec.npos
                                                                                : comma - pos);
            try {
                grid.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                raise(errc::bad_grid, "bad grid entry '" + tok + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return grid;
}

int cmd_trace(const CommonFlags& f, const std::string& grid_spec, std::uint64_t seed) {
    const MeasureId id = flag_phase([&] { return parse_measure(f.measure_str); });
    const IndexConvention conv = flag_phase([&] { return conv_of(f); });
    const auto grid = parse_grid(grid_spec);
    Inputs in = load_inputs(f, measure_is_paired(id));
    if (!in.p) raise(errc::parse_error, "no distribution given; pass --dist or --pair");
    std::optional<int> j;
    if (measure_is_time_indexed(id)) {
        if (f.j == 0)
            raise(errc::bad_time_index,
                  std::string("measure '") + f.measure_str + "' needs --j");
        j = f.j;
    }
    const FinitePmf* q = in.q ? &*in.q : nullptr;
    const TraceResult tr = run_trace(*in.p, id, j, q, grid, seed, conv);
    const std::string summary = trace_summary_json(id, j, seed, tr);
    std::cout << summary;
    if (!f.out_path.empty()) {
        write_file(f.out_path + ".json", summary);
        write_file(f.out_path + ".csv", trace_csv(tr));
    }
    return 0;
}

// ---- tables -----------------------------------------------------------------

int cmd_tables(const std::string& out_path, const std::string& format) {
    const auto cells = reference_table_cells();
    int matched = 0, flagged_mismatch = 0, failed = 0;
    for (const auto& c : cells) {
        if (c.is_cross_cell()) continue;
        std::string line = c.table + " " + c.row;
        if (c.j) line += " j=" + std::to_string(*c.j);
        line += ": computed " + fmt(*c.computed) + ", reference " + fmt(*c.reference);
        if (c.admissible_matches()) {
            ++matched;
            std::cout << "[ok]      " << line << "\n";
        } else if (c.flagged) {
            ++flagged_mismatch;
            std::cout << "[flagged] " << line << " -- " << c.note << "\n";
        } else {
            ++failed;
            std::cout << "[FAIL]    " << line << " (tolerance " << fmt(c.tolerance) << ")\n";
        }
    }
    std::cout << "tables: " << matched << " matched, " << flagged_mismatch
              << " flagged mismatches (expected), " << failed << " failures\n";

    if (!out_path.empty()) {
        if (format == "csv") {
            std::string csv = "table,row,j,computed,reference,tolerance,status,note\n";
            for (const auto& c : cells) {
                csv += c.table + "," + c.row + ",";
                csv += c.j ? std::to_string(*c.j) : "";
                csv += ',';
                csv += c.computed ? format_double(*c.computed) : "";
                csv += ',';
                csv += c.reference ? format_double(*c.reference) : "";
                csv += ',';
                csv += format_double(c.tolerance);
                csv += ',';
                csv += c.is_cross_cell() ? "x" : (c.admissible_matches() ? "ok"
                                                  : c.flagged             ? "flagged"
                                                                          : "fail");
                csv += ",\"" + c.note + "\"\n";
            }
            write_file(out_path, csv);
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : cells) {
                nlohmann::json cj;
                cj["table"] = c.table;
                cj["row"] = c.row;
                cj["j"] = c.j ? nlohmann::json(*c.j) : nlohmann::json(nullptr);
                cj["computed"] = c.computed ? nlohmann::json(*c.computed) : nlohmann::json(nullptr);
                cj["reference"] =
                    c.reference ? nlohmann::json(*c.reference) : nlohmann::json(nullptr);
                cj["tolerance"] = c.tolerance;
                cj["status"] = c.is_cross_cell() ? "x"
                               : c.admissible_matches() ? "ok"
                               : c.flagged ? "flagged"
                                           : "fail";
                cj["note"] = c.note;
                arr.push_back(cj);
            }
            write_file(out_path, arr.dump(2) + "\n");
        }
    }
    return failed == 0 ? 0 : kExitTables;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete lifetime information measures: exact values, plug-in "
                 "estimation, asymptotics and Monte Carlo verification"};
    app.require_subcommand(1);

    CommonFlags f;
    std::string sample_path, counts_path, grid_spec = "100:100:30000";
    std::int64_t n = 10000;
    int reps = 2000;
    std::uint64_t seed = 42;
    bool assert_ks = false;

    auto add_common = [&](CLI::App* cmd, bool with_j) {
        cmd->add_option("--dist", f.dist_path, "distribution JSON {support, probs}");
        cmd->add_option("--pair", f.pair_path, "paired JSON {p:{...}, q:{...}}");
        cmd->add_option("--measure", f.measure_str, "measure name (see --help-measures)")
            ->required();
        if (with_j) cmd->add_option("--j", f.j, "1-based time index");
        cmd->add_option("--convention", f.convention, "residual summation range: paper|proper")
            ->check(CLI::IsMember({"paper", "proper"}));
        cmd->add_option("--out", f.out_path, "output file (or base path for mc/trace)");
        cmd->add_option("--format", f.format, "machine output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* c_exact = app.add_subcommand("exact", "exact measure values from a distribution file");
    add_common(c_exact, true);

    auto* c_est = app.add_subcommand("estimate", "plug-in estimate from sample data");
    add_common(c_est, true);
    c_est->add_option("--support", f.support_path, "support JSON when no --dist is given");
    c_est->add_option("--sample", sample_path, "sample file, one observation per line");
    c_est->add_option("--counts", counts_path, "counts JSON {support, counts}");

    auto* c_asy = app.add_subcommand("asymptotics", "a.s. bound constant A and asymptotic variance");
    add_common(c_asy, true);
    c_asy->add_option("--cov-mode", f.cov_mode, "paper-independent|delta")
        ->check(CLI::IsMember({"paper-independent", "delta"}));

    auto* c_mc = app.add_subcommand("mc", "Monte Carlo normality/variance study");
    add_common(c_mc, true);
    c_mc->add_option("--cov-mode", f.cov_mode, "paper-independent|delta")
        ->check(CLI::IsMember({"paper-independent", "delta"}));
    c_mc->add_option("--n", n, "sample size per replication");
    c_mc->add_option("--reps", reps, "number of replications");
    c_mc->add_option("--seed", seed, "master seed");
    c_mc->add_flag("--assert", assert_ks, "exit 5 if the studentized KS exceeds 1.36/sqrt(R)");

    auto* c_tr = app.add_subcommand("trace", "single-path convergence trace over an n grid");
    add_common(c_tr, true);
    c_tr->add_option("--grid", grid_spec, "n grid: start:step:stop or comma list");
    c_tr->add_option("--seed", seed, "master seed");

    std::string tables_out, tables_format = "json";
    auto* c_tab = app.add_subcommand("tables", "reproduce the reference tables and diff them");
    c_tab->add_option("--out", tables_out, "write cell diffs to file");
    c_tab->add_option("--format", tables_format, "machine output format")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(c_exact)) return cmd_exact(f);
        if (app.got_subcommand(c_est)) return cmd_estimate(f, sample_path, counts_path);
        if (app.got_subcommand(c_asy)) return cmd_asymptotics(f);
        if (app.got_subcommand(c_mc)) return cmd_mc(f, n, reps, seed, assert_ks);
        if (app.got_subcommand(c_tr)) return cmd_trace(f, grid_spec, seed);
        if (app.got_subcommand(c_tab)) return cmd_tables(tables_out, tables_format);
    } catch (const FlagError& fe) {
        std::cerr << "usage error [" << errc_name(fe.err.code()) << "]: " << fe.err.what()
                  << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
