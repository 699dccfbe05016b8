#include "lifent/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lifent {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
}

std::vector<double> number_array(const json& node, const std::string& path) {
    if (!node.is_array()) raise(errc::parse_error, path + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_number())
            raise(errc::parse_error, path + "[" + std::to_string(i) + "] is not a number");
        out.push_back(node[i].get<double>());
    }
    return out;
}

const json& require_field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key))
        raise(errc::parse_error, path.empty() ? std::string("missing field '") + key + "'"
                                              : path + ": missing field '" + key + "'");
    return obj.at(key);
}

FinitePmf pmf_from_json(const json& obj, const std::string& path) {
    auto support = number_array(require_field(obj, "support", path),
                                path.empty() ? "support" : path + ".support");
    auto probs = number_array(require_field(obj, "probs", path),
                              path.empty() ? "probs" : path + ".probs");
    try {
        return FinitePmf(std::move(support), std::move(probs));
    } catch (const Error& e) {
        raise(e.code(), path.empty() ? e.what() : path + ": " + e.what());
    }
}

} // namespace

FinitePmf parse_pmf_json(const std::string& text) { return pmf_from_json(parse_json(text), ""); }

PairedPmfs parse_paired_json(const std::string& text) {
    const json root = parse_json(text);
    FinitePmf p = pmf_from_json(require_field(root, "p", ""), "p");
    FinitePmf q = pmf_from_json(require_field(root, "q", ""), "q");
    return PairedPmfs(std::move(p), std::move(q));
}

std::variant<FinitePmf, PairedPmfs> parse_distribution_file(const std::string& text) {
    const json root = parse_json(text);
    if (root.is_object() && root.contains("p") && root.contains("q")) {
        FinitePmf p = pmf_from_json(root.at("p"), "p");
        FinitePmf q = pmf_from_json(root.at("q"), "q");
        return PairedPmfs(std::move(p), std::move(q));
    }
    return pmf_from_json(root, "");
}

std::vector<double> parse_support_json(const std::string& text) {
    const json root = parse_json(text);
    return number_array(require_field(root, "support", ""), "support");
}

EmpiricalDist parse_counts_json(const std::string& text) {
    const json root = parse_json(text);
    auto support = number_array(require_field(root, "support", ""), "support");
    const json& cnode = require_field(root, "counts", "");
    if (!cnode.is_array()) raise(errc::parse_error, "counts must be an array of integers");
    std::vector<std::int64_t> counts;
    counts.reserve(cnode.size());
    for (std::size_t i = 0; i < cnode.size(); ++i) {
        if (!cnode[i].is_number_integer())
            raise(errc::parse_error, "counts[" + std::to_string(i) + "] is not an integer");
        counts.push_back(cnode[i].get<std::int64_t>());
    }
    return EmpiricalDist::from_counts(std::move(support), std::move(counts));
}

std::vector<double> parse_sample_lines(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // trim whitespace; blank lines are allowed
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            raise(errc::parse_error,
                  "sample line " + std::to_string(lineno) + ": '" + tok + "' is not a number");
        }
    }
    if (out.empty()) raise(errc::parse_error, "sample file contains no observations");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(errc::parse_error, "cannot write '" + path + "'");
    out << contents;
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string asymptotic_spec_json(const AsymptoticSpec& spec) {
    json out;
    out["measure"] = measure_name(spec.measure);
    if (spec.j)
        out["j"] = *spec.j;
    else
        out["j"] = nullptr;
    out["A"] = spec.A;
    out["sigma_sq"] = spec.sigma_sq;
    out["sigma1_sq"] = spec.sigma1_sq;
    out["sigma2_sq"] = spec.sigma2_sq;
    out["cov_term"] = spec.cov_term;
    out["cov_mode"] = cov_mode_name(spec.cov_mode);
    return out.dump(2) + "\n";
}

std::string mc_summary_json(const McStudy& study, const McReport& report) {
    json out;
    out["measure"] = measure_name(study.measure);
    if (study.j)
        out["j"] = *study.j;
    else
        out["j"] = nullptr;
    out["n"] = study.n;
    out["R"] = study.replications;
    out["seed"] = study.seed;
    out["cov_mode"] = cov_mode_name(study.cov_mode);
    out["skipped"] = report.skipped;
    out["truth"] = report.truth;
    out["empirical_variance"] = report.empirical_variance;
    out["sigma_sq"] = report.spec.sigma_sq;
    out["ks_stat"] = report.ks_stat;
    out["ks_stat_studentized"] = report.ks_stat_studentized;
    out["ks_critical_95"] = report.ks_critical_95;
    return out.dump(2) + "\n";
}

std::string mc_draws_csv(const McReport& report) {
    std::string out = "replication,draw,raw_error\n";
    for (std::size_t i = 0; i < report.draws.size(); ++i) {
        out += std::to_string(report.rep_index[i]);
        out += ',';
        out += format_double(report.draws[i]);
        out += ',';
        out += format_double(report.raw_errors[i]);
        out += '\n';
    }
    return out;
}

std::string trace_csv(const TraceResult& trace) {
    std::string out = "n,estimate,truth\n";
    for (std::size_t i = 0; i < trace.n_grid.size(); ++i) {
        out += std::to_string(trace.n_grid[i]);
        out += ',';
        out += format_double(trace.estimates[i]);
        out += ',';
        out += format_double(trace.truth);
        out += '\n';
    }
    return out;
}

std::string trace_summary_json(MeasureId measure, std::optional<int> j, std::uint64_t seed,
                               const TraceResult& trace) {
    json out;
    out["measure"] = measure_name(measure);
    if (j)
        out["j"] = *j;
    else
        out["j"] = nullptr;
    out["seed"] = seed;
    out["points"] = trace.n_grid.size();
    out["n_min"] = trace.n_grid.front();
    out["n_max"] = trace.n_grid.back();
    out["truth"] = trace.truth;
    out["final_estimate"] = trace.estimates.back();
    out["final_abs_error"] = std::fabs(trace.estimates.back() - trace.truth);
    return out.dump(2) + "\n";
}

} // namespace lifent
