#ifndef LIFENT_IO_HPP
#define LIFENT_IO_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lifent/montecarlo.hpp"

namespace lifent {

// File formats consumed and produced by the CLI.
//
// Distribution file: {"support": [x_1, ...], "probs": [p_1, ...]}
// Paired file:       {"p": {...}, "q": {...}} with the same inner shape
// Support file:      {"support": [x_1, ...]}
// Counts file:       {"support": [x_1, ...], "counts": [c_1, ...]}
// Sample file:       plain text, one decimal observation per line
//
// Parse and validation failures raise Error with the offending field path
// in the message.

FinitePmf parse_pmf_json(const std::string& text);
PairedPmfs parse_paired_json(const std::string& text);
std::vector<double> parse_support_json(const std::string& text);
EmpiricalDist parse_counts_json(const std::string& text);
std::vector<double> parse_sample_lines(const std::string& text);

/// Loads {"support","probs"} or {"p","q"}, whichever the file contains.
std::variant<FinitePmf, PairedPmfs> parse_distribution_file(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Shortest-digit formatting would hide tiny diffs; reports use 17
/// significant digits so identical doubles always render identically.
std::string format_double(double v);

std::string asymptotic_spec_json(const AsymptoticSpec& spec);
std::string mc_summary_json(const McStudy& study, const McReport& report);
std::string mc_draws_csv(const McReport& report);
std::string trace_csv(const TraceResult& trace);
std::string trace_summary_json(MeasureId measure, std::optional<int> j, std::uint64_t seed,
                               const TraceResult& trace);

} // namespace lifent

#endif
