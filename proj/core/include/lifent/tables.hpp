#ifndef LIFENT_TABLES_HPP
#define LIFENT_TABLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "lifent/measures.hpp"

namespace lifent {

/// The two worked example distributions behind the golden tables.
FinitePmf example1_pmf();     // type-II discrete Weibull, r = 6
PairedPmfs example2_paired(); // p = (7/40, 11/20, 1/4, 1/40), q_k = k^3/100 on 1..4

/// One reference-table cell.  `reference` is the published value; two cells
/// carry `flagged = true` because the published number contradicts the
/// defining formula (verified against an independent summation oracle), and
/// a mismatch there is expected rather than an error:
///   - mean residual lifetime at j = 5: published -1, the formula gives +1
///     (tail ratio of a distribution with itself); suspected sign typo.
///   - residual entropy at j = 3: published 1.192166, the formula gives
///     0.7867012; the difference is exactly log(3/2), and the neighbouring
///     cells all reproduce, so the published digit string looks like a
///     one-cell computational slip.
struct TableCell {
    std::string table;   // "table1" .. "table4"
    std::string row;     // e.g. "residual-entropy"
    std::optional<int> j;
    std::optional<double> computed;  // empty for inadmissible cells printed as x
    std::optional<double> reference; // empty where the table prints x
    double tolerance = 1e-4;
    bool flagged = false;
    std::string note;

    bool admissible_matches() const;
    bool is_cross_cell() const { return !reference && !computed; }
};

std::vector<TableCell> reference_table_cells();

/// True when every non-flagged cell matches its reference within tolerance.
bool tables_pass(const std::vector<TableCell>& cells);

} // namespace lifent

#endif
