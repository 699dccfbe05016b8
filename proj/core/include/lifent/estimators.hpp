#ifndef LIFENT_ESTIMATORS_HPP
#define LIFENT_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lifent/measures.hpp"

namespace lifent {

/// Empirical distribution of an i.i.d. sample over a declared support.
///
/// Counts are exact tallies; pmf() holds count/n per cell and cdf()/tail()
/// are derived from those cell values the same way FinitePmf derives its
/// arrays, except that the final cdf entry is the exact count ratio n/n = 1.
/// This makes every plug-in estimator numerically identical to the exact
/// measure evaluated on the empirical pmf.
class EmpiricalDist {
  public:
    static EmpiricalDist from_counts(std::vector<double> support,
                                     std::vector<std::int64_t> counts);

    std::int64_t n() const noexcept { return n_; }
    int size() const noexcept { return static_cast<int>(counts_.size()); }
    std::span<const double> support() const noexcept { return support_; }
    std::span<const std::int64_t> counts() const noexcept { return counts_; }
    std::span<const double> pmf() const noexcept { return pmf_; }
    std::span<const double> cdf() const noexcept { return cdf_; }
    std::span<const double> tail() const noexcept { return tail_; }

    std::int64_t tail_count(int jj) const noexcept { return tail_counts_[jj]; }
    std::int64_t head_count(int jj) const noexcept { return n_ - tail_counts_[jj]; }

  private:
    EmpiricalDist() = default;

    std::vector<double> support_;
    std::vector<std::int64_t> counts_;
    std::vector<std::int64_t> tail_counts_; // strict-tail integer counts
    std::vector<double> pmf_, cdf_, tail_;
    std::int64_t n_ = 0;
};

/// Tallies a sample against a declared support.  Every observation must be
/// an exact support member; the error message names the first offender.
EmpiricalDist fit_empirical(std::span<const double> sample, std::span<const double> support);

/// Plug-in estimator of a measure: the exact formula with empirical cell
/// frequencies in place of the true ones.  For inaccuracy measures the q
/// side stays exact (it is the experimenter's declared distribution, never
/// estimated).
///
/// Raises ZeroCellInRange when a log of an empirical cell inside the
/// summation range would be taken at zero, EmptyTail / EmptyHead when the
/// conditioning mass at the requested index is empty.
double plugin_measure(const EmpiricalDist& emp, MeasureId id, std::optional<int> j = {},
                      const FinitePmf* q_side = nullptr,
                      IndexConvention conv = IndexConvention::paper_inclusive);

/// Supremum deviations between empirical and true quantities; the ratio
/// forms are the j-specific deviations the almost-sure rate bounds divide by.
struct DeviationStats {
    double a_n_p;     // sup_j |p_n(j) - p_j|
    double a_n_P;     // sup_j |P_n(x_j) - P(x_j)|
    double a_n_Pbar;  // sup_{j<=r-1} |Pbar_n(x_j) - Pbar(x_j)|
    double a_Rn_p;    // sup_{k in residual range} |p_n(k)/Pbar_n(x_j) - p_k/Pbar(x_j)|
    double a_Pn_p;    // sup_{k<=j} |p_n(k)/P_n(x_j) - p_k/P(x_j)|
};

DeviationStats deviation_stats(const EmpiricalDist& emp, const FinitePmf& truth, int j);

} // namespace lifent

#endif
