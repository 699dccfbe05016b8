#ifndef LIFENT_MEASURES_HPP
#define LIFENT_MEASURES_HPP

#include <optional>
#include <span>
#include <string>

#include "lifent/distribution.hpp"

namespace lifent {

enum class MeasureId {
    shannon,
    residual_entropy,
    past_entropy,
    cum_residual_entropy,
    cum_past_entropy,
    mean_residual,
    mean_past,
    inaccuracy,
    residual_inaccuracy,
    past_inaccuracy,
    cum_residual_inaccuracy,
    cum_past_inaccuracy,
    kl_divergence,
};

/// Summation range for residual-type series.  The paper prints the sum from
/// k = j (so the k = j term conditions on the index it is cut at, and the
/// weights add up to more than one); the tables only reproduce under that
/// reading, so it is the default.  conditional_proper starts at k = j + 1,
/// making the weights p_k / P(X > x_j) a genuine probability vector.
enum class IndexConvention { paper_inclusive, conditional_proper };

bool measure_is_paired(MeasureId id) noexcept;
bool measure_is_residual_type(MeasureId id) noexcept;  // needs j <= r-1
bool measure_is_time_indexed(MeasureId id) noexcept;

/// CLI-facing names: "shannon", "residual-entropy", ...
const char* measure_name(MeasureId id) noexcept;
MeasureId parse_measure(const std::string& name);
std::string known_measure_names();

// All values are in nats (natural logarithm throughout).

double shannon_entropy(const FinitePmf& p);
double residual_entropy(const FinitePmf& p, int j,
                        IndexConvention conv = IndexConvention::paper_inclusive);
double past_entropy(const FinitePmf& p, int j);
double cum_residual_entropy(const FinitePmf& p);
double cum_past_entropy(const FinitePmf& p);
double mean_residual(const FinitePmf& p, int j);
double mean_past(const FinitePmf& p, int j);

double inaccuracy(const PairedPmfs& pq);
double residual_inaccuracy(const PairedPmfs& pq, int j,
                           IndexConvention conv = IndexConvention::paper_inclusive);
double past_inaccuracy(const PairedPmfs& pq, int j);
double cum_residual_inaccuracy(const PairedPmfs& pq);
double cum_past_inaccuracy(const PairedPmfs& pq);
double kl_divergence(const PairedPmfs& pq);

/// Uniform entry point used by the estimator, Monte Carlo and CLI layers.
/// q must be present for paired measures, j for time-indexed ones.
double evaluate(MeasureId id, const FinitePmf& p, const FinitePmf* q, std::optional<int> j,
                IndexConvention conv = IndexConvention::paper_inclusive);

namespace detail {

// Shared summation kernels.  The plug-in estimators call these with the
// empirical pmf and its derived prefix/suffix arrays, which keeps the
// plug-in value bit-for-bit equal to the exact measure evaluated on the
// empirical distribution.
//
// All kernels take 0-based jj (= j - 1) and assume the caller has already
// rejected empty conditioning mass and zero cells where logs need them.

double xlogx(double x) noexcept; // 0 at x = 0 (cumulative series only hit this empirically)

int residual_range_start(int jj, IndexConvention conv) noexcept;

double shannon_sum(std::span<const double> p);
double residual_entropy_sum(std::span<const double> p, std::span<const double> tail, int jj,
                            IndexConvention conv);
double past_entropy_sum(std::span<const double> p, std::span<const double> cdf, int jj);
double cum_residual_sum(std::span<const double> tail);
double cum_past_sum(std::span<const double> cdf);
double mean_residual_sum(std::span<const double> tail, int jj);
double mean_past_sum(std::span<const double> cdf, int jj);
double inaccuracy_sum(std::span<const double> p, std::span<const double> q);
double residual_inaccuracy_sum(std::span<const double> p, std::span<const double> p_tail,
                               std::span<const double> q, std::span<const double> q_tail, int jj,
                               IndexConvention conv);
double past_inaccuracy_sum(std::span<const double> p, std::span<const double> p_cdf,
                           std::span<const double> q, std::span<const double> q_cdf, int jj);
double cum_residual_inaccuracy_sum(std::span<const double> p_tail, std::span<const double> q_tail);
double cum_past_inaccuracy_sum(std::span<const double> p_cdf, std::span<const double> q_cdf);
double kl_sum(std::span<const double> p, std::span<const double> q);

double evaluate_on(std::span<const double> p, std::span<const double> cdf,
                   std::span<const double> tail, const FinitePmf* q, MeasureId id,
                   std::optional<int> j, IndexConvention conv);

} // namespace detail

} // namespace lifent

#endif
