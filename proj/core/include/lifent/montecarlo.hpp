#ifndef LIFENT_MONTECARLO_HPP
#define LIFENT_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "lifent/asymptotics.hpp"
#include "lifent/estimators.hpp"

namespace lifent {

/// Draws n i.i.d. observations from the pmf by inverse-cdf over the sorted
/// support.  Fully deterministic in (pmf, n, seed) and portable: the engine
/// is std::mt19937_64 (whose output sequence the standard pins down exactly),
/// uniforms are built as (x >> 11) * 2^-53, and the seed is whitened through
/// splitmix64 before use.
std::vector<double> sample(const FinitePmf& pmf, std::int64_t n, std::uint64_t seed);

/// One replication study: estimator error distribution at fixed n.
struct McStudy {
    FinitePmf pmf;
    std::optional<FinitePmf> q;
    MeasureId measure = MeasureId::shannon;
    std::optional<int> j;
    std::int64_t n = 0;
    int replications = 0;
    std::uint64_t seed = 0;
    CovMode cov_mode = CovMode::delta_method;
    IndexConvention conv = IndexConvention::paper_inclusive;
};

struct McReport {
    std::vector<double> draws;       // sqrt(n) (estimate - truth) / sigma, by replication order
    std::vector<double> raw_errors;  // sqrt(n) (estimate - truth)
    std::vector<int> rep_index;      // originating replication of each draw
    int skipped = 0;                 // replications aborted by empirical degeneracy
    double truth = 0.0;
    double empirical_variance = 0.0; // sample variance of raw_errors
    double ks_stat = 0.0;            // draws vs N(0,1)
    double ks_stat_studentized = 0.0; // draws recentred/rescaled by their own mean/sd vs N(0,1)
    double ks_critical_95 = 0.0;     // 1.36 / sqrt(#draws)
    AsymptoticSpec spec;             // the variance the draws were standardized with
};

/// Runs the study: per replication i, sample with the substream keyed by
/// (seed, i), fit, plug in, standardize.  Replications aborted by
/// ZeroCellInRange / EmptyTail / EmptyHead are counted in `skipped` and
/// excluded from the draws; nothing is imputed.  Output depends only on the
/// study fields, never on execution order.
McReport run_study(const McStudy& study);

/// One nested sampling path evaluated along an increasing n grid, i.e. each
/// larger n extends the same stream, so the estimates trace a single
/// convergence trajectory toward the exact value.
struct TraceResult {
    std::vector<std::int64_t> n_grid;
    std::vector<double> estimates;
    double truth = 0.0;
};

TraceResult run_trace(const FinitePmf& pmf, MeasureId measure, std::optional<int> j,
                      const FinitePmf* q, const std::vector<std::int64_t>& n_grid,
                      std::uint64_t seed,
                      IndexConvention conv = IndexConvention::paper_inclusive);

/// Exact one-sample Kolmogorov-Smirnov sup-distance of the draws against the
/// standard normal cdf.
double ks_statistic(std::span<const double> draws);

namespace detail {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Substream seed for one replication: the (index+1)-th output of the
/// splitmix64 sequence started at the master seed.  Keying by replication
/// index makes the draws independent of execution order.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept;

std::mt19937_64 make_engine(std::uint64_t seed) noexcept;

inline double uniform01(std::mt19937_64& eng) noexcept {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double normal_cdf(double x) noexcept;

} // namespace detail

} // namespace lifent

#endif
