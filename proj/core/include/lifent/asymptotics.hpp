#ifndef LIFENT_ASYMPTOTICS_HPP
#define LIFENT_ASYMPTOTICS_HPP

#include <optional>
#include <vector>

#include "lifent/measures.hpp"

namespace lifent {

/// Treatment of the covariance between the two Gaussian components of a
/// plug-in estimator's linearization.  The limit splits into T1 (the term
/// driven by the cell frequencies, or by the whole estimator when it is a
/// single linear functional) and T2 (the term driven by the conditioning
/// mass in the denominator).
///
///   paper_independent: Cov(T1, T2) is set to zero, matching the claim that
///     the cell and survival Gaussian vectors are independent.
///   delta_method: Cov(T1, T2) is propagated exactly from the multinomial
///     indicator covariances; the total is then a genuine quadratic form in
///     a covariance matrix and is nonnegative by construction.  Default,
///     because both empirical blocks come from the same sample.
///
/// Estimators that involve a single coordinate block (the cumulative
/// measures, Shannon entropy, inaccuracy, KL) have no T2, so both modes
/// coincide there.
enum class CovMode { paper_independent, delta_method };

const char* cov_mode_name(CovMode mode) noexcept;
CovMode parse_cov_mode(const std::string& name);

/// Almost-sure bound constant A and asymptotic variance of one estimator.
struct AsymptoticSpec {
    MeasureId measure;
    std::optional<int> j;
    CovMode cov_mode = CovMode::delta_method;
    double A = 0.0;
    double sigma_sq = 0.0;   // sigma1_sq + sigma2_sq (+ 2 cov_term under delta_method)
    double sigma1_sq = 0.0;  // Var(T1)
    double sigma2_sq = 0.0;  // Var(T2); zero for single-block estimators
    double cov_term = 0.0;   // Cov(T1, T2); zero under paper_independent
};

/// The constant bounding limsup |estimator - truth| / a_n almost surely,
/// evaluated exactly from the proposition displays.  The pairing deviation
/// a_n is measure specific (see DeviationStats).
double as_bound(MeasureId measure, const FinitePmf& p, const FinitePmf* q = nullptr,
                std::optional<int> j = {},
                IndexConvention conv = IndexConvention::paper_inclusive);

/// Asymptotic variance of sqrt(n) * (estimator - truth), with the component
/// split described above.
AsymptoticSpec sigma_sq(MeasureId measure, const FinitePmf& p, const FinitePmf* q = nullptr,
                        std::optional<int> j = {}, CovMode mode = CovMode::delta_method,
                        IndexConvention conv = IndexConvention::paper_inclusive);

/// sqrt(n) * (estimate - truth) / sigma; standard normal in the limit.
double standardize(double estimate, double truth, std::int64_t n, const AsymptoticSpec& spec);

namespace detail {

/// Cell-space gradients of the estimator's linearization: every empirical
/// quantity (cell, cdf, survival) is a linear image of the cell frequency
/// vector, so T1 and T2 are encoded as coefficient vectors over the cells
/// and variances become quadratic forms in diag(p) - p p^T.
struct GradientBlocks {
    std::vector<double> t1;
    std::vector<double> t2; // empty when the estimator has a single block
};

GradientBlocks linearization(MeasureId measure, const FinitePmf& p, const FinitePmf* q,
                             std::optional<int> j, IndexConvention conv);

/// g^T (diag(p) - p p^T) h, computed in the centered form
/// sum p_k (g_k - gbar)(h_k - hbar) so that the diagonal case is a sum of
/// squares and cannot go negative from rounding.
double multinomial_quad(std::span<const double> p, std::span<const double> g,
                        std::span<const double> h);

} // namespace detail

} // namespace lifent

#endif
