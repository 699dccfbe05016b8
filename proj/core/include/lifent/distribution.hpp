#ifndef LIFENT_DISTRIBUTION_HPP
#define LIFENT_DISTRIBUTION_HPP

#include <span>
#include <vector>

#include "lifent/errors.hpp"

namespace lifent {

/// A finite discrete lifetime distribution on support 0 < x_1 < ... < x_r.
///
/// Validation enforces r >= 2, strictly increasing positive support,
/// strictly positive cell probabilities and |sum(p) - 1| <= 1e-12.
/// Probabilities are stored exactly as given; nothing is renormalized.
/// Immutable after construction, safe for concurrent shared reads.
///
/// Survival is the strict tail P(X > x), so survival at the last support
/// point is exactly zero and residual quantities are undefined at j = r.
class FinitePmf {
  public:
    FinitePmf(std::vector<double> support, std::vector<double> probs);

    int size() const noexcept { return static_cast<int>(probs_.size()); }
    std::span<const double> support() const noexcept { return support_; }
    std::span<const double> probs() const noexcept { return probs_; }

    /// Prefix sums of the pmf; the last entry is pinned to exactly 1.0 so
    /// that conditioning on P(x_r) degenerates to the unconditional measure
    /// bit-for-bit.
    std::span<const double> cdf() const noexcept { return cdf_; }

    /// Strict-tail suffix sums; entry j-1 holds P(X > x_j), the last one is 0.
    std::span<const double> tail() const noexcept { return tail_; }

    // Step-function evaluation at an arbitrary real point.
    double cdf_at(double x) const noexcept;
    double survival_at(double x) const noexcept;

    // 1-based lookups used by the measure formulas.
    double prob(int j) const { return probs_[check_index(j)]; }
    double cdf_at_index(int j) const { return cdf_[check_index(j)]; }
    double tail_at_index(int j) const { return tail_[check_index(j)]; }

    /// Index of a support value, or -1 when the value is not a support point
    /// (exact floating-point match).
    int find_support(double x) const noexcept;

  private:
    int check_index(int j) const;

    std::vector<double> support_;
    std::vector<double> probs_;
    std::vector<double> cdf_;
    std::vector<double> tail_;
};

/// Actual distribution p and experimenter distribution q on one support.
class PairedPmfs {
  public:
    PairedPmfs(FinitePmf p, FinitePmf q);

    const FinitePmf& p() const noexcept { return p_; }
    const FinitePmf& q() const noexcept { return q_; }
    int size() const noexcept { return p_.size(); }

  private:
    FinitePmf p_;
    FinitePmf q_;
};

/// Type-II discrete Weibull pmf on support 1..r with hazard k/r:
/// p_k = (k/r) * prod_{i=1}^{k-1} (1 - i/r).  r = 6 is the worked example
/// distribution used by the golden tables.
FinitePmf paper_weibull2(int r);

/// Validates 1 <= j <= r; residual-type callers additionally reject j = r.
void check_time_index(int j, int r);
void check_residual_index(int j, int r);

bool same_support(std::span<const double> a, std::span<const double> b) noexcept;

} // namespace lifent

#endif
