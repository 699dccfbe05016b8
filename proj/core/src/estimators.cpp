#include "lifent/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lifent {

EmpiricalDist EmpiricalDist::from_counts(std::vector<double> support,
                                         std::vector<std::int64_t> counts) {
    if (support.size() != counts.size())
        raise(errc::length_mismatch, "support has " + std::to_string(support.size()) +
                                         " entries, counts has " + std::to_string(counts.size()));
    if (support.size() < 2) raise(errc::invalid_r, "need at least two support points");
    for (std::size_t k = 1; k < support.size(); ++k)
        if (!(support[k] > support[k - 1]))
            raise(errc::unsorted_support,
                  "support must be strictly increasing at position " + std::to_string(k));
    std::int64_t n = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] < 0)
            raise(errc::bad_counts, "counts[" + std::to_string(k) + "] is negative");
        n += counts[k];
    }
    if (n < 1) raise(errc::bad_counts, "empty sample: counts sum to zero");

    EmpiricalDist d;
    d.support_ = std::move(support);
    d.counts_ = std::move(counts);
    d.n_ = n;
    const std::size_t r = d.counts_.size();
    d.tail_counts_.resize(r);
    std::int64_t acc = 0;
    for (std::size_t k = r; k-- > 0;) {
        d.tail_counts_[k] = acc;
        acc += d.counts_[k];
    }
    d.pmf_.resize(r);
    for (std::size_t k = 0; k < r; ++k)
        d.pmf_[k] = static_cast<double>(d.counts_[k]) / static_cast<double>(n);
    // same derivation as FinitePmf: prefix sums with the last entry pinned,
    // strict-tail suffix sums
    d.cdf_.resize(r);
    double c = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
        c += d.pmf_[k];
        d.cdf_[k] = c;
    }
    d.cdf_.back() = 1.0;
    d.tail_.resize(r);
    double t = 0.0;
    for (std::size_t k = r; k-- > 0;) {
        d.tail_[k] = t;
        t += d.pmf_[k];
    }
    return d;
}

EmpiricalDist fit_empirical(std::span<const double> sample, std::span<const double> support) {
    if (sample.empty()) raise(errc::bad_counts, "empty sample");
    std::vector<std::int64_t> counts(support.size(), 0);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        auto it = std::lower_bound(support.begin(), support.end(), sample[i]);
        if (it == support.end() || *it != sample[i])
            raise(errc::value_outside_support,
                  "observation " + std::to_string(i) + " (value " + std::to_string(sample[i]) +
                      ") is not a support point");
        ++counts[static_cast<std::size_t>(it - support.begin())];
    }
    return EmpiricalDist::from_counts(std::vector<double>(support.begin(), support.end()),
                                      std::move(counts));
}

namespace {

// Cells whose empirical probability enters a log in the given measure.
// Inaccuracy-type measures only take logs of the exact q side, so zero
// empirical cells are harmless there; cumulative series use xlogx which is
// continuous at zero.
void require_positive_cells(const EmpiricalDist& emp, MeasureId id, int jj,
                            IndexConvention conv) {
    int lo = 0, hi = emp.size() - 1;
    switch (id) {
        case MeasureId::shannon:
        case MeasureId::kl_divergence: break;
        case MeasureId::residual_entropy:
            lo = detail::residual_range_start(jj, conv);
            break;
        case MeasureId::past_entropy: hi = jj; break;
        default: return;
    }
    for (int k = lo; k <= hi; ++k)
        if (emp.counts()[k] == 0)
            raise(errc::zero_cell_in_range,
                  std::string("empirical cell ") + std::to_string(k + 1) +
                      " is zero inside the summation range of '" + measure_name(id) + "'");
}

} // namespace

double plugin_measure(const EmpiricalDist& emp, MeasureId id, std::optional<int> j,
                      const FinitePmf* q_side, IndexConvention conv) {
    const int r = emp.size();
    if (measure_is_paired(id)) {
        if (q_side == nullptr)
            raise(errc::missing_q, std::string("measure '") + measure_name(id) +
                                       "' needs the experimenter distribution q");
        if (!same_support(emp.support(), q_side->support()))
            raise(errc::support_mismatch, "sample support differs from q's support");
    }
    if (measure_is_time_indexed(id)) {
        if (!j)
            raise(errc::bad_time_index,
                  std::string("measure '") + measure_name(id) + "' needs a time index j");
        if (measure_is_residual_type(id))
            check_residual_index(*j, r);
        else
            check_time_index(*j, r);
        const int jj = *j - 1;
        if (measure_is_residual_type(id) && emp.tail_count(jj) == 0)
            raise(errc::empty_tail, "no observations beyond x_" + std::to_string(*j) +
                                        "; empirical survival there is zero");
        if (!measure_is_residual_type(id) && emp.head_count(jj) == 0)
            raise(errc::empty_head, "no observations at or below x_" + std::to_string(*j) +
                                        "; empirical cdf there is zero");
        require_positive_cells(emp, id, jj, conv);
    } else {
        require_positive_cells(emp, id, 0, conv);
    }
    return detail::evaluate_on(emp.pmf(), emp.cdf(), emp.tail(), q_side, id, j, conv);
}

DeviationStats deviation_stats(const EmpiricalDist& emp, const FinitePmf& truth, int j) {
    if (!same_support(emp.support(), truth.support()))
        raise(errc::support_mismatch, "sample support differs from the truth pmf's support");
    const int r = emp.size();
    check_time_index(j, r);
    const int jj = j - 1;

    DeviationStats s{0, 0, 0, 0, 0};
    for (int k = 0; k < r; ++k) {
        s.a_n_p = std::max(s.a_n_p, std::fabs(emp.pmf()[k] - truth.probs()[k]));
        s.a_n_P = std::max(s.a_n_P, std::fabs(emp.cdf()[k] - truth.cdf()[k]));
        if (k + 1 < r)
            s.a_n_Pbar = std::max(s.a_n_Pbar, std::fabs(emp.tail()[k] - truth.tail()[k]));
    }
    if (j < r) {
        if (emp.tail_count(jj) == 0)
            raise(errc::empty_tail,
                  "residual ratio deviation undefined: empirical survival is zero at x_" +
                      std::to_string(j));
        for (int k = jj; k < r; ++k)
            s.a_Rn_p = std::max(s.a_Rn_p, std::fabs(emp.pmf()[k] / emp.tail()[jj] -
                                                    truth.probs()[k] / truth.tail()[jj]));
    }
    if (emp.head_count(jj) == 0)
        raise(errc::empty_head,
              "past ratio deviation undefined: empirical cdf is zero at x_" + std::to_string(j));
    for (int k = 0; k <= jj; ++k)
        s.a_Pn_p = std::max(s.a_Pn_p, std::fabs(emp.pmf()[k] / emp.cdf()[jj] -
                                                truth.probs()[k] / truth.cdf()[jj]));
    return s;
}

} // namespace lifent
