#include "lifent/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lifent {

namespace {
constexpr double kSumTol = 1e-12; // double-precision rational inputs accumulate ~1e-16

std::vector<double> prefix_sums_pinned(const std::vector<double>& p) {
    std::vector<double> out(p.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        acc += p[k];
        out[k] = acc;
    }
    out.back() = 1.0; // P(x_r) = 1 by definition
    return out;
}

std::vector<double> suffix_sums(const std::vector<double>& p) {
    std::vector<double> out(p.size());
    double acc = 0.0;
    for (std::size_t k = p.size(); k-- > 0;) {
        out[k] = acc; // strict tail: excludes p_k itself
        acc += p[k];
    }
    return out;
}
} // namespace

FinitePmf::FinitePmf(std::vector<double> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.size() != probs_.size())
        raise(errc::length_mismatch, "support has " + std::to_string(support_.size()) +
                                         " entries, probs has " + std::to_string(probs_.size()));
    if (probs_.size() < 2)
        raise(errc::invalid_r, "need at least two support points, got " +
                                   std::to_string(probs_.size()));
    for (std::size_t k = 0; k < support_.size(); ++k) {
        if (!(support_[k] > 0.0) || !std::isfinite(support_[k]))
            raise(errc::non_positive_support,
                  "support[" + std::to_string(k) + "] = " + std::to_string(support_[k]) +
                      " must be a positive finite real");
        if (k > 0 && !(support_[k] > support_[k - 1]))
            raise(errc::unsorted_support,
                  "support must be strictly increasing at position " + std::to_string(k));
        if (!(probs_[k] > 0.0) || !std::isfinite(probs_[k]))
            raise(errc::non_positive_prob,
                  "probs[" + std::to_string(k) + "] = " + std::to_string(probs_[k]) +
                      " violates p_j > 0");
    }
    double sum = 0.0;
    for (double p : probs_) sum += p;
    if (std::fabs(sum - 1.0) > kSumTol)
        raise(errc::sum_not_one,
              "probabilities sum to " + std::to_string(sum) + ", |sum - 1| exceeds 1e-12");
    cdf_ = prefix_sums_pinned(probs_);
    tail_ = suffix_sums(probs_);
}

double FinitePmf::cdf_at(double x) const noexcept {
    // right-continuous: count support points <= x
    auto it = std::upper_bound(support_.begin(), support_.end(), x);
    if (it == support_.begin()) return 0.0;
    return cdf_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double FinitePmf::survival_at(double x) const noexcept {
    auto it = std::upper_bound(support_.begin(), support_.end(), x);
    if (it == support_.begin()) return 1.0;
    return tail_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

int FinitePmf::find_support(double x) const noexcept {
    auto it = std::lower_bound(support_.begin(), support_.end(), x);
    if (it != support_.end() && *it == x) return static_cast<int>(it - support_.begin());
    return -1;
}

int FinitePmf::check_index(int j) const {
    check_time_index(j, size());
    return j - 1;
}

PairedPmfs::PairedPmfs(FinitePmf p, FinitePmf q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.size() != q_.size())
        raise(errc::support_mismatch, "p and q have different support sizes");
    for (int k = 0; k < p_.size(); ++k)
        if (p_.support()[k] != q_.support()[k])
            raise(errc::support_mismatch,
                  "p and q supports differ at position " + std::to_string(k));
}

FinitePmf paper_weibull2(int r) {
    if (r < 2) raise(errc::invalid_r, "paper_weibull2 requires r >= 2, got " + std::to_string(r));
    std::vector<double> support(r), probs(r);
    for (int k = 1; k <= r; ++k) {
        support[k - 1] = static_cast<double>(k);
        double p = static_cast<double>(k) / r;
        for (int i = 1; i < k; ++i) p *= 1.0 - static_cast<double>(i) / r;
        probs[k - 1] = p;
    }
    return FinitePmf(std::move(support), std::move(probs));
}

void check_time_index(int j, int r) {
    if (j < 1 || j > r)
        raise(errc::bad_time_index,
              "time index j = " + std::to_string(j) + " outside [1, " + std::to_string(r) + "]");
}

void check_residual_index(int j, int r) {
    check_time_index(j, r);
    if (j == r)
        raise(errc::residual_at_terminal,
              "residual quantity undefined at j = r (survival there is zero)");
}

bool same_support(std::span<const double> a, std::span<const double> b) noexcept {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != b[k]) return false;
    return true;
}

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::length_mismatch: return "LengthMismatch";
        case errc::non_positive_prob: return "NonPositiveProb";
        case errc::sum_not_one: return "SumNotOne";
        case errc::unsorted_support: return "UnsortedSupport";
        case errc::non_positive_support: return "NonPositiveSupport";
        case errc::invalid_r: return "InvalidR";
        case errc::support_mismatch: return "SupportMismatch";
        case errc::residual_at_terminal: return "ResidualAtTerminal";
        case errc::bad_time_index: return "BadTimeIndex";
        case errc::value_outside_support: return "ValueOutsideSupport";
        case errc::bad_counts: return "BadCounts";
        case errc::empty_tail: return "EmptyTail";
        case errc::empty_head: return "EmptyHead";
        case errc::zero_cell_in_range: return "ZeroCellInRange";
        case errc::missing_q: return "MissingQ";
        case errc::negative_variance: return "NegativeVariance";
        case errc::zero_variance: return "ZeroVariance";
        case errc::too_few_draws: return "TooFewDraws";
        case errc::all_replications_skipped: return "AllReplicationsSkipped";
        case errc::bad_grid: return "BadGrid";
        case errc::bad_study: return "BadStudy";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

} // namespace lifent
