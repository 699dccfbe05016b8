#include "lifent/asymptotics.hpp"

#include <cmath>
#include <string>

namespace lifent {

const char* cov_mode_name(CovMode mode) noexcept {
    return mode == CovMode::paper_independent ? "paper-independent" : "delta";
}

CovMode parse_cov_mode(const std::string& name) {
    if (name == "paper-independent") return CovMode::paper_independent;
    if (name == "delta") return CovMode::delta_method;
    raise(errc::parse_error, "unknown covariance mode '" + name +
                                 "'; valid: paper-independent, delta");
}

namespace detail {

namespace {

// adds c to coordinates i with x_i > x_j (the survival indicator image)
void add_tail_indicator(std::vector<double>& g, int jj, double c) {
    for (std::size_t k = jj + 1; k < g.size(); ++k) g[k] += c;
}

// adds c to coordinates i with x_i <= x_j (the cdf indicator image)
void add_head_indicator(std::vector<double>& g, int jj, double c) {
    for (int k = 0; k <= jj; ++k) g[k] += c;
}

} // namespace

double multinomial_quad(std::span<const double> p, std::span<const double> g,
                        std::span<const double> h) {
    if (g.empty() || h.empty()) return 0.0;
    double gbar = 0.0, hbar = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        gbar += p[k] * g[k];
        hbar += p[k] * h[k];
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        acc += p[k] * (g[k] - gbar) * (h[k] - hbar);
    return acc;
}

GradientBlocks linearization(MeasureId measure, const FinitePmf& p, const FinitePmf* q,
                             std::optional<int> j, IndexConvention conv) {
    const int r = p.size();
    if (measure_is_paired(measure) && q == nullptr)
        raise(errc::missing_q, std::string("measure '") + measure_name(measure) +
                                   "' needs the experimenter distribution q");
    if (q != nullptr && !same_support(p.support(), q->support()))
        raise(errc::support_mismatch, "p and q are defined on different supports");
    if (measure_is_time_indexed(measure) && !j)
        raise(errc::bad_time_index,
              std::string("measure '") + measure_name(measure) + "' needs a time index j");
    int jj = 0;
    if (measure_is_time_indexed(measure)) {
        if (measure_is_residual_type(measure))
            check_residual_index(*j, r);
        else
            check_time_index(*j, r);
        jj = *j - 1;
    }

    GradientBlocks b;
    b.t1.assign(r, 0.0);
    auto probs = p.probs();
    auto cdf = p.cdf();
    auto tail = p.tail();

    switch (measure) {
        case MeasureId::shannon:
            for (int k = 0; k < r; ++k) b.t1[k] = -(1.0 + std::log(probs[k]));
            break;
        case MeasureId::residual_entropy: {
            const double s = tail[jj];
            double coef2 = 0.0;
            b.t2.assign(r, 0.0);
            for (int k = residual_range_start(jj, conv); k < r; ++k) {
                const double psip = 1.0 + std::log(probs[k] / s);
                b.t1[k] = -psip / s;
                coef2 += psip * probs[k] / (s * s);
            }
            add_tail_indicator(b.t2, jj, coef2);
            break;
        }
        case MeasureId::past_entropy: {
            const double c = cdf[jj];
            double coef2 = 0.0;
            b.t2.assign(r, 0.0);
            for (int k = 0; k <= jj; ++k) {
                const double psip = 1.0 + std::log(probs[k] / c);
                b.t1[k] = -psip / c;
                coef2 += psip * probs[k] / (c * c);
            }
            add_head_indicator(b.t2, jj, coef2);
            break;
        }
        case MeasureId::cum_residual_entropy:
            for (int m = 0; m + 1 < r; ++m)
                add_tail_indicator(b.t1, m, -(1.0 + std::log(tail[m])));
            break;
        case MeasureId::cum_past_entropy:
            for (int m = 0; m < r; ++m)
                add_head_indicator(b.t1, m, -(1.0 + std::log(cdf[m])));
            break;
        case MeasureId::mean_residual: {
            const double s = tail[jj];
            double tot = 0.0;
            b.t2.assign(r, 0.0);
            for (int k = jj; k + 1 < r; ++k) {
                add_tail_indicator(b.t1, k, 1.0 / s);
                tot += tail[k];
            }
            add_tail_indicator(b.t2, jj, -tot / (s * s));
            break;
        }
        case MeasureId::mean_past: {
            const double c = cdf[jj];
            double tot = 0.0;
            b.t2.assign(r, 0.0);
            for (int k = 0; k <= jj; ++k) {
                add_head_indicator(b.t1, k, 1.0 / c);
                tot += cdf[k];
            }
            add_head_indicator(b.t2, jj, -tot / (c * c));
            break;
        }
        case MeasureId::inaccuracy:
            for (int k = 0; k < r; ++k) b.t1[k] = -std::log(q->probs()[k]);
            break;
        case MeasureId::residual_inaccuracy: {
            const double s = tail[jj], sq = q->tail()[jj];
            double coef2 = 0.0;
            b.t2.assign(r, 0.0);
            for (int k = residual_range_start(jj, conv); k < r; ++k) {
                const double lg = std::log(q->probs()[k] / sq);
                b.t1[k] = -lg / s;
                coef2 += probs[k] * lg / (s * s);
            }
            add_tail_indicator(b.t2, jj, coef2);
            break;
        }
        case MeasureId::past_inaccuracy: {
            const double c = cdf[jj], cq = q->cdf()[jj];
            double coef2 = 0.0;
            b.t2.assign(r, 0.0);
            for (int k = 0; k <= jj; ++k) {
                const double lg = std::log(q->probs()[k] / cq);
                b.t1[k] = -lg / c;
                coef2 += probs[k] * lg / (c * c);
            }
            add_head_indicator(b.t2, jj, coef2);
            break;
        }
        case MeasureId::cum_residual_inaccuracy:
            for (int m = 0; m + 1 < r; ++m)
                add_tail_indicator(b.t1, m, -std::log(q->tail()[m]));
            break;
        case MeasureId::cum_past_inaccuracy:
            for (int m = 0; m < r; ++m)
                add_head_indicator(b.t1, m, -std::log(q->cdf()[m]));
            break;
        case MeasureId::kl_divergence:
            for (int k = 0; k < r; ++k)
                b.t1[k] = 1.0 + std::log(probs[k] / q->probs()[k]);
            break;
    }
    return b;
}

} // namespace detail

double as_bound(MeasureId measure, const FinitePmf& p, const FinitePmf* q, std::optional<int> j,
                IndexConvention conv) {
    const int r = p.size();
    if (measure_is_paired(measure) && q == nullptr)
        raise(errc::missing_q, std::string("measure '") + measure_name(measure) +
                                   "' needs the experimenter distribution q");
    if (q != nullptr && !same_support(p.support(), q->support()))
        raise(errc::support_mismatch, "p and q are defined on different supports");
    if (measure_is_time_indexed(measure) && !j)
        raise(errc::bad_time_index,
              std::string("measure '") + measure_name(measure) + "' needs a time index j");
    int jj = 0;
    if (measure_is_time_indexed(measure)) {
        if (measure_is_residual_type(measure))
            check_residual_index(*j, r);
        else
            check_time_index(*j, r);
        jj = *j - 1;
    }
    auto probs = p.probs();
    auto cdf = p.cdf();
    auto tail = p.tail();
    double acc = 0.0;
    switch (measure) {
        case MeasureId::shannon:
            for (int k = 0; k < r; ++k) acc += std::fabs(1.0 + std::log(probs[k]));
            return acc;
        case MeasureId::residual_entropy: {
            const double s = tail[jj];
            for (int k = detail::residual_range_start(jj, conv); k < r; ++k)
                acc += std::fabs(1.0 + std::log(probs[k] / s));
            return acc / s;
        }
        case MeasureId::past_entropy: {
            const double c = cdf[jj];
            for (int k = 0; k <= jj; ++k) acc += std::fabs(1.0 + std::log(probs[k] / c));
            return acc / c;
        }
        case MeasureId::cum_residual_entropy:
            for (int m = 0; m + 1 < r; ++m) acc += std::fabs(1.0 + std::log(tail[m]));
            return acc;
        case MeasureId::cum_past_entropy:
            for (int m = 0; m < r; ++m) acc += std::fabs(1.0 + std::log(cdf[m]));
            return acc;
        case MeasureId::mean_residual: {
            const double s = tail[jj];
            for (int k = jj; k + 1 < r; ++k) acc += tail[k];
            return (r - *j) / s + acc / (s * s);
        }
        case MeasureId::mean_past: {
            const double c = cdf[jj];
            for (int k = 0; k <= jj; ++k) acc += cdf[k];
            return *j / c + acc / (c * c);
        }
        case MeasureId::inaccuracy:
            for (int k = 0; k < r; ++k) acc += std::fabs(std::log(q->probs()[k]));
            return acc;
        case MeasureId::residual_inaccuracy: {
            const double sq = q->tail()[jj];
            for (int k = detail::residual_range_start(jj, conv); k < r; ++k)
                acc += std::fabs(std::log(q->probs()[k] / sq));
            return acc;
        }
        case MeasureId::past_inaccuracy: {
            const double cq = q->cdf()[jj];
            for (int k = 0; k <= jj; ++k) acc += std::fabs(std::log(q->probs()[k] / cq));
            return acc;
        }
        case MeasureId::cum_residual_inaccuracy:
            for (int m = 0; m + 1 < r; ++m) acc += std::fabs(std::log(q->tail()[m]));
            return acc;
        case MeasureId::cum_past_inaccuracy:
            for (int m = 0; m < r; ++m) acc += std::fabs(std::log(q->cdf()[m]));
            return acc;
        case MeasureId::kl_divergence:
            for (int k = 0; k < r; ++k)
                acc += std::fabs(1.0 + std::log(probs[k] / q->probs()[k]));
            return acc;
    }
    raise(errc::parse_error, "unhandled measure id");
}

AsymptoticSpec sigma_sq(MeasureId measure, const FinitePmf& p, const FinitePmf* q,
                        std::optional<int> j, CovMode mode, IndexConvention conv) {
    detail::GradientBlocks b = detail::linearization(measure, p, q, j, conv);
    AsymptoticSpec spec;
    spec.measure = measure;
    spec.j = measure_is_time_indexed(measure) ? j : std::nullopt;
    spec.cov_mode = mode;
    spec.A = as_bound(measure, p, q, j, conv);
    spec.sigma1_sq = detail::multinomial_quad(p.probs(), b.t1, b.t1);
    spec.sigma2_sq = detail::multinomial_quad(p.probs(), b.t2, b.t2);
    spec.cov_term =
        mode == CovMode::delta_method ? detail::multinomial_quad(p.probs(), b.t1, b.t2) : 0.0;
    if (mode == CovMode::delta_method && !b.t2.empty()) {
        // total as one quadratic form in the summed gradient: nonnegative by
        // construction even when the cross term is large and negative
        std::vector<double> g(b.t1);
        for (std::size_t k = 0; k < g.size(); ++k) g[k] += b.t2[k];
        spec.sigma_sq = detail::multinomial_quad(p.probs(), g, g);
    } else {
        spec.sigma_sq = spec.sigma1_sq + spec.sigma2_sq;
    }
    if (spec.sigma_sq < 0.0) {
        if (spec.sigma_sq < -1e-12)
            raise(errc::negative_variance,
                  std::string("variance formula for '") + measure_name(measure) +
                      "' evaluated to " + std::to_string(spec.sigma_sq));
        spec.sigma_sq = 0.0;
    }
    return spec;
}

double standardize(double estimate, double truth, std::int64_t n, const AsymptoticSpec& spec) {
    if (!(spec.sigma_sq > 1e-14))
        raise(errc::zero_variance, "asymptotic variance is zero; cannot standardize");
    return std::sqrt(static_cast<double>(n)) * (estimate - truth) / std::sqrt(spec.sigma_sq);
}

} // namespace lifent
