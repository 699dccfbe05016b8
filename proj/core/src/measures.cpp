#include "lifent/measures.hpp"

#include <cmath>

namespace lifent {

bool measure_is_paired(MeasureId id) noexcept {
    switch (id) {
        case MeasureId::inaccuracy:
        case MeasureId::residual_inaccuracy:
        case MeasureId::past_inaccuracy:
        case MeasureId::cum_residual_inaccuracy:
        case MeasureId::cum_past_inaccuracy:
        case MeasureId::kl_divergence: return true;
        default: return false;
    }
}

bool measure_is_residual_type(MeasureId id) noexcept {
    return id == MeasureId::residual_entropy || id == MeasureId::mean_residual ||
           id == MeasureId::residual_inaccuracy;
}

bool measure_is_time_indexed(MeasureId id) noexcept {
    return measure_is_residual_type(id) || id == MeasureId::past_entropy ||
           id == MeasureId::mean_past || id == MeasureId::past_inaccuracy;
}

const char* measure_name(MeasureId id) noexcept {
    switch (id) {
        case MeasureId::shannon: return "shannon";
        case MeasureId::residual_entropy: return "residual-entropy";
        case MeasureId::past_entropy: return "past-entropy";
        case MeasureId::cum_residual_entropy: return "cum-residual-entropy";
        case MeasureId::cum_past_entropy: return "cum-past-entropy";
        case MeasureId::mean_residual: return "mean-residual";
        case MeasureId::mean_past: return "mean-past";
        case MeasureId::inaccuracy: return "inaccuracy";
        case MeasureId::residual_inaccuracy: return "residual-inaccuracy";
        case MeasureId::past_inaccuracy: return "past-inaccuracy";
        case MeasureId::cum_residual_inaccuracy: return "cum-residual-inaccuracy";
        case MeasureId::cum_past_inaccuracy: return "cum-past-inaccuracy";
        case MeasureId::kl_divergence: return "kl-divergence";
    }
    return "?";
}

namespace {
constexpr MeasureId kAllMeasures[] = {
    MeasureId::shannon,          MeasureId::residual_entropy,
    MeasureId::past_entropy,     MeasureId::cum_residual_entropy,
    MeasureId::cum_past_entropy, MeasureId::mean_residual,
    MeasureId::mean_past,        MeasureId::inaccuracy,
    MeasureId::residual_inaccuracy, MeasureId::past_inaccuracy,
    MeasureId::cum_residual_inaccuracy, MeasureId::cum_past_inaccuracy,
    MeasureId::kl_divergence,
};
}

MeasureId parse_measure(const std::string& name) {
    for (MeasureId id : kAllMeasures)
        if (name == measure_name(id)) return id;
    raise(errc::parse_error, "unknown measure '" + name + "'; valid names: " + known_measure_names());
}

std::string known_measure_names() {
    std::string out;
    for (MeasureId id : kAllMeasures) {
        if (!out.empty()) out += ", ";
        out += measure_name(id);
    }
    return out;
}

namespace detail {

double xlogx(double x) noexcept { return x > 0.0 ? x * std::log(x) : 0.0; }

int residual_range_start(int jj, IndexConvention conv) noexcept {
    return conv == IndexConvention::paper_inclusive ? jj : jj + 1;
}

double shannon_sum(std::span<const double> p) {
    double acc = 0.0;
    for (double pk : p) acc += xlogx(pk);
    return acc == 0.0 ? 0.0 : -acc;
}

double residual_entropy_sum(std::span<const double> p, std::span<const double> tail, int jj,
                            IndexConvention conv) {
    const double surv = tail[jj];
    double acc = 0.0;
    for (std::size_t k = residual_range_start(jj, conv); k < p.size(); ++k)
        acc += xlogx(p[k] / surv);
    return acc == 0.0 ? 0.0 : -acc;
}

double past_entropy_sum(std::span<const double> p, std::span<const double> cdf, int jj) {
    const double mass = cdf[jj];
    double acc = 0.0;
    for (int k = 0; k <= jj; ++k) acc += xlogx(p[k] / mass);
    return acc == 0.0 ? 0.0 : -acc;
}

double cum_residual_sum(std::span<const double> tail) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < tail.size(); ++k) acc += xlogx(tail[k]);
    return acc == 0.0 ? 0.0 : -acc;
}

double cum_past_sum(std::span<const double> cdf) {
    double acc = 0.0;
    for (double c : cdf) acc += xlogx(c);
    return acc == 0.0 ? 0.0 : -acc;
}

double mean_residual_sum(std::span<const double> tail, int jj) {
    double acc = 0.0;
    for (std::size_t k = jj; k + 1 < tail.size(); ++k) acc += tail[k];
    return acc / tail[jj];
}

double mean_past_sum(std::span<const double> cdf, int jj) {
    double acc = 0.0;
    for (int k = 0; k <= jj; ++k) acc += cdf[k];
    return acc / cdf[jj];
}

double inaccuracy_sum(std::span<const double> p, std::span<const double> q) {
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) acc += p[k] * std::log(q[k]);
    return acc == 0.0 ? 0.0 : -acc;
}

double residual_inaccuracy_sum(std::span<const double> p, std::span<const double> p_tail,
                               std::span<const double> q, std::span<const double> q_tail, int jj,
                               IndexConvention conv) {
    const double sp = p_tail[jj], sq = q_tail[jj];
    double acc = 0.0;
    for (std::size_t k = residual_range_start(jj, conv); k < p.size(); ++k)
        acc += (p[k] / sp) * std::log(q[k] / sq);
    return acc == 0.0 ? 0.0 : -acc;
}

double past_inaccuracy_sum(std::span<const double> p, std::span<const double> p_cdf,
                           std::span<const double> q, std::span<const double> q_cdf, int jj) {
    const double cp = p_cdf[jj], cq = q_cdf[jj];
    double acc = 0.0;
    for (int k = 0; k <= jj; ++k) acc += (p[k] / cp) * std::log(q[k] / cq);
    return acc == 0.0 ? 0.0 : -acc;
}

double cum_residual_inaccuracy_sum(std::span<const double> p_tail,
                                   std::span<const double> q_tail) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < p_tail.size(); ++k) acc += p_tail[k] * std::log(q_tail[k]);
    return acc == 0.0 ? 0.0 : -acc;
}

double cum_past_inaccuracy_sum(std::span<const double> p_cdf, std::span<const double> q_cdf) {
    double acc = 0.0;
    for (std::size_t k = 0; k < p_cdf.size(); ++k) acc += p_cdf[k] * std::log(q_cdf[k]);
    return acc == 0.0 ? 0.0 : -acc;
}

double kl_sum(std::span<const double> p, std::span<const double> q) {
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) acc += p[k] * std::log(p[k] / q[k]);
    return acc;
}

double evaluate_on(std::span<const double> p, std::span<const double> cdf,
                   std::span<const double> tail, const FinitePmf* q, MeasureId id,
                   std::optional<int> j, IndexConvention conv) {
    const int r = static_cast<int>(p.size());
    if (measure_is_paired(id) && q == nullptr)
        raise(errc::missing_q, std::string("measure '") + measure_name(id) +
                                   "' needs the experimenter distribution q");
    if (measure_is_time_indexed(id) && !j)
        raise(errc::bad_time_index,
              std::string("measure '") + measure_name(id) + "' needs a time index j");
    int jj = 0;
    if (measure_is_time_indexed(id)) {
        if (measure_is_residual_type(id))
            check_residual_index(*j, r);
        else
            check_time_index(*j, r);
        jj = *j - 1;
    }
    switch (id) {
        case MeasureId::shannon: return shannon_sum(p);
        case MeasureId::residual_entropy: return residual_entropy_sum(p, tail, jj, conv);
        case MeasureId::past_entropy: return past_entropy_sum(p, cdf, jj);
        case MeasureId::cum_residual_entropy: return cum_residual_sum(tail);
        case MeasureId::cum_past_entropy: return cum_past_sum(cdf);
        case MeasureId::mean_residual: return mean_residual_sum(tail, jj);
        case MeasureId::mean_past: return mean_past_sum(cdf, jj);
        case MeasureId::inaccuracy: return inaccuracy_sum(p, q->probs());
        case MeasureId::residual_inaccuracy:
            return residual_inaccuracy_sum(p, tail, q->probs(), q->tail(), jj, conv);
        case MeasureId::past_inaccuracy:
            return past_inaccuracy_sum(p, cdf, q->probs(), q->cdf(), jj);
        case MeasureId::cum_residual_inaccuracy:
            return cum_residual_inaccuracy_sum(tail, q->tail());
        case MeasureId::cum_past_inaccuracy: return cum_past_inaccuracy_sum(cdf, q->cdf());
        case MeasureId::kl_divergence: return kl_sum(p, q->probs());
    }
    raise(errc::parse_error, "unhandled measure id");
}

} // namespace detail

double shannon_entropy(const FinitePmf& p) { return detail::shannon_sum(p.probs()); }

double residual_entropy(const FinitePmf& p, int j, IndexConvention conv) {
    check_residual_index(j, p.size());
    return detail::residual_entropy_sum(p.probs(), p.tail(), j - 1, conv);
}

double past_entropy(const FinitePmf& p, int j) {
    check_time_index(j, p.size());
    return detail::past_entropy_sum(p.probs(), p.cdf(), j - 1);
}

double cum_residual_entropy(const FinitePmf& p) { return detail::cum_residual_sum(p.tail()); }

double cum_past_entropy(const FinitePmf& p) { return detail::cum_past_sum(p.cdf()); }

double mean_residual(const FinitePmf& p, int j) {
    check_residual_index(j, p.size());
    return detail::mean_residual_sum(p.tail(), j - 1);
}

double mean_past(const FinitePmf& p, int j) {
    check_time_index(j, p.size());
    return detail::mean_past_sum(p.cdf(), j - 1);
}

double inaccuracy(const PairedPmfs& pq) {
    return detail::inaccuracy_sum(pq.p().probs(), pq.q().probs());
}

double residual_inaccuracy(const PairedPmfs& pq, int j, IndexConvention conv) {
    check_residual_index(j, pq.size());
    return detail::residual_inaccuracy_sum(pq.p().probs(), pq.p().tail(), pq.q().probs(),
                                           pq.q().tail(), j - 1, conv);
}

double past_inaccuracy(const PairedPmfs& pq, int j) {
    check_time_index(j, pq.size());
    return detail::past_inaccuracy_sum(pq.p().probs(), pq.p().cdf(), pq.q().probs(),
                                       pq.q().cdf(), j - 1);
}

double cum_residual_inaccuracy(const PairedPmfs& pq) {
    return detail::cum_residual_inaccuracy_sum(pq.p().tail(), pq.q().tail());
}

double cum_past_inaccuracy(const PairedPmfs& pq) {
    return detail::cum_past_inaccuracy_sum(pq.p().cdf(), pq.q().cdf());
}

double kl_divergence(const PairedPmfs& pq) {
    return detail::kl_sum(pq.p().probs(), pq.q().probs());
}

double evaluate(MeasureId id, const FinitePmf& p, const FinitePmf* q, std::optional<int> j,
                IndexConvention conv) {
    if (q != nullptr && !same_support(p.support(), q->support()))
        raise(errc::support_mismatch, "p and q are defined on different supports");
    return detail::evaluate_on(p.probs(), p.cdf(), p.tail(), q, id, j, conv);
}

} // namespace lifent
