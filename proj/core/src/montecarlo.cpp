#include "lifent/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lifent {

namespace detail {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master + index * 0x9E3779B97F4A7C15ULL);
}

std::mt19937_64 make_engine(std::uint64_t seed) noexcept {
    return std::mt19937_64(splitmix64(seed));
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace detail

std::vector<double> sample(const FinitePmf& pmf, std::int64_t n, std::uint64_t seed) {
    if (n < 1) raise(errc::bad_study, "sample size must be at least 1");
    auto eng = detail::make_engine(seed);
    auto cdf = pmf.cdf();
    auto support = pmf.support();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& v : out) {
        const double u = detail::uniform01(eng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it; // u above the last partial sum maps to x_r
        v = support[static_cast<std::size_t>(it - cdf.begin())];
    }
    return out;
}

double ks_statistic(std::span<const double> draws) {
    if (draws.size() < 2)
        raise(errc::too_few_draws,
              "Kolmogorov-Smirnov needs at least 2 draws, got " + std::to_string(draws.size()));
    std::vector<double> z(draws.begin(), draws.end());
    std::sort(z.begin(), z.end());
    const double m = static_cast<double>(z.size());
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double f = detail::normal_cdf(z[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / m - f);
        d = std::max(d, f - static_cast<double>(i) / m);
    }
    return d;
}

namespace {

bool is_degeneracy_abort(const Error& e) {
    return e.code() == errc::zero_cell_in_range || e.code() == errc::empty_tail ||
           e.code() == errc::empty_head;
}

double sample_variance(const std::vector<double>& v) {
    const double m = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= m;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / (m - 1.0);
}

} // namespace

McReport run_study(const McStudy& study) {
    if (study.n < 1 || study.replications < 2)
        raise(errc::bad_study, "study needs n >= 1 and at least 2 replications");
    const FinitePmf* q = study.q ? &*study.q : nullptr;
    McReport rep;
    rep.spec = sigma_sq(study.measure, study.pmf, q, study.j, study.cov_mode, study.conv);
    rep.truth = evaluate(study.measure, study.pmf, q, study.j, study.conv);
    const double sqrt_n = std::sqrt(static_cast<double>(study.n));
    rep.draws.reserve(study.replications);
    rep.raw_errors.reserve(study.replications);
    for (int i = 0; i < study.replications; ++i) {
        const auto obs =
            sample(study.pmf, study.n, detail::substream_seed(study.seed, static_cast<std::uint64_t>(i)));
        const EmpiricalDist emp = fit_empirical(obs, study.pmf.support());
        double est;
        try {
            est = plugin_measure(emp, study.measure, study.j, q, study.conv);
        } catch (const Error& e) {
            if (is_degeneracy_abort(e)) {
                ++rep.skipped;
                continue;
            }
            throw;
        }
        rep.raw_errors.push_back(sqrt_n * (est - rep.truth));
        rep.draws.push_back(standardize(est, rep.truth, study.n, rep.spec));
        rep.rep_index.push_back(i);
    }
    if (rep.draws.empty())
        raise(errc::all_replications_skipped,
              "every replication hit an empirical degeneracy; nothing to report");
    if (rep.draws.size() < 2)
        raise(errc::too_few_draws, "only one replication survived; need at least 2");
    rep.empirical_variance = sample_variance(rep.raw_errors);
    rep.ks_stat = ks_statistic(rep.draws);
    rep.ks_critical_95 = 1.36 / std::sqrt(static_cast<double>(rep.draws.size()));

    // The paper's histogram/Q-Q diagnostics compare against a normal with the
    // data's own mean and standard deviation; this is that comparison as a
    // sup-distance.
    double mean = 0.0;
    for (double d : rep.draws) mean += d;
    mean /= static_cast<double>(rep.draws.size());
    const double sd = std::sqrt(sample_variance(rep.draws));
    if (sd > 0.0) {
        std::vector<double> centered(rep.draws.size());
        for (std::size_t i = 0; i < rep.draws.size(); ++i)
            centered[i] = (rep.draws[i] - mean) / sd;
        rep.ks_stat_studentized = ks_statistic(centered);
    } else {
        rep.ks_stat_studentized = rep.ks_stat;
    }
    return rep;
}

TraceResult run_trace(const FinitePmf& pmf, MeasureId measure, std::optional<int> j,
                      const FinitePmf* q, const std::vector<std::int64_t>& n_grid,
                      std::uint64_t seed, IndexConvention conv) {
    if (n_grid.empty()) raise(errc::bad_grid, "empty n grid");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 1) raise(errc::bad_grid, "grid entries must be >= 1");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            raise(errc::bad_grid, "grid must be strictly increasing");
    }
    TraceResult tr;
    tr.n_grid = n_grid;
    tr.truth = evaluate(measure, pmf, q, j, conv);
    tr.estimates.reserve(n_grid.size());

    auto eng = detail::make_engine(seed);
    auto cdf = pmf.cdf();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(pmf.size()), 0);
    std::int64_t drawn = 0;
    std::vector<double> support_vec(pmf.support().begin(), pmf.support().end());
    for (std::int64_t target : n_grid) {
        for (; drawn < target; ++drawn) {
            const double u = detail::uniform01(eng);
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) --it;
            ++counts[static_cast<std::size_t>(it - cdf.begin())];
        }
        const EmpiricalDist emp = EmpiricalDist::from_counts(support_vec, counts);
        tr.estimates.push_back(plugin_measure(emp, measure, j, q, conv));
    }
    return tr;
}

} // namespace lifent
