#include "relbell/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace relbell {

CorrelationEstimate correlation_estimate(std::span<const TrialRecord> records) {
    long long sum = 0;
    std::size_t n = 0;
    for (const auto& t : records) {
        if (!t.resolved()) continue;
        sum += sign(*t.rocket.outcome) * sign(*t.earth.outcome);
        ++n;
    }
    if (n == 0) throw NoEstimateError("no trial was resolved on both wings");
    CorrelationEstimate est;
    est.samples = n;
    est.value = static_cast<double>(sum) / static_cast<double>(n);
    est.std_error = std::sqrt(std::max(0.0, 1.0 - est.value * est.value) / static_cast<double>(n));
    return est;
}

ChshResult chsh(const ExperimentConfig& cfg, const ChshSettings& settings) {
    const std::array<std::pair<Direction, Direction>, 4> pairs{{{settings.a, settings.b},
                                                                {settings.a, settings.b_prime},
                                                                {settings.a_prime, settings.b},
                                                                {settings.a_prime, settings.b_prime}}};
    ChshResult out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        ExperimentConfig run = cfg;
        run.r = pairs[k].first;
        run.e = pairs[k].second;
        run.seed = derive_seed(cfg.seed, k);
        const auto res = run_experiment(run);
        out.estimates[k] = correlation_estimate(res.trials);
    }
    out.s = out.estimates[0].value - out.estimates[1].value + out.estimates[2].value + out.estimates[3].value;
    return out;
}

double chsh_exact(const ChshSettings& s) {
    return correlation_exact(s.a, s.b) - correlation_exact(s.a, s.b_prime) + correlation_exact(s.a_prime, s.b) +
           correlation_exact(s.a_prime, s.b_prime);
}

PlateHistogram plate_histogram(std::span<const TrialRecord> records, Wing w, std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    PlateHistogram h;
    h.wing = w;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    // Welford per outcome
    std::array<double, 2> mean{0.0, 0.0};
    std::array<double, 2> m2{0.0, 0.0};
    std::array<std::size_t, 2> count{0, 0};
    for (const auto& t : records) {
        const auto& rec = t.wing(w);
        if (rec.failed) continue;
        lo = std::min(lo, rec.xf);
        hi = std::max(hi, rec.xf);
        const std::size_t k = index_of(*rec.outcome);
        ++count[k];
        const double delta = rec.xf - mean[k];
        mean[k] += delta / static_cast<double>(count[k]);
        m2[k] += delta * (rec.xf - mean[k]);
    }
    if (count[0] + count[1] == 0) throw NoEstimateError("no resolved trial on the " + std::string(to_string(w)) + " wing");
    if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    }

    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    h.edges.back() = hi;
    h.counts.assign(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (const auto& t : records) {
        const auto& rec = t.wing(w);
        if (rec.failed) continue;
        auto b = static_cast<std::size_t>((rec.xf - lo) / width);
        ++h.counts[std::min(b, bins - 1)];
    }

    h.count_plus = count[0];
    h.count_minus = count[1];
    h.center_plus = mean[0];
    h.center_minus = mean[1];
    h.spread_plus = count[0] > 1 ? std::sqrt(m2[0] / static_cast<double>(count[0] - 1)) : 0.0;
    h.spread_minus = count[1] > 1 ? std::sqrt(m2[1] / static_cast<double>(count[1] - 1)) : 0.0;
    h.separation = (count[0] > 0 && count[1] > 0) ? std::abs(h.center_plus - h.center_minus) : 0.0;
    return h;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 10) throw std::invalid_argument("KS statistic needs at least 10 samples");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        // step over ties so the empirical CDF jumps once per distinct value
        std::size_t j = i;
        while (j + 1 < xs.size() && xs[j + 1] == xs[i]) ++j;
        const double f = cdf(xs[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(j + 1) / n - f});
        i = j + 1;
    }
    return d;
}

double chi_square_statistic(std::span<const std::size_t> observed, std::span<const double> probabilities) {
    if (observed.size() != probabilities.size()) throw std::invalid_argument("observed and expected sizes differ");
    std::size_t total = 0;
    for (auto c : observed) total += c;
    double chi2 = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        const double expected = probabilities[k] * static_cast<double>(total);
        if (expected <= 0.0) {
            if (observed[k] != 0) return std::numeric_limits<double>::infinity();
            continue;
        }
        const double diff = static_cast<double>(observed[k]) - expected;
        chi2 += diff * diff / expected;
    }
    return chi2;
}

double chi_square_critical(double dof, double alpha) {
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

}  // namespace relbell
