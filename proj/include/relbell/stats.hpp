#pragma once

#include "relbell/ensemble.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace relbell {

/// Raised when an estimator has no usable records.
class NoEstimateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CorrelationEstimate {
    double value = 0.0;
    double std_error = 0.0;  ///< sqrt((1 - E^2) / n)
    std::size_t samples = 0;
};

/// Mean of o_r * o_e over trials resolved on both wings.
CorrelationEstimate correlation_estimate(std::span<const TrialRecord> records);

struct ChshSettings {
    Direction a;
    Direction a_prime;
    Direction b;
    Direction b_prime;
};

struct ChshResult {
    /// E(a,b), E(a,b'), E(a',b), E(a',b')
    std::array<CorrelationEstimate, 4> estimates;
    double s = 0.0;
};

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b'), each from its own ensemble with
/// a seed derived from cfg.seed. a and a' replace the rocket axis, b and b' the earth axis.
ChshResult chsh(const ExperimentConfig& cfg, const ChshSettings& settings);

/// Same composite from the exact singlet weights.
double chsh_exact(const ChshSettings& settings);

struct PlateHistogram {
    Wing wing = Wing::rocket;
    std::vector<double> edges;  ///< bins + 1 edges
    std::vector<std::size_t> counts;
    double center_plus = 0.0;   ///< mean final position of +1 outcomes
    double center_minus = 0.0;
    double spread_plus = 0.0;   ///< sample standard deviation of +1 outcomes
    double spread_minus = 0.0;
    std::size_t count_plus = 0;
    std::size_t count_minus = 0;
    double separation = 0.0;    ///< |center_plus - center_minus|
};

/// Histogram of final positions over trials resolved on wing w.
/// Throws NoEstimateError if the wing has no resolved trial, std::invalid_argument if bins == 0.
PlateHistogram plate_histogram(std::span<const TrialRecord> records, Wing w, std::size_t bins);

/// sup |F_n(x) - F(x)| between the empirical CDF of samples and cdf.
/// Throws std::invalid_argument for fewer than 10 samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// 1% critical value used throughout: 1.63 / sqrt(n).
inline double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

/// Pearson chi-square statistic of observed counts against expected probabilities.
/// Cells with zero probability must have zero count and are skipped.
double chi_square_statistic(std::span<const std::size_t> observed, std::span<const double> probabilities);

/// Upper quantile of the chi-square distribution (e.g. alpha = 0.01).
double chi_square_critical(double dof, double alpha);

}  // namespace relbell
