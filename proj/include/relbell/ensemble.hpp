#pragma once

#include "relbell/dynamics.hpp"
#include "relbell/relativity.hpp"
#include "relbell/rng.hpp"
#include "relbell/spin.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace relbell {

struct PacketParams {
    double center = 0.0;
    double sigma0 = 1.0;
    double p0 = 0.0;
    double mass = 1.0;
    double kick = 1.0;  ///< momentum kick magnitude, impulsive_kick mode only

    GaussianPacket packet() const { return make_packet(center, sigma0, p0, mass); }
};

struct ExperimentConfig {
    Direction r = Direction::z();  ///< rocket measurement axis
    Direction e = Direction::z();  ///< earth measurement axis
    double g = 1.0;
    EvolutionMode::Kind mode = EvolutionMode::Kind::translation_only;
    PacketParams rocket;
    PacketParams earth;
    Scenario scenario = Cylinder{6.0, 0.6};
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    double overlap_threshold = 0.1;
    double dt = 1e-3;
    int workers = 0;  ///< OpenMP threads; 0 keeps the runtime default

    const PacketParams& packet_params(Wing w) const { return w == Wing::rocket ? rocket : earth; }
    const Direction& axis(Wing w) const { return w == Wing::rocket ? r : e; }
    EvolutionMode mode_for(Wing w) const;
    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct WingRecord {
    SpinLabel spin = SpinLabel::plus;
    double x0 = 0.0;
    double xf = 0.0;
    std::optional<SpinLabel> outcome;
    bool failed = false;
};

struct TrialRecord {
    std::uint64_t trial = 0;
    WingRecord rocket;
    WingRecord earth;

    const WingRecord& wing(Wing w) const { return w == Wing::rocket ? rocket : earth; }
    bool resolved() const { return !rocket.failed && !earth.failed; }
};

struct EnsembleResult {
    ProperTimes proper_times;
    std::vector<TrialRecord> trials;
    /// Joint outcome counts over trials resolved on both wings, [index_of(o_r)][index_of(o_e)].
    std::array<std::array<std::size_t, 2>, 2> outcome_counts{};
    /// Sampled ontic spin pairs over all trials, [index_of(i1)][index_of(i2)].
    std::array<std::array<std::size_t, 2>, 2> spin_counts{};
    std::size_t failed_trials = 0;
    double overlap_rocket = 0.0;  ///< Bhattacharyya coefficient of the two final rocket packets
    double overlap_earth = 0.0;

    /// Final positions of trials resolved on wing w.
    std::vector<double> plate_samples(Wing w) const;
};

std::pair<SpinLabel, SpinLabel> sample_joint_spins(const SingletDecomposition& d, Rng& rng);

double sample_initial_position(const GaussianPacket& p, Rng& rng);

struct Readout {
    std::optional<SpinLabel> outcome;
    bool failed = false;
};

/// Fails iff the final packets overlap beyond threshold; otherwise the outcome is
/// the side of the midpoint between the two packet centers (ties go to +1).
Readout readout(double x_final, const GaussianPacket& plus, const GaussianPacket& minus, double threshold);

/// Everything one wing needs; nothing here refers to the other wing.
struct WingSetup {
    Wing wing = Wing::rocket;
    Direction axis;
    GaussianPacket packet;
    EvolutionMode mode = EvolutionMode::translation_only();
    double g = 1.0;
    double tau = 0.0;
    double dt = 1e-3;
    double overlap_threshold = 0.1;
};

WingSetup wing_setup(const ExperimentConfig& cfg, Wing w, double tau);

/// Evolves one wing's ontic state for its own proper time and reads it out.
WingRecord run_wing(const WingSetup& w, SpinLabel spin, double x0);

/// One entangled pair. `times` may be any non-negative pair, not only one
/// produced by a scenario.
TrialRecord run_trial(const ExperimentConfig& cfg, const ProperTimes& times, std::uint64_t trial_index, Rng& rng);

/// Runs cfg.trials trials at the scenario's proper times (OpenMP across trials).
EnsembleResult run_experiment(const ExperimentConfig& cfg);
/// Same, at an explicit pair of proper times.
EnsembleResult run_ensemble(const ExperimentConfig& cfg, const ProperTimes& times);

namespace serial {
/// Single-threaded reference; output is bit-identical to the parallel kernels.
EnsembleResult run_experiment(const ExperimentConfig& cfg);
EnsembleResult run_ensemble(const ExperimentConfig& cfg, const ProperTimes& times);
}  // namespace serial

/// Position density of the multi-time epistemic state:
/// sum_{i1,i2} w(i1,i2) rho_i1(x_r; tau_r) rho_i2(x_e; tau_e).
double epistemic_density(const ExperimentConfig& cfg, double tau_r, double tau_e, double x_r, double x_e);

/// CDF of the single-wing marginal of epistemic_density.
double epistemic_marginal_cdf(const ExperimentConfig& cfg, Wing w, double tau_r, double tau_e, double x);

namespace detail {
EnsembleResult aggregate(const ExperimentConfig& cfg, const ProperTimes& times, std::vector<TrialRecord> trials);
}

}  // namespace relbell
