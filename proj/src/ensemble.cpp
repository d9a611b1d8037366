#include "relbell/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace relbell {

EvolutionMode ExperimentConfig::mode_for(Wing w) const {
    switch (mode) {
        case EvolutionMode::Kind::translation_only: return EvolutionMode::translation_only();
        case EvolutionMode::Kind::full_von_neumann: return EvolutionMode::full_von_neumann();
        case EvolutionMode::Kind::impulsive_kick: return EvolutionMode::impulsive_kick(packet_params(w).kick);
    }
    throw std::invalid_argument("unknown evolution mode");
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("ensemble needs at least one trial");
    if (!(overlap_threshold > 0.0 && overlap_threshold < 1.0))
        throw std::invalid_argument("overlap threshold must lie in (0, 1)");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step size must be positive");
    if (!std::isfinite(g)) throw std::invalid_argument("coupling must be finite");
    if (workers < 0) throw std::invalid_argument("worker count must be non-negative");
    for (Wing w : {Wing::rocket, Wing::earth}) {
        (void)packet_params(w).packet();
        (void)mode_for(w);
    }
}

std::vector<double> EnsembleResult::plate_samples(Wing w) const {
    std::vector<double> xs;
    xs.reserve(trials.size());
    for (const auto& t : trials)
        if (!t.wing(w).failed) xs.push_back(t.wing(w).xf);
    return xs;
}

std::pair<SpinLabel, SpinLabel> sample_joint_spins(const SingletDecomposition& d, Rng& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double u = uniform(rng);
    double acc = 0.0;
    std::pair<SpinLabel, SpinLabel> last{SpinLabel::plus, SpinLabel::plus};
    for (SpinLabel i1 : kSpinLabels) {
        for (SpinLabel i2 : kSpinLabels) {
            const double w = d.weight(i1, i2);
            if (w <= 0.0) continue;
            acc += w;
            last = {i1, i2};
            if (u < acc) return last;
        }
    }
    // u landed in the rounding gap above the accumulated total.
    return last;
}

double sample_initial_position(const GaussianPacket& p, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    return p.center + p.sigma() * normal(rng);
}

Readout readout(double x_final, const GaussianPacket& plus, const GaussianPacket& minus, double threshold) {
    if (packet_overlap(plus, minus) > threshold) return {std::nullopt, true};
    const double mid = 0.5 * (plus.center + minus.center);
    const bool plus_on_right = plus.center >= minus.center;
    const bool right = x_final >= mid;
    const bool left = x_final <= mid;
    return {(plus_on_right ? right : left) ? SpinLabel::plus : SpinLabel::minus, false};
}

WingSetup wing_setup(const ExperimentConfig& cfg, Wing w, double tau) {
    WingSetup s;
    s.wing = w;
    s.axis = cfg.axis(w);
    s.packet = cfg.packet_params(w).packet();
    s.mode = cfg.mode_for(w);
    s.g = cfg.g;
    s.tau = tau;
    s.dt = tau > 0.0 ? std::min(cfg.dt, tau) : cfg.dt;
    s.overlap_threshold = cfg.overlap_threshold;
    return s;
}

WingRecord run_wing(const WingSetup& w, SpinLabel spin, double x0) {
    const OnticState state{w.packet, spin, w.axis, w.wing};
    WingRecord rec;
    rec.spin = spin;
    rec.x0 = x0;
    rec.xf = transport(state, x0, w.g, w.tau, w.dt, w.mode);
    const auto plus = evolve_packet(w.packet, SpinLabel::plus, w.g, w.tau, w.mode);
    const auto minus = evolve_packet(w.packet, SpinLabel::minus, w.g, w.tau, w.mode);
    const auto r = readout(rec.xf, plus, minus, w.overlap_threshold);
    rec.outcome = r.outcome;
    rec.failed = r.failed;
    return rec;
}

namespace {

void check_times(const ProperTimes& times) {
    if (!(times.rocket >= 0.0) || !(times.earth >= 0.0) || !std::isfinite(times.rocket) || !std::isfinite(times.earth))
        throw std::invalid_argument("proper times must be finite and non-negative");
}

TrialRecord run_trial_prepared(const SingletDecomposition& d, const WingSetup& rocket, const WingSetup& earth,
                               std::uint64_t trial_index, Rng& rng) {
    const auto [i1, i2] = sample_joint_spins(d, rng);
    const double xr0 = sample_initial_position(rocket.packet, rng);
    const double xe0 = sample_initial_position(earth.packet, rng);
    TrialRecord t;
    t.trial = trial_index;
    t.rocket = run_wing(rocket, i1, xr0);
    t.earth = run_wing(earth, i2, xe0);
    return t;
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, const ProperTimes& times, std::uint64_t trial_index, Rng& rng) {
    check_times(times);
    return run_trial_prepared(singlet_coefficients(cfg.r, cfg.e), wing_setup(cfg, Wing::rocket, times.rocket),
                              wing_setup(cfg, Wing::earth, times.earth), trial_index, rng);
}

namespace detail {

EnsembleResult aggregate(const ExperimentConfig& cfg, const ProperTimes& times, std::vector<TrialRecord> trials) {
    EnsembleResult res;
    res.proper_times = times;
    for (const auto& t : trials) {
        ++res.spin_counts[index_of(t.rocket.spin)][index_of(t.earth.spin)];
        if (t.resolved())
            ++res.outcome_counts[index_of(*t.rocket.outcome)][index_of(*t.earth.outcome)];
        else
            ++res.failed_trials;
    }
    for (Wing w : {Wing::rocket, Wing::earth}) {
        const auto s = wing_setup(cfg, w, w == Wing::rocket ? times.rocket : times.earth);
        const double overlap = packet_overlap(evolve_packet(s.packet, SpinLabel::plus, s.g, s.tau, s.mode),
                                              evolve_packet(s.packet, SpinLabel::minus, s.g, s.tau, s.mode));
        (w == Wing::rocket ? res.overlap_rocket : res.overlap_earth) = overlap;
    }
    res.trials = std::move(trials);
    return res;
}

}  // namespace detail

EnsembleResult run_ensemble(const ExperimentConfig& cfg, const ProperTimes& times) {
    cfg.validate();
    check_times(times);
    const auto d = singlet_coefficients(cfg.r, cfg.e);
    const auto rocket = wing_setup(cfg, Wing::rocket, times.rocket);
    const auto earth = wing_setup(cfg, Wing::earth, times.earth);

    std::vector<TrialRecord> trials(cfg.trials);
    const auto n = static_cast<std::ptrdiff_t>(cfg.trials);
    const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto index = static_cast<std::uint64_t>(k);
        Rng rng = trial_rng(cfg.seed, index);
        trials[k] = run_trial_prepared(d, rocket, earth, index, rng);
    }
    return detail::aggregate(cfg, times, std::move(trials));
}

EnsembleResult run_experiment(const ExperimentConfig& cfg) {
    return relbell::run_ensemble(cfg, scenario_proper_times(cfg.scenario));
}

double epistemic_density(const ExperimentConfig& cfg, double tau_r, double tau_e, double x_r, double x_e) {
    const auto d = singlet_coefficients(cfg.r, cfg.e);
    const auto rocket_mode = cfg.mode_for(Wing::rocket);
    const auto earth_mode = cfg.mode_for(Wing::earth);
    const auto pr = cfg.rocket.packet();
    const auto pe = cfg.earth.packet();
    double sum = 0.0;
    for (SpinLabel i1 : kSpinLabels) {
        const double rho_r = density(evolve_packet(pr, i1, cfg.g, tau_r, rocket_mode), x_r);
        for (SpinLabel i2 : kSpinLabels)
            sum += d.weight(i1, i2) * rho_r * density(evolve_packet(pe, i2, cfg.g, tau_e, earth_mode), x_e);
    }
    return sum;
}

double epistemic_marginal_cdf(const ExperimentConfig& cfg, Wing w, double tau_r, double tau_e, double x) {
    const auto d = singlet_coefficients(cfg.r, cfg.e);
    const auto mode = cfg.mode_for(w);
    const auto p = cfg.packet_params(w).packet();
    const double tau = w == Wing::rocket ? tau_r : tau_e;
    double sum = 0.0;
    for (SpinLabel mine : kSpinLabels) {
        double weight = 0.0;
        for (SpinLabel other : kSpinLabels)
            weight += w == Wing::rocket ? d.weight(mine, other) : d.weight(other, mine);
        sum += weight * cumulative(evolve_packet(p, mine, cfg.g, tau, mode), x);
    }
    return sum;
}

}  // namespace relbell
