#include "relbell/ensemble.hpp"

namespace relbell::serial {

EnsembleResult run_ensemble(const ExperimentConfig& cfg, const ProperTimes& times) {
    cfg.validate();
    std::vector<TrialRecord> trials;
    trials.reserve(cfg.trials);
    for (std::uint64_t k = 0; k < cfg.trials; ++k) {
        Rng rng = trial_rng(cfg.seed, k);
        trials.push_back(run_trial(cfg, times, k, rng));
    }
    return detail::aggregate(cfg, times, std::move(trials));
}

EnsembleResult run_experiment(const ExperimentConfig& cfg) {
    return serial::run_ensemble(cfg, scenario_proper_times(cfg.scenario));
}

}  // namespace relbell::serial
