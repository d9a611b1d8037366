// Times the OpenMP kernels against their serial references and checks that
// both produce identical output.
//
//   relbell_bench [trials] [positions]

#include "relbell/dynamics.hpp"
#include "relbell/ensemble.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_trials(const relbell::EnsembleResult& a, const relbell::EnsembleResult& b) {
    if (a.trials.size() != b.trials.size()) return false;
    for (std::size_t k = 0; k < a.trials.size(); ++k) {
        const auto& x = a.trials[k];
        const auto& y = b.trials[k];
        if (x.rocket.xf != y.rocket.xf || x.earth.xf != y.earth.xf || x.rocket.spin != y.rocket.spin ||
            x.earth.spin != y.earth.spin)
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t trials = argc > 1 ? std::stoul(argv[1]) : 20000;
    const std::size_t positions = argc > 2 ? std::stoul(argv[2]) : 20000;

    relbell::ExperimentConfig cfg;
    cfg.mode = relbell::EvolutionMode::Kind::full_von_neumann;
    cfg.e = relbell::Direction::in_xz_plane(0.25 * 3.14159265358979323846);
    cfg.scenario = relbell::make_rocket_scenario(relbell::make_round_trip(0.6, 1.0, 3.0));
    cfg.trials = trials;
    cfg.dt = 1e-2;
    cfg.seed = 7;

    std::printf("threads available: %d\n", omp_get_max_threads());

    relbell::EnsembleResult serial_result, parallel_result;
    const double ts = seconds([&] { serial_result = relbell::serial::run_experiment(cfg); });
    const double tp = seconds([&] { parallel_result = relbell::run_experiment(cfg); });
    std::printf("run_experiment      %8zu trials  serial %8.3f s  openmp %8.3f s  speedup %5.2f  identical %s\n", trials,
                ts, tp, ts / tp, same_trials(serial_result, parallel_result) ? "yes" : "NO");

    const auto packet = relbell::make_packet(0.0, 1.0);
    const relbell::OnticState state{packet, relbell::SpinLabel::plus, relbell::Direction::z(), relbell::Wing::earth};
    relbell::Rng rng = relbell::trial_rng(11, 0);
    std::vector<double> x0(positions);
    for (auto& x : x0) x = relbell::sample_initial_position(packet, rng);
    const auto mode = relbell::EvolutionMode::full_von_neumann();
    std::vector<double> xs, xp;
    const double us = seconds([&] { xs = relbell::serial::transport_ensemble(state, x0, 1.0, 5.0, 1e-2, mode); });
    const double up = seconds([&] { xp = relbell::transport_ensemble(state, x0, 1.0, 5.0, 1e-2, mode); });
    std::printf("transport_ensemble  %8zu paths   serial %8.3f s  openmp %8.3f s  speedup %5.2f  identical %s\n",
                positions, us, up, us / up, xs == xp ? "yes" : "NO");
    return 0;
}
