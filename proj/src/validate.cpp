#include "relbell/validate.hpp"

#include "relbell/ensemble.hpp"
#include "relbell/grid.hpp"
#include "relbell/relativity.hpp"
#include "relbell/stats.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace relbell {

namespace {

std::string describe(const char* what, double value, double bound) {
    std::ostringstream s;
    s.precision(3);
    s << what << " = " << value << " (bound " << bound << ")";
    return s.str();
}

CheckResult check_proper_times() {
    const double constant = proper_time(Worldline::constant_speed(0.6, 10.0));
    const auto cyl = scenario_proper_times(Cylinder{6.0, 0.6});
    const double err = std::max({std::abs(constant - 8.0), std::abs(cyl.earth - 10.0), std::abs(cyl.rocket - 8.0)});
    return {"proper_time_exact", err < 1e-9, describe("max error", err, 1e-9)};
}

CheckResult check_oracle_equivalence() {
    const auto p0 = make_packet(0.0, 1.0);
    const auto grid0 = sample_packet(p0);
    const auto mode = EvolutionMode::full_von_neumann();
    double worst = 0.0;
    for (SpinLabel s : kSpinLabels) {
        for (double tau : {0.0, 1.0, 2.5, 5.0}) {
            const auto numeric = grid_evolve(grid0, s, 1.0, tau, 1.0).density();
            const auto closed = evolve_packet(p0, s, 1.0, tau, mode);
            for (std::size_t j = 0; j < numeric.size(); ++j)
                worst = std::max(worst, std::abs(numeric[j] - density(closed, grid0.grid.x(j))));
        }
    }
    return {"oracle_equivalence", worst < 1e-8, describe("max pointwise error", worst, 1e-8)};
}

CheckResult check_equivariance(const EvolutionMode& mode, const ValidationOptions& opt) {
    const auto p0 = make_packet(0.0, 1.0);
    const double tau = 2.0;
    const double g = 1.0;
    std::string name = "equivariance_" + std::string(to_string(mode.kind()));
    double worst = 0.0;
    const double bound = ks_critical_1pct(opt.equivariance_samples);
    for (SpinLabel s : kSpinLabels) {
        Rng rng = trial_rng(opt.seed, static_cast<std::uint64_t>(mode.kind()) * 2 + index_of(s));
        std::vector<double> x0(opt.equivariance_samples);
        for (auto& x : x0) x = sample_initial_position(p0, rng);
        const OnticState state{p0, s, Direction::z(), Wing::earth};
        const auto xf = transport_ensemble(state, x0, g, tau, 1e-2, mode, opt.guidance);
        const auto target = evolve_packet(p0, s, g, tau, mode);
        worst = std::max(worst, ks_statistic(xf, [&](double x) { return cumulative(target, x); }));
    }
    return {name, worst < bound, describe("KS", worst, bound)};
}

CheckResult check_singlet_weights() {
    double worst = 0.0;
    for (double angle : {0.0, 0.25 * std::numbers::pi, 0.5 * std::numbers::pi, 2.0, std::numbers::pi}) {
        const auto r = Direction::z();
        const auto e = Direction::in_xz_plane(angle);
        worst = std::max(worst, std::abs(correlation_exact(r, e) + std::cos(angle)));
        const auto d = singlet_coefficients(r, e);
        double total = 0.0;
        for (SpinLabel a : kSpinLabels)
            for (SpinLabel b : kSpinLabels) total += d.weight(a, b);
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return {"singlet_weights", worst < 1e-12, describe("max error", worst, 1e-12)};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
    std::vector<CheckResult> out;
    out.push_back(check_singlet_weights());
    out.push_back(check_proper_times());
    out.push_back(check_oracle_equivalence());
    out.push_back(check_equivariance(EvolutionMode::translation_only(), options));
    out.push_back(check_equivariance(EvolutionMode::full_von_neumann(), options));
    out.push_back(check_equivariance(EvolutionMode::impulsive_kick(1.0), options));
    return out;
}

}  // namespace relbell
