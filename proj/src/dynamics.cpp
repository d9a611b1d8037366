#include "relbell/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace relbell {

double guidance_velocity(const OnticState& s, double x, double g, const EvolutionMode& mode) {
    const double i = sign(s.spin);
    const GaussianPacket& p = s.packet;
    switch (mode.kind()) {
        case EvolutionMode::Kind::translation_only:
            return i * g;
        case EvolutionMode::Kind::full_von_neumann:
            return phase_gradient(p, x) / p.mass + i * g;
        case EvolutionMode::Kind::impulsive_kick:
            if (!p.kicked) {
                GaussianPacket kicked = p;
                kicked.momentum += i * mode.kick();
                kicked.kicked = true;
                return phase_gradient(kicked, x) / p.mass;
            }
            return phase_gradient(p, x) / p.mass;
    }
    return 0.0;
}

namespace {

void check_steps(double tau_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step size must be positive");
    if (!(tau_end >= 0.0) || !std::isfinite(tau_end)) throw std::invalid_argument("final proper time must be non-negative");
    if (tau_end > 0.0 && dt > tau_end) throw std::invalid_argument("step size exceeds the integration interval");
}

struct GuidedMotion {
    const OnticState& state;
    double g;
    const EvolutionMode& mode;
    GuidanceFn guidance;

    double operator()(double tau, double x) const {
        OnticState now = state;
        now.packet = evolve_packet(state.packet, state.spin, g, tau, mode);
        return guidance(now, x, g, mode);
    }
};

double rk4_step(const GuidedMotion& v, double tau, double x, double h) {
    const double k1 = v(tau, x);
    const double k2 = v(tau + 0.5 * h, x + 0.5 * h * k1);
    const double k3 = v(tau + 0.5 * h, x + 0.5 * h * k2);
    const double k4 = v(tau + h, x + h * k3);
    return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Calls observe(tau, x) after every step; returns the final position.
template <class Observer>
double integrate(const GuidedMotion& v, double x0, double tau_end, double dt, Observer&& observe) {
    check_steps(tau_end, dt);
    if (tau_end == 0.0) return x0;
    const auto full_steps = static_cast<std::size_t>(std::floor(tau_end / dt));
    double x = x0;
    double tau = 0.0;
    for (std::size_t k = 0; k < full_steps; ++k) {
        tau = static_cast<double>(k) * dt;
        x = rk4_step(v, tau, x, dt);
        observe(static_cast<double>(k + 1) * dt, x);
    }
    tau = static_cast<double>(full_steps) * dt;
    const double rest = tau_end - tau;
    if (rest > 1e-12 * tau_end) {
        x = rk4_step(v, tau, x, rest);
        observe(tau_end, x);
    }
    return x;
}

}  // namespace

Trajectory integrate_trajectory(const OnticState& s, double x0, double g, double tau_end, double dt,
                                const EvolutionMode& mode, GuidanceFn guidance) {
    check_steps(tau_end, dt);
    Trajectory t;
    t.dt = dt;
    t.samples.reserve(static_cast<std::size_t>(tau_end / dt) + 2);
    t.samples.push_back({0.0, x0});
    integrate(GuidedMotion{s, g, mode, guidance}, x0, tau_end, dt,
              [&](double tau, double x) { t.samples.push_back({tau, x}); });
    if (tau_end > 0.0) t.samples.back().tau = tau_end;
    return t;
}

double transport(const OnticState& s, double x0, double g, double tau_end, double dt,
                 const EvolutionMode& mode, GuidanceFn guidance) {
    return integrate(GuidedMotion{s, g, mode, guidance}, x0, tau_end, dt, [](double, double) {});
}

std::vector<double> transport_ensemble(const OnticState& s, std::span<const double> x0, double g,
                                       double tau_end, double dt, const EvolutionMode& mode,
                                       GuidanceFn guidance) {
    check_steps(tau_end, dt);
    std::vector<double> out(x0.size());
    const auto n = static_cast<std::ptrdiff_t>(x0.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = transport(s, x0[k], g, tau_end, dt, mode, guidance);
    return out;
}

namespace serial {
std::vector<double> transport_ensemble(const OnticState& s, std::span<const double> x0, double g,
                                       double tau_end, double dt, const EvolutionMode& mode,
                                       GuidanceFn guidance) {
    std::vector<double> out;
    out.reserve(x0.size());
    for (double x : x0) out.push_back(transport(s, x, g, tau_end, dt, mode, guidance));
    return out;
}
}  // namespace serial

}  // namespace relbell
