#pragma once

#include "relbell/packets.hpp"

#include <span>
#include <vector>

namespace relbell {

/// Velocity of the particle at position x, guided by its own ontic packet.
///
///   full_von_neumann: dS/dx / m + i g   (current of p^2/2m + i g p)
///   translation_only: i g               (current of i g p alone)
///   impulsive_kick:   dS/dx / m         (free flight after the kick)
///
/// The packet in `s` must already be evolved to the proper time of interest. An
/// impulsive packet that has not been kicked yet (tau = 0) is guided by its
/// post-kick phase, since the kick acts at tau = 0+.
double guidance_velocity(const OnticState& s, double x, double g, const EvolutionMode& mode);

using GuidanceFn = double (*)(const OnticState&, double, double, const EvolutionMode&);

struct TrajectorySample {
    double tau;
    double x;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double dt = 0.0;

    double final_position() const { return samples.back().x; }
};

/// Classic RK4 integration of dx/dtau = guidance_velocity along the packet's own
/// evolution, from tau = 0 to tau_end. The last step is shortened so the final
/// sample lands on tau_end exactly.
///
/// Throws std::invalid_argument if dt <= 0, tau_end < 0, or dt > tau_end > 0.
Trajectory integrate_trajectory(const OnticState& s, double x0, double g, double tau_end, double dt,
                                const EvolutionMode& mode, GuidanceFn guidance = guidance_velocity);

/// Final position only; same stepping as integrate_trajectory without storing samples.
double transport(const OnticState& s, double x0, double g, double tau_end, double dt,
                 const EvolutionMode& mode, GuidanceFn guidance = guidance_velocity);

/// Transports many initial positions through the same packet (OpenMP across positions).
std::vector<double> transport_ensemble(const OnticState& s, std::span<const double> x0, double g,
                                       double tau_end, double dt, const EvolutionMode& mode,
                                       GuidanceFn guidance = guidance_velocity);

namespace serial {
/// Single-threaded reference for transport_ensemble.
std::vector<double> transport_ensemble(const OnticState& s, std::span<const double> x0, double g,
                                       double tau_end, double dt, const EvolutionMode& mode,
                                       GuidanceFn guidance = guidance_velocity);
}  // namespace serial

}  // namespace relbell
