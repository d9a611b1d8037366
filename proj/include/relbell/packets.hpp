#pragma once

#include "relbell/spin.hpp"

#include <string_view>

namespace relbell {

enum class Wing { rocket, earth };

std::string_view to_string(Wing w);

/// How the wing-local Hamiltonian acts on the packet.
///  - translation_only: g p sigma only; the kinetic term is dropped.
///  - full_von_neumann: p^2/2m + g p sigma.
///  - impulsive_kick:   a momentum kick of +-kick at tau = 0+, then free flight.
class EvolutionMode {
public:
    enum class Kind { translation_only, full_von_neumann, impulsive_kick };

    static EvolutionMode translation_only() { return EvolutionMode(Kind::translation_only, 0.0); }
    static EvolutionMode full_von_neumann() { return EvolutionMode(Kind::full_von_neumann, 0.0); }
    /// Throws std::invalid_argument unless kick is finite and positive.
    static EvolutionMode impulsive_kick(double kick);

    Kind kind() const { return kind_; }
    double kick() const { return kick_; }
    bool has_kinetic_term() const { return kind_ != Kind::translation_only; }

    friend bool operator==(const EvolutionMode&, const EvolutionMode&) = default;

private:
    EvolutionMode(Kind k, double kick) : kind_(k), kick_(kick) {}
    Kind kind_ = Kind::translation_only;
    double kick_ = 0.0;
};

std::string_view to_string(EvolutionMode::Kind k);
/// Parses "translation_only", "full_von_neumann" or "impulsive_kick".
EvolutionMode::Kind parse_mode_kind(std::string_view name);

/// One-dimensional Gaussian packet along a wing's measurement axis.
///
/// The packet remembers its preparation width and how long it has evolved under
/// the kinetic term, so evolution composes exactly:
/// evolve(evolve(p, t1), t2) == evolve(p, t1 + t2).
///
/// Initial amplitude: (2 pi sigma0^2)^{-1/4} exp(-(x - x0)^2 / (4 sigma0^2) + i p0 (x - x0)).
struct GaussianPacket {
    double center = 0.0;        ///< current center of R^2
    double sigma0 = 1.0;        ///< standard deviation of R^2 at preparation
    double momentum = 0.0;      ///< mean momentum, including an applied kick
    double mass = 1.0;
    double tau = 0.0;           ///< elapsed proper time
    double spread_time = 0.0;   ///< proper time spent under the kinetic term
    double displacement = 0.0;  ///< spin-dependent part of the center shift
    bool kicked = false;

    /// Current standard deviation of R^2.
    double sigma() const;
    /// Dimensionless spreading parameter spread_time / (2 m sigma0^2).
    double spread_ratio() const;
};

/// Fresh packet at tau = 0. Throws std::invalid_argument unless sigma0 > 0 and mass > 0.
GaussianPacket make_packet(double center, double sigma0, double p0 = 0.0, double mass = 1.0);

/// Closed-form evolution for tau units of the wing's proper time with spin label s
/// and coupling g. Throws std::invalid_argument for negative or non-finite tau.
GaussianPacket evolve_packet(const GaussianPacket& p, SpinLabel s, double g, double tau,
                             const EvolutionMode& mode);

/// R^2(x) of the packet in its current state.
double density(const GaussianPacket& p, double x);
/// Cumulative distribution of R^2.
double cumulative(const GaussianPacket& p, double x);

/// dS/dx of the current packet: momentum plus the linear chirp built up by spreading.
double phase_gradient(const GaussianPacket& p, double x);

/// Bhattacharyya coefficient integral sqrt(R_a^2 R_b^2) dx, in [0, 1].
double packet_overlap(const GaussianPacket& a, const GaussianPacket& b);

/// Hidden-variable wave part of one particle: packet plus definite spin along the wing axis.
struct OnticState {
    GaussianPacket packet;
    SpinLabel spin = SpinLabel::plus;
    Direction axis;
    Wing wing = Wing::rocket;
};

}  // namespace relbell
