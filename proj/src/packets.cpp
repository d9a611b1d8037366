#include "relbell/packets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace relbell {

std::string_view to_string(Wing w) { return w == Wing::rocket ? "rocket" : "earth"; }

EvolutionMode EvolutionMode::impulsive_kick(double kick) {
    if (!std::isfinite(kick) || kick <= 0.0)
        throw std::invalid_argument("impulsive kick magnitude must be finite and positive");
    return EvolutionMode(Kind::impulsive_kick, kick);
}

std::string_view to_string(EvolutionMode::Kind k) {
    switch (k) {
        case EvolutionMode::Kind::translation_only: return "translation_only";
        case EvolutionMode::Kind::full_von_neumann: return "full_von_neumann";
        case EvolutionMode::Kind::impulsive_kick: return "impulsive_kick";
    }
    return "unknown";
}

EvolutionMode::Kind parse_mode_kind(std::string_view name) {
    if (name == "translation_only") return EvolutionMode::Kind::translation_only;
    if (name == "full_von_neumann") return EvolutionMode::Kind::full_von_neumann;
    if (name == "impulsive_kick") return EvolutionMode::Kind::impulsive_kick;
    throw std::invalid_argument("unknown evolution mode '" + std::string(name) + "'");
}

double GaussianPacket::spread_ratio() const { return spread_time / (2.0 * mass * sigma0 * sigma0); }

double GaussianPacket::sigma() const {
    const double a = spread_ratio();
    return sigma0 * std::sqrt(1.0 + a * a);
}

GaussianPacket make_packet(double center, double sigma0, double p0, double mass) {
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw std::invalid_argument("packet width must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("packet mass must be positive");
    if (!std::isfinite(center) || !std::isfinite(p0)) throw std::invalid_argument("packet center and momentum must be finite");
    GaussianPacket p;
    p.center = center;
    p.sigma0 = sigma0;
    p.momentum = p0;
    p.mass = mass;
    return p;
}

GaussianPacket evolve_packet(const GaussianPacket& p, SpinLabel s, double g, double tau,
                             const EvolutionMode& mode) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("proper time step must be finite and non-negative");
    if (tau == 0.0) return p;

    GaussianPacket out = p;
    const double i = sign(s);
    switch (mode.kind()) {
        case EvolutionMode::Kind::translation_only:
            out.center += i * g * tau;
            out.displacement += i * g * tau;
            break;
        case EvolutionMode::Kind::full_von_neumann:
            // p^2/2m + i g p is diagonal in momentum: free spreading plus rigid drift i g.
            out.center += (p.momentum / p.mass + i * g) * tau;
            out.displacement += i * g * tau;
            out.spread_time += tau;
            break;
        case EvolutionMode::Kind::impulsive_kick:
            if (!out.kicked) {
                out.momentum += i * mode.kick();
                out.kicked = true;
            }
            out.center += out.momentum / p.mass * tau;
            out.displacement += i * mode.kick() * tau / p.mass;
            out.spread_time += tau;
            break;
    }
    out.tau += tau;
    return out;
}

double density(const GaussianPacket& p, double x) {
    const double s = p.sigma();
    const double z = (x - p.center) / s;
    return std::exp(-0.5 * z * z) / (s * std::sqrt(2.0 * std::numbers::pi));
}

double cumulative(const GaussianPacket& p, double x) {
    return 0.5 * std::erfc(-(x - p.center) / (p.sigma() * std::numbers::sqrt2));
}

double phase_gradient(const GaussianPacket& p, double x) {
    const double a = p.spread_ratio();
    return p.momentum + a * (x - p.center) / (2.0 * p.sigma0 * p.sigma0 * (1.0 + a * a));
}

double packet_overlap(const GaussianPacket& a, const GaussianPacket& b) {
    const double va = a.sigma() * a.sigma();
    const double vb = b.sigma() * b.sigma();
    const double d = a.center - b.center;
    return std::sqrt(2.0 * a.sigma() * b.sigma() / (va + vb)) * std::exp(-d * d / (4.0 * (va + vb)));
}

}  // namespace relbell
