#include "relbell/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relbell {

Direction::Direction(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw std::invalid_argument("direction angles must be finite");
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::invalid_argument("polar angle must lie in [0, pi]");
    phi = std::fmod(phi, 2.0 * std::numbers::pi);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    theta_ = theta;
    phi_ = phi;
}

Direction Direction::in_xz_plane(double angle) {
    angle = std::fmod(angle, 2.0 * std::numbers::pi);
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    if (angle <= std::numbers::pi) return {angle, 0.0};
    return {2.0 * std::numbers::pi - angle, std::numbers::pi};
}

std::array<double, 3> Direction::cartesian() const {
    const double st = std::sin(theta_);
    return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
}

double angle_between(const Direction& a, const Direction& b) {
    const auto u = a.cartesian();
    const auto v = b.cartesian();
    const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

Spinor eigenspinor(const Direction& n, SpinLabel s) {
    const double c = std::cos(0.5 * n.theta());
    const double sn = std::sin(0.5 * n.theta());
    const complex phase = std::polar(1.0, n.phi());
    if (s == SpinLabel::plus) return {complex(c, 0.0), phase * sn};
    return {-std::conj(phase) * sn, complex(c, 0.0)};
}

Spinor apply_pauli(const Direction& n, const Spinor& v) {
    const auto [nx, ny, nz] = n.cartesian();
    // sigma.n = [[nz, nx - i ny], [nx + i ny, -nz]]
    const complex off(nx, -ny);
    return {nz * v[0] + off * v[1], std::conj(off) * v[0] - nz * v[1]};
}

SingletDecomposition singlet_coefficients(const std::array<Spinor, 2>& rocket_basis,
                                          const std::array<Spinor, 2>& earth_basis) {
    // |singlet> = (|+z>|-z> - |-z>|+z>)/sqrt(2); <a|<b|singlet> = (a0* b1* - a1* b0*)/sqrt(2)
    SingletDecomposition d;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Spinor& a = rocket_basis[i];
            const Spinor& b = earth_basis[j];
            d.coefficient[i][j] =
                (std::conj(a[0]) * std::conj(b[1]) - std::conj(a[1]) * std::conj(b[0])) / std::numbers::sqrt2;
        }
    }
    return d;
}

SingletDecomposition singlet_coefficients(const Direction& r, const Direction& e) {
    return singlet_coefficients({eigenspinor(r, SpinLabel::plus), eigenspinor(r, SpinLabel::minus)},
                                {eigenspinor(e, SpinLabel::plus), eigenspinor(e, SpinLabel::minus)});
}

double correlation_exact(const SingletDecomposition& d) {
    double sum = 0.0;
    for (SpinLabel i1 : kSpinLabels)
        for (SpinLabel i2 : kSpinLabels) sum += sign(i1) * sign(i2) * d.weight(i1, i2);
    return sum;
}

double correlation_exact(const Direction& r, const Direction& e) {
    return correlation_exact(singlet_coefficients(r, e));
}

}  // namespace relbell
