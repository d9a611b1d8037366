#pragma once

#include "relbell/packets.hpp"

#include <functional>
#include <vector>

namespace relbell {

/// Periodic uniform grid: x_j = x_min + j (x_max - x_min) / n, j = 0..n-1.
struct GridSpec {
    double x_min = -40.0;
    double x_max = 40.0;
    std::size_t n = 4096;

    double dx() const { return (x_max - x_min) / static_cast<double>(n); }
    double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }
    double length() const { return x_max - x_min; }
    /// Throws std::invalid_argument unless n is a power of two >= 2 and x_max > x_min.
    void validate() const;
};

/// Sampled wavefunction on a GridSpec, used as the numeric reference for the
/// closed-form packet propagators.
struct GridState {
    GridSpec grid;
    std::vector<complex> amplitude;
    double tau = 0.0;

    /// Discrete norm sum |psi|^2 dx.
    double norm() const;
    std::vector<double> density() const;
    /// Mean momentum computed spectrally.
    double mean_momentum() const;
    /// Largest |psi| of the two edge points.
    double edge_amplitude() const;
};

/// Samples a fresh (tau = 0) Gaussian packet amplitude including its momentum phase.
GridState sample_packet(const GaussianPacket& p, const GridSpec& grid = {});

/// Samples an arbitrary amplitude and normalizes it.
GridState sample_function(const std::function<complex(double)>& psi, const GridSpec& grid = {});

/// Exact spectral step under p^2/2m + i g p for proper time tau.
///
/// Throws std::invalid_argument if tau < 0, if the packet touches the grid
/// edges (|psi| >= 1e-10), or if the predicted drift (|<p>|/m + |g|) tau exceeds
/// a quarter of the box.
GridState grid_evolve(const GridState& state, SpinLabel s, double g, double tau, double mass);

/// Im(psi* dpsi/dx) / |psi|^2 on the grid, using a spectral derivative.
std::vector<double> grid_phase_gradient(const GridState& state);

}  // namespace relbell
