#include "relbell/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace relbell {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class FftPlan {
public:
    FftPlan(std::vector<complex>& in, std::vector<complex>& out, int direction) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(in.size()), reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()), direction, FFTW_ESTIMATE);
        if (plan_ == nullptr) throw std::runtime_error("fftw planning failed");
    }
    ~FftPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

std::vector<complex> forward(const std::vector<complex>& psi) {
    std::vector<complex> in = psi;
    std::vector<complex> out(psi.size());
    FftPlan plan(in, out, FFTW_FORWARD);
    plan.execute();
    return out;
}

std::vector<complex> backward(const std::vector<complex>& phi) {
    std::vector<complex> in = phi;
    std::vector<complex> out(phi.size());
    FftPlan plan(in, out, FFTW_BACKWARD);
    plan.execute();
    const double scale = 1.0 / static_cast<double>(phi.size());
    for (auto& v : out) v *= scale;
    return out;
}

double wavenumber(const GridSpec& grid, std::size_t k) {
    const auto n = static_cast<std::ptrdiff_t>(grid.n);
    auto kk = static_cast<std::ptrdiff_t>(k);
    if (kk >= n / 2) kk -= n;
    return 2.0 * std::numbers::pi * static_cast<double>(kk) / grid.length();
}

}  // namespace

void GridSpec::validate() const {
    if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("grid size must be a power of two");
    if (!(x_max > x_min)) throw std::invalid_argument("grid domain must have x_max > x_min");
}

double GridState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitude) s += std::norm(a);
    return s * grid.dx();
}

std::vector<double> GridState::density() const {
    std::vector<double> d(amplitude.size());
    std::transform(amplitude.begin(), amplitude.end(), d.begin(), [](complex a) { return std::norm(a); });
    return d;
}

double GridState::mean_momentum() const {
    const auto phi = forward(amplitude);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const double w = std::norm(phi[k]);
        num += wavenumber(grid, k) * w;
        den += w;
    }
    return den > 0.0 ? num / den : 0.0;
}

double GridState::edge_amplitude() const {
    return std::max(std::abs(amplitude.front()), std::abs(amplitude.back()));
}

GridState sample_packet(const GaussianPacket& p, const GridSpec& grid) {
    grid.validate();
    if (p.tau != 0.0) throw std::invalid_argument("only fresh packets can be sampled onto a grid");
    GridState s;
    s.grid = grid;
    s.amplitude.resize(grid.n);
    const double amp = std::pow(2.0 * std::numbers::pi * p.sigma0 * p.sigma0, -0.25);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double u = grid.x(j) - p.center;
        s.amplitude[j] = amp * std::exp(-u * u / (4.0 * p.sigma0 * p.sigma0)) * std::polar(1.0, p.momentum * u);
    }
    return s;
}

GridState sample_function(const std::function<complex(double)>& psi, const GridSpec& grid) {
    grid.validate();
    GridState s;
    s.grid = grid;
    s.amplitude.resize(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) s.amplitude[j] = psi(grid.x(j));
    const double nrm = s.norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("sampled function has zero norm");
    const double scale = 1.0 / std::sqrt(nrm);
    for (auto& a : s.amplitude) a *= scale;
    return s;
}

GridState grid_evolve(const GridState& state, SpinLabel s, double g, double tau, double mass) {
    state.grid.validate();
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("proper time step must be non-negative");
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (state.amplitude.size() != state.grid.n) throw std::invalid_argument("amplitude count does not match grid");
    if (state.edge_amplitude() >= 1e-10) throw std::invalid_argument("packet is not supported away from the grid edges");
    if (tau == 0.0) return state;

    auto phi = forward(state.amplitude);
    const double drift = (std::abs(state.mean_momentum() / mass) + std::abs(g)) * tau;
    if (drift > state.grid.length() / 4.0)
        throw std::invalid_argument("predicted drift would alias around the periodic grid");

    const double i = sign(s);
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const double p = wavenumber(state.grid, k);
        phi[k] *= std::polar(1.0, -(p * p / (2.0 * mass) + i * g * p) * tau);
    }
    GridState out;
    out.grid = state.grid;
    out.amplitude = backward(phi);
    out.tau = state.tau + tau;
    return out;
}

std::vector<double> grid_phase_gradient(const GridState& state) {
    auto phi = forward(state.amplitude);
    for (std::size_t k = 0; k < phi.size(); ++k) phi[k] *= complex(0.0, wavenumber(state.grid, k));
    const auto dpsi = backward(phi);
    std::vector<double> grad(state.amplitude.size());
    for (std::size_t j = 0; j < grad.size(); ++j) {
        const complex a = state.amplitude[j];
        grad[j] = std::imag(std::conj(a) * dpsi[j]) / std::norm(a);
    }
    return grad;
}

}  // namespace relbell
