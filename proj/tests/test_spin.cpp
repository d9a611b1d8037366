#include "relbell/spin.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace relbell;

namespace {

using std::numbers::pi;

double residual(const Direction& n, SpinLabel s, const Spinor& v) {
    const auto hv = apply_pauli(n, v);
    return std::sqrt(std::norm(hv[0] - double(sign(s)) * v[0]) + std::norm(hv[1] - double(sign(s)) * v[1]));
}

// Independent route: numeric eigen-decomposition of sigma.n.
Spinor eigen_oracle(const Direction& n, SpinLabel s) {
    const auto [nx, ny, nz] = n.cartesian();
    Eigen::Matrix2cd h;
    h << complex(nz, 0), complex(nx, -ny), complex(nx, ny), complex(-nz, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h);
    const int col = s == SpinLabel::plus ? 1 : 0;  // eigenvalues ascending
    Eigen::Vector2cd v = solver.eigenvectors().col(col);
    // Fix the gauge used by eigenspinor: the component that is real and non-negative.
    const int real_slot = s == SpinLabel::plus ? 0 : 1;
    if (std::abs(v(real_slot)) > 1e-14) v *= std::polar(1.0, -std::arg(v(real_slot)));
    return {v(0), v(1)};
}

Direction random_direction(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return Direction(std::acos(1.0 - 2.0 * u(rng)), 2.0 * pi * u(rng));
}

}  // namespace

TEST_CASE("direction validation and cartesian norm") {
    CHECK_THROWS_AS(Direction(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Direction(pi + 1e-9, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Direction(NAN, 0.0), std::invalid_argument);
    const Direction d(1.0, -0.5);
    CHECK(d.phi() == doctest::Approx(2 * pi - 0.5));
    const auto v = d.cartesian();
    CHECK(std::abs(std::hypot(v[0], v[1], v[2]) - 1.0) < 1e-12);
    CHECK(angle_between(Direction::in_xz_plane(0.75 * pi), Direction::z()) == doctest::Approx(0.75 * pi));
    CHECK(angle_between(Direction::in_xz_plane(1.5 * pi), Direction::z()) == doctest::Approx(0.5 * pi));
}

TEST_CASE("eigenspinor basis examples") {
    const auto z = eigenspinor(Direction::z(), SpinLabel::plus);
    CHECK(z[0] == complex(1, 0));
    CHECK(std::abs(z[1]) == 0.0);

    const auto x = eigenspinor(Direction::x(), SpinLabel::plus);
    CHECK(std::abs(x[0] - complex(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(x[1] - complex(1 / std::sqrt(2.0), 0)) < 1e-15);

    // Frozen from a numeric eigen-decomposition (numpy eigh) of sigma.n at theta = pi/3, phi = pi/4.
    const Direction n(pi / 3, pi / 4);
    const auto m = eigenspinor(n, SpinLabel::minus);
    CHECK(std::abs(m[0] - complex(-0.3535533905932738, 0.35355339059327373)) < 1e-12);
    CHECK(std::abs(m[1] - complex(0.8660254037844386, 0.0)) < 1e-12);
    const auto oracle = eigen_oracle(n, SpinLabel::minus);
    CHECK(std::abs(m[0] - oracle[0]) < 1e-12);
    CHECK(std::abs(m[1] - oracle[1]) < 1e-12);
}

TEST_CASE("eigenspinor residual and agreement with the eigen solver on random directions") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 500; ++k) {
        const auto n = random_direction(rng);
        for (SpinLabel s : kSpinLabels) {
            const auto v = eigenspinor(n, s);
            CHECK(std::abs(std::norm(v[0]) + std::norm(v[1]) - 1.0) < 1e-12);
            CHECK(residual(n, s, v) < 1e-12);
            // The solver's vector agrees up to a phase: |<oracle|v>| = 1.
            const auto o = eigen_oracle(n, s);
            CHECK(std::abs(std::abs(std::conj(o[0]) * v[0] + std::conj(o[1]) * v[1]) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("singlet weights on fixed geometries") {
    SUBCASE("same axis gives perfect anticorrelation") {
        const auto d = singlet_coefficients(Direction::z(), Direction::z());
        CHECK(d.weight(SpinLabel::plus, SpinLabel::plus) < 1e-30);
        CHECK(d.weight(SpinLabel::minus, SpinLabel::minus) < 1e-30);
        CHECK(d.weight(SpinLabel::plus, SpinLabel::minus) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(d.weight(SpinLabel::minus, SpinLabel::plus) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("perpendicular axes: every weight 1/4, computed via the eigen-solver basis") {
        const Direction r(pi / 3, 0.4);
        // e perpendicular to r
        const Direction e(pi / 3 + pi / 2, 0.4);
        REQUIRE(angle_between(r, e) == doctest::Approx(pi / 2));
        const auto oracle = singlet_coefficients({eigen_oracle(r, SpinLabel::plus), eigen_oracle(r, SpinLabel::minus)},
                                                 {eigen_oracle(e, SpinLabel::plus), eigen_oracle(e, SpinLabel::minus)});
        const auto d = singlet_coefficients(r, e);
        for (SpinLabel a : kSpinLabels)
            for (SpinLabel b : kSpinLabels) {
                CHECK(std::abs(oracle.weight(a, b) - 0.25) < 1e-12);
                CHECK(std::abs(d.weight(a, b) - 0.25) < 1e-12);
            }
    }
}

TEST_CASE("correlation_exact examples") {
    CHECK(correlation_exact(Direction::z(), Direction::z()) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(correlation_exact(Direction::z(), Direction::x())) < 1e-15);
    // enumeration of the four weights at pi/4
    CHECK(std::abs(correlation_exact(Direction::z(), Direction::in_xz_plane(pi / 4)) - (-0.7071067811865)) < 1e-12);
}

TEST_CASE("property: weights are a distribution with the singlet symmetry and -cos correlation") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 1000; ++k) {
        const auto r = random_direction(rng);
        const auto e = random_direction(rng);
        const auto d = singlet_coefficients(r, e);
        const double th = angle_between(r, e);
        double total = 0.0;
        for (SpinLabel a : kSpinLabels)
            for (SpinLabel b : kSpinLabels) {
                CHECK(d.weight(a, b) >= 0.0);
                total += d.weight(a, b);
            }
        CHECK(std::abs(total - 1.0) < 1e-12);
        CHECK(std::abs(d.weight(SpinLabel::plus, SpinLabel::plus) - d.weight(SpinLabel::minus, SpinLabel::minus)) < 1e-12);
        CHECK(std::abs(d.weight(SpinLabel::plus, SpinLabel::minus) - d.weight(SpinLabel::minus, SpinLabel::plus)) < 1e-12);
        CHECK(std::abs(d.weight(SpinLabel::plus, SpinLabel::plus) - 0.5 * std::pow(std::sin(th / 2), 2)) < 1e-12);
        CHECK(std::abs(correlation_exact(d) + std::cos(th)) < 1e-12);
    }
}

TEST_CASE("property: weights do not depend on the basis phase convention") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ph(0.0, 2 * pi);
    for (int k = 0; k < 300; ++k) {
        const auto r = random_direction(rng);
        const auto e = random_direction(rng);
        std::array<Spinor, 2> rb{eigenspinor(r, SpinLabel::plus), eigenspinor(r, SpinLabel::minus)};
        std::array<Spinor, 2> eb{eigenspinor(e, SpinLabel::plus), eigenspinor(e, SpinLabel::minus)};
        for (auto* basis : {&rb, &eb})
            for (auto& v : *basis) {
                const auto u = std::polar(1.0, ph(rng));
                v = {u * v[0], u * v[1]};
            }
        const auto ref = singlet_coefficients(r, e);
        const auto rotated = singlet_coefficients(rb, eb);
        for (SpinLabel a : kSpinLabels)
            for (SpinLabel b : kSpinLabels) CHECK(std::abs(ref.weight(a, b) - rotated.weight(a, b)) < 1e-12);
    }
}
