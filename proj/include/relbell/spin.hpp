#pragma once

#include <array>
#include <complex>

namespace relbell {

using complex = std::complex<double>;

/// Unit vector on the Bloch sphere, stored as polar angle and azimuth (radians).
class Direction {
public:
    Direction() = default;
    /// Throws std::invalid_argument if theta is outside [0, pi] or either angle is not finite.
    /// The azimuth is wrapped into [0, 2pi).
    Direction(double theta, double phi);

    static Direction z() { return {0.0, 0.0}; }
    static Direction x() { return {kHalfPi, 0.0}; }
    /// Direction in the x-z plane at the given angle from +z. Angles past pi fold onto phi = pi.
    static Direction in_xz_plane(double angle);

    double theta() const { return theta_; }
    double phi() const { return phi_; }
    std::array<double, 3> cartesian() const;

    /// Angle between two directions in [0, pi].
    friend double angle_between(const Direction& a, const Direction& b);

private:
    static constexpr double kHalfPi = 1.57079632679489661923;
    double theta_ = 0.0;
    double phi_ = 0.0;
};

enum class SpinLabel : int { minus = -1, plus = +1 };

constexpr int sign(SpinLabel s) { return static_cast<int>(s); }
constexpr SpinLabel flip(SpinLabel s) { return s == SpinLabel::plus ? SpinLabel::minus : SpinLabel::plus; }
constexpr SpinLabel spin_from_sign(int s) { return s >= 0 ? SpinLabel::plus : SpinLabel::minus; }
constexpr std::size_t index_of(SpinLabel s) { return s == SpinLabel::plus ? 0 : 1; }
inline constexpr std::array<SpinLabel, 2> kSpinLabels{SpinLabel::plus, SpinLabel::minus};

using Spinor = std::array<complex, 2>;

/// Eigenstate of sigma.n with eigenvalue sign(s), Bloch-sphere phase convention:
///   |+>_n = (cos(theta/2), e^{i phi} sin(theta/2))
///   |->_n = (-e^{-i phi} sin(theta/2), cos(theta/2))
Spinor eigenspinor(const Direction& n, SpinLabel s);

/// (sigma.n) applied to a spinor.
Spinor apply_pauli(const Direction& n, const Spinor& v);

/// Expansion of the singlet state in the product eigenbasis of the two future
/// measurement directions. Indexed [index_of(i1)][index_of(i2)].
struct SingletDecomposition {
    std::array<std::array<complex, 2>, 2> coefficient{};

    complex c(SpinLabel i1, SpinLabel i2) const { return coefficient[index_of(i1)][index_of(i2)]; }
    double weight(SpinLabel i1, SpinLabel i2) const { return std::norm(c(i1, i2)); }
};

SingletDecomposition singlet_coefficients(const Direction& r, const Direction& e);

/// Same decomposition with caller-supplied basis spinors for each wing; used to
/// check that the ensemble weights do not depend on the basis phase convention.
SingletDecomposition singlet_coefficients(const std::array<Spinor, 2>& rocket_basis,
                                          const std::array<Spinor, 2>& earth_basis);

/// Sum over i1 i2 of i1*i2*w(i1,i2); equals -cos of the angle between r and e.
double correlation_exact(const Direction& r, const Direction& e);
double correlation_exact(const SingletDecomposition& d);

}  // namespace relbell
