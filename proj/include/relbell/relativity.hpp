#pragma once

#include <functional>
#include <variant>
#include <vector>

namespace relbell {

/// One smooth piece of a speed profile, in units of c, over local time [0, duration].
struct SpeedSegment {
    enum class Shape { constant, linear, custom };

    double duration = 0.0;
    Shape shape = Shape::constant;
    double v_begin = 0.0;  // constant and linear shapes
    double v_end = 0.0;    // linear shape
    std::function<double(double)> custom;

    static SpeedSegment constant(double duration, double v);
    static SpeedSegment linear(double duration, double v_begin, double v_end);
    static SpeedSegment from_function(double duration, std::function<double(double)> v);

    double speed(double local_t) const;
};

/// Piecewise-smooth speed profile v(t) over coordinate time [0, T].
class Worldline {
public:
    Worldline() = default;
    /// Throws std::invalid_argument for empty profiles, negative durations, zero
    /// total time, or constant/linear pieces reaching v >= 1 or v < 0.
    explicit Worldline(std::vector<SpeedSegment> segments);

    static Worldline at_rest(double total_time);
    static Worldline constant_speed(double v, double total_time);

    const std::vector<SpeedSegment>& segments() const { return segments_; }
    double total_time() const;
    /// Speed at coordinate time t; piece boundaries belong to the later piece.
    double speed(double t) const;

private:
    std::vector<SpeedSegment> segments_;
};

/// Symmetric trapezoid: linear ramp 0 -> v_max over `ramp`, cruise, linear ramp back.
/// Throws std::invalid_argument unless 0 < v_max < 1, ramp, cruise >= 0, and not both zero.
Worldline make_round_trip(double v_max, double ramp, double cruise);

/// Integral of sqrt(1 - v^2) dt over the worldline. Constant pieces are exact;
/// other pieces use adaptive Simpson quadrature with absolute tolerance 1e-10.
/// Throws std::domain_error if any evaluated speed is >= 1 or negative.
double proper_time(const Worldline& w);

struct RocketRoundTrip {
    Worldline earth;
    Worldline rocket;
};

/// Flat spacetime with one periodic spatial direction; the traveller circles it once.
struct Cylinder {
    double circumference = 0.0;
    double speed = 0.0;
};

using Scenario = std::variant<RocketRoundTrip, Cylinder>;

RocketRoundTrip make_rocket_scenario(Worldline rocket);

struct ProperTimes {
    double earth = 0.0;
    double rocket = 0.0;

    double ratio() const { return rocket / earth; }
};

/// Throws std::invalid_argument for malformed scenarios (mismatched durations,
/// non-positive circumference, speed outside (0, 1)).
ProperTimes scenario_proper_times(const Scenario& s);

}  // namespace relbell
