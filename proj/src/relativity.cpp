#include "relbell/relativity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relbell {

namespace {

void check_speed_value(double v) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("speed must be finite and non-negative");
    if (v >= 1.0) throw std::invalid_argument("speed must be below c");
}

double dilation(double v) {
    if (!std::isfinite(v) || v < 0.0) throw std::domain_error("speed must be finite and non-negative");
    if (v >= 1.0) throw std::domain_error("speed reached c");
    return std::sqrt((1.0 - v) * (1.0 + v));
}

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 48);
}

}  // namespace

SpeedSegment SpeedSegment::constant(double duration, double v) {
    SpeedSegment s;
    s.duration = duration;
    s.shape = Shape::constant;
    s.v_begin = v;
    s.v_end = v;
    return s;
}

SpeedSegment SpeedSegment::linear(double duration, double v_begin, double v_end) {
    SpeedSegment s;
    s.duration = duration;
    s.shape = Shape::linear;
    s.v_begin = v_begin;
    s.v_end = v_end;
    return s;
}

SpeedSegment SpeedSegment::from_function(double duration, std::function<double(double)> v) {
    SpeedSegment s;
    s.duration = duration;
    s.shape = Shape::custom;
    s.custom = std::move(v);
    return s;
}

double SpeedSegment::speed(double local_t) const {
    switch (shape) {
        case Shape::constant: return v_begin;
        case Shape::linear: {
            if (!(duration > 0.0)) return v_begin;
            // convex form: stays within [v_begin, v_end] under rounding
            const double u = std::clamp(local_t / duration, 0.0, 1.0);
            return (1.0 - u) * v_begin + u * v_end;
        }
        case Shape::custom: return custom(local_t);
    }
    return 0.0;
}

Worldline::Worldline(std::vector<SpeedSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw std::invalid_argument("worldline needs at least one segment");
    for (const auto& s : segments_) {
        if (!(s.duration >= 0.0) || !std::isfinite(s.duration))
            throw std::invalid_argument("segment durations must be non-negative");
        if (s.shape == SpeedSegment::Shape::custom) {
            if (!s.custom) throw std::invalid_argument("custom segment needs a speed function");
            continue;
        }
        check_speed_value(s.v_begin);
        check_speed_value(s.v_end);
    }
    if (!(total_time() > 0.0)) throw std::invalid_argument("worldline must have positive duration");
}

Worldline Worldline::at_rest(double total_time) { return Worldline({SpeedSegment::constant(total_time, 0.0)}); }

Worldline Worldline::constant_speed(double v, double total_time) {
    return Worldline({SpeedSegment::constant(total_time, v)});
}

double Worldline::total_time() const {
    double t = 0.0;
    for (const auto& s : segments_) t += s.duration;
    return t;
}

double Worldline::speed(double t) const {
    double start = 0.0;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        const auto& s = segments_[k];
        if (t < start + s.duration || k + 1 == segments_.size()) return s.speed(std::min(t - start, s.duration));
        start += s.duration;
    }
    return 0.0;
}

Worldline make_round_trip(double v_max, double ramp, double cruise) {
    if (!(v_max > 0.0) || !(v_max < 1.0)) throw std::invalid_argument("cruise speed must lie in (0, 1)");
    if (!(ramp >= 0.0) || !(cruise >= 0.0)) throw std::invalid_argument("ramp and cruise durations must be non-negative");
    if (ramp == 0.0 && cruise == 0.0) throw std::invalid_argument("round trip needs a ramp or a cruise phase");
    std::vector<SpeedSegment> pieces;
    if (ramp > 0.0) pieces.push_back(SpeedSegment::linear(ramp, 0.0, v_max));
    if (cruise > 0.0) pieces.push_back(SpeedSegment::constant(cruise, v_max));
    if (ramp > 0.0) pieces.push_back(SpeedSegment::linear(ramp, v_max, 0.0));
    return Worldline(std::move(pieces));
}

double proper_time(const Worldline& w) {
    const auto& segs = w.segments();
    double total = 0.0;
    const double tol = 1e-10 / static_cast<double>(segs.size());
    for (const auto& s : segs) {
        if (s.duration == 0.0) continue;
        if (s.shape == SpeedSegment::Shape::constant) {
            total += s.duration * dilation(s.v_begin);
            continue;
        }
        total += integrate([&s](double t) { return dilation(s.speed(t)); }, 0.0, s.duration, tol);
    }
    return total;
}

RocketRoundTrip make_rocket_scenario(Worldline rocket) {
    RocketRoundTrip s;
    s.earth = Worldline::at_rest(rocket.total_time());
    s.rocket = std::move(rocket);
    return s;
}

ProperTimes scenario_proper_times(const Scenario& s) {
    if (const auto* trip = std::get_if<RocketRoundTrip>(&s)) {
        const double te = trip->earth.total_time();
        const double tr = trip->rocket.total_time();
        if (std::abs(te - tr) > 1e-12 * std::max(te, tr))
            throw std::invalid_argument("earth and rocket worldlines must share their endpoints");
        return {proper_time(trip->earth), proper_time(trip->rocket)};
    }
    const auto& cyl = std::get<Cylinder>(s);
    if (!(cyl.circumference > 0.0) || !std::isfinite(cyl.circumference))
        throw std::invalid_argument("cylinder circumference must be positive");
    if (!(cyl.speed > 0.0) || !(cyl.speed < 1.0)) throw std::invalid_argument("traveller speed must lie in (0, 1)");
    const double t = cyl.circumference / cyl.speed;
    return {t, t * dilation(cyl.speed)};
}

}  // namespace relbell
