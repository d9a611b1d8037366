#include "relbell/ensemble.hpp"
#include "relbell/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace relbell;

namespace {

using std::numbers::pi;

template <class F>
double simpson(F&& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

ExperimentConfig base_config(double theta_re) {
    ExperimentConfig cfg;
    cfg.r = Direction::z();
    cfg.e = Direction::in_xz_plane(theta_re);
    cfg.dt = 10.0;  // translation_only is exact in one step
    return cfg;
}

bool same_bits(const WingRecord& a, const WingRecord& b) {
    return a.spin == b.spin && a.x0 == b.x0 && a.xf == b.xf && a.outcome == b.outcome && a.failed == b.failed;
}

}  // namespace

TEST_CASE("sample_joint_spins examples") {
    Rng rng = trial_rng(1, 0);
    const auto same = singlet_coefficients(Direction::z(), Direction::z());
    for (int k = 0; k < 20000; ++k) {
        const auto [a, b] = sample_joint_spins(same, rng);
        CHECK(a != b);
    }

    const std::size_t n = 100000;
    const auto perp = singlet_coefficients(Direction::z(), Direction::x());
    std::array<std::array<std::size_t, 2>, 2> counts{};
    for (std::size_t k = 0; k < n; ++k) {
        const auto [a, b] = sample_joint_spins(perp, rng);
        ++counts[index_of(a)][index_of(b)];
    }
    const double tol = 4.0 * std::sqrt(0.25 * 0.75 / n);
    for (auto& row : counts)
        for (auto c : row) CHECK(std::abs(double(c) / n - 0.25) < tol);

    Rng a = trial_rng(42, 7), b = trial_rng(42, 7);
    for (int k = 0; k < 100; ++k) CHECK(sample_joint_spins(perp, a) == sample_joint_spins(perp, b));
}

TEST_CASE("sample_initial_position examples") {
    const auto p = make_packet(1.5, 0.7);
    Rng rng = trial_rng(3, 0);
    const std::size_t n = 100000;
    double sum = 0.0, sq = 0.0;
    std::vector<double> xs(n);
    for (auto& x : xs) {
        x = sample_initial_position(p, rng);
        sum += x;
    }
    const double mean = sum / n;
    for (double x : xs) sq += (x - mean) * (x - mean);
    const double sd = std::sqrt(sq / (n - 1));
    CHECK(std::abs(mean - 1.5) < 4 * 0.7 / std::sqrt(double(n)));
    CHECK(std::abs(sd / 0.7 - 1.0) < 0.03);
    Rng a = trial_rng(8, 1), b = trial_rng(8, 1);
    for (int k = 0; k < 100; ++k) CHECK(sample_initial_position(p, a) == sample_initial_position(p, b));
}

TEST_CASE("run_wing closed-form examples") {
    auto cfg = base_config(0.0);
    cfg.dt = 1e-3;
    const auto rocket = wing_setup(cfg, Wing::rocket, 0.8);
    const auto r = run_wing(rocket, SpinLabel::plus, 0.0);
    CHECK(std::abs(r.xf - 0.8) < 1e-12);
    const auto earth = wing_setup(cfg, Wing::earth, 1.0);
    const auto e = run_wing(earth, SpinLabel::minus, 0.0);
    CHECK(std::abs(e.xf + 1.0) < 1e-12);

    // one exact step when dt is not smaller than the proper time
    CHECK(run_wing(wing_setup(base_config(0.0), Wing::rocket, 0.8), SpinLabel::plus, 0.0).xf == 0.8);
}

TEST_CASE("run_trial draws, transports and reads out both wings") {
    auto cfg = base_config(0.0);  // r = e forces i1 = -i2
    for (std::uint64_t k = 0; k < 50; ++k) {
        Rng rng = trial_rng(17, k);
        const auto t = run_trial(cfg, ProperTimes{5.0, 4.0}, k, rng);
        CHECK(t.trial == k);
        CHECK(t.rocket.spin == flip(t.earth.spin));
        CHECK(t.rocket.xf == t.rocket.x0 + sign(t.rocket.spin) * 4.0);
        CHECK(t.earth.xf == t.earth.x0 + sign(t.earth.spin) * 5.0);
        REQUIRE(t.resolved());
        CHECK(*t.rocket.outcome == t.rocket.spin);
        CHECK(*t.earth.outcome == t.earth.spin);
    }
    Rng rng = trial_rng(0, 0);
    CHECK_THROWS_AS(run_trial(cfg, ProperTimes{-1.0, 1.0}, 0, rng), std::invalid_argument);
}

TEST_CASE("readout examples") {
    // unit widths would overlap at e^-2 > 0.1 here, so narrower packets
    const auto plus = make_packet(2.0, 0.5);
    const auto minus = make_packet(-2.0, 0.5);
    CHECK(readout(1.7, make_packet(2.0, 1.0), make_packet(-2.0, 1.0), 0.1).failed);
    const auto r = readout(1.7, plus, minus, 0.1);
    CHECK_FALSE(r.failed);
    CHECK(r.outcome == SpinLabel::plus);
    CHECK(readout(-0.1, plus, minus, 0.1).outcome == SpinLabel::minus);
    CHECK(readout(0.0, plus, minus, 0.1).outcome == SpinLabel::plus);
    // mirrored geometry: the +1 packet sits on the left
    CHECK(readout(1.7, minus, plus, 0.1).outcome == SpinLabel::minus);
    CHECK(readout(0.0, minus, plus, 0.1).outcome == SpinLabel::plus);

    const auto r0 = readout(0.3, make_packet(0.0, 1.0), make_packet(0.0, 1.0), 0.1);
    CHECK(r0.failed);
    CHECK_FALSE(r0.outcome.has_value());

    auto cfg = base_config(0.0);
    CHECK(run_wing(wing_setup(cfg, Wing::rocket, 0.0), SpinLabel::plus, 0.2).failed);
}

TEST_CASE("readout misclassification at a separation of four widths") {
    // centers at +-4: a +1 particle is misread when it lands below 0
    const auto plus = make_packet(4.0, 1.0);
    const double tail = simpson([&](double x) { return density(plus, x); }, -16.0, 0.0, 20000);
    CHECK(std::abs(tail - 3.16712418331199e-5) < 1e-12);  // Phi(-4)

    auto cfg = base_config(0.0);
    cfg.g = 1.0;
    const auto setup = wing_setup(cfg, Wing::rocket, 4.0);
    Rng rng = trial_rng(23, 0);
    std::size_t wrong = 0;
    const std::size_t n = 200000;
    for (std::size_t k = 0; k < n; ++k) {
        const auto w = run_wing(setup, SpinLabel::plus, sample_initial_position(setup.packet, rng));
        if (w.outcome != SpinLabel::plus) ++wrong;
    }
    // expected about 6.3; 25 is far beyond a Poisson 5-sigma excursion
    MESSAGE("misreads " << wrong);
    CHECK(wrong < 25);
}

TEST_CASE("run_experiment examples") {
    SUBCASE("same axes give perfect anticorrelation") {
        auto cfg = base_config(0.0);
        cfg.trials = 20000;
        cfg.seed = 4;
        const auto res = run_experiment(cfg);
        CHECK(res.failed_trials == 0);
        CHECK(correlation_estimate(res.trials).value == -1.0);
    }
    SUBCASE("pi/4 correlation") {
        auto cfg = base_config(pi / 4);
        cfg.trials = 100000;
        cfg.seed = 6;
        const auto res = run_experiment(cfg);
        CHECK(std::abs(correlation_estimate(res.trials).value + std::cos(pi / 4)) < 4 / std::sqrt(1e5));
    }
    SUBCASE("counts sum to N minus failures") {
        auto cfg = base_config(pi / 3);
        cfg.trials = 2000;
        cfg.g = 0.02;  // weak coupling: a share of trials fail on the shorter wing
        cfg.dt = 1e-2;
        cfg.scenario = Cylinder{1.2, 0.6};
        const auto res = run_experiment(cfg);
        std::size_t total = 0, spins = 0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                total += res.outcome_counts[a][b];
                spins += res.spin_counts[a][b];
            }
        CHECK(total + res.failed_trials == cfg.trials);
        CHECK(spins == cfg.trials);
        CHECK(res.failed_trials == cfg.trials);
        for (const auto& t : res.trials) {
            CHECK(t.rocket.outcome.has_value() != t.rocket.failed);
            CHECK(t.earth.outcome.has_value() != t.earth.failed);
        }
        CHECK(res.overlap_rocket > 0.1);
    }
}

TEST_CASE("epistemic_density examples") {
    auto cfg = base_config(pi / 3);
    const auto p = cfg.rocket.packet();
    for (double xr : {-1.0, 0.0, 0.4})
        for (double xe : {-0.3, 1.2})
            CHECK(epistemic_density(cfg, 0.0, 0.0, xr, xe) == doctest::Approx(density(p, xr) * density(p, xe)).epsilon(1e-14));

    auto same = base_config(0.0);
    // the (+,+) and (-,-) packet pairs carry no weight
    CHECK(epistemic_density(same, 6.0, 6.0, 6.0, 6.0) < 1e-15);
    CHECK(epistemic_density(same, 6.0, 6.0, 6.0, -6.0) > 0.01);

    // marginal over x_e by quadrature
    const double tr = 0.8, te = 3.0;
    const auto d = singlet_coefficients(cfg.r, cfg.e);
    const double wp = d.weight(SpinLabel::plus, SpinLabel::plus) + d.weight(SpinLabel::plus, SpinLabel::minus);
    const double wm = d.weight(SpinLabel::minus, SpinLabel::plus) + d.weight(SpinLabel::minus, SpinLabel::minus);
    const auto mode = EvolutionMode::translation_only();
    for (double xr : {-2.0, -0.8, 0.0, 0.5, 1.9}) {
        const double marginal = simpson([&](double xe) { return epistemic_density(cfg, tr, te, xr, xe); }, -20, 20, 4000);
        const double bumps = wp * density(evolve_packet(p, SpinLabel::plus, 1.0, tr, mode), xr) +
                             wm * density(evolve_packet(p, SpinLabel::minus, 1.0, tr, mode), xr);
        CHECK(std::abs(marginal - bumps) < 1e-10);
    }
    // and the marginal CDF is the integral of that profile
    const double cdf = simpson([&](double x) {
        return wp * density(evolve_packet(p, SpinLabel::plus, 1.0, tr, mode), x) +
               wm * density(evolve_packet(p, SpinLabel::minus, 1.0, tr, mode), x);
    }, -20.0, 0.3, 4000);
    CHECK(std::abs(epistemic_marginal_cdf(cfg, Wing::rocket, tr, te, 0.3) - cdf) < 1e-10);
}

TEST_CASE("property: Born-rule positions at arbitrary proper-time pairs") {
    auto cfg = base_config(pi / 3);
    cfg.trials = 20000;
    cfg.seed = 12;
    for (auto [tr, te] : {std::pair{0.8, 3.0}, std::pair{2.0, 0.5}, std::pair{0.0, 1.0}}) {
        const auto res = run_ensemble(cfg, ProperTimes{te, tr});
        for (Wing w : {Wing::rocket, Wing::earth}) {
            std::vector<double> xs;
            for (const auto& t : res.trials) xs.push_back(t.wing(w).xf);
            const double ks =
                ks_statistic(xs, [&](double x) { return epistemic_marginal_cdf(cfg, w, tr, te, x); });
            CHECK(ks < ks_critical_1pct(xs.size()));
        }
    }
}

TEST_CASE("property: ontic spin proportions do not depend on the proper times") {
    auto cfg = base_config(2 * pi / 5);
    cfg.trials = 20000;
    const auto d = singlet_coefficients(cfg.r, cfg.e);
    for (auto [tr, te] : {std::pair{0.0, 0.0}, std::pair{0.8, 3.0}, std::pair{5.0, 1.0}, std::pair{8.0, 10.0},
                          std::pair{2.0, 2.0}}) {
        cfg.seed += 1;
        const auto res = run_ensemble(cfg, ProperTimes{te, tr});
        std::vector<std::size_t> observed;
        std::vector<double> probabilities;
        for (SpinLabel a : kSpinLabels)
            for (SpinLabel b : kSpinLabels) {
                observed.push_back(res.spin_counts[index_of(a)][index_of(b)]);
                probabilities.push_back(d.weight(a, b));
            }
        CHECK(chi_square_statistic(observed, probabilities) < chi_square_critical(3, 0.01));
    }
}

TEST_CASE("property: no signalling to the rocket wing") {
    const std::size_t n = 40000;
    for (double theta : {0.0, pi / 4, pi / 2, 2.5}) {
        auto cfg = base_config(theta);
        cfg.trials = n;
        cfg.seed = 31;
        const auto res = run_experiment(cfg);
        const double plus = double(res.outcome_counts[0][0] + res.outcome_counts[0][1]) /
                            double(n - res.failed_trials);
        CHECK(std::abs(plus - 0.5) < 4.0 / (2.0 * std::sqrt(double(n))));
    }
}

TEST_CASE("property: rocket wing is untouched by earth-wing inputs") {
    auto cfg = base_config(0.0);
    cfg.mode = EvolutionMode::Kind::full_von_neumann;
    cfg.dt = 1e-2;
    cfg.trials = 200;
    cfg.seed = 77;
    const auto ref = run_ensemble(cfg, ProperTimes{3.0, 2.0});

    auto other = cfg;
    other.earth.sigma0 = 0.4;
    other.earth.p0 = 0.9;
    other.earth.mass = 3.0;
    other.earth.center = -5.0;
    // the earth axis must keep the spin weights unchanged: rotate it about r
    other.e = Direction(0.0, 1.3);
    const auto perturbed = run_ensemble(other, ProperTimes{7.5, 2.0});
    for (std::size_t k = 0; k < ref.trials.size(); ++k) {
        CHECK(same_bits(ref.trials[k].rocket, perturbed.trials[k].rocket));
        CHECK(ref.trials[k].earth.xf != perturbed.trials[k].earth.xf);
    }

    // interface level: a wing computation only receives its own setup
    const auto setup = wing_setup(cfg, Wing::rocket, 2.0);
    const auto direct = run_wing(setup, ref.trials[0].rocket.spin, ref.trials[0].rocket.x0);
    CHECK(same_bits(direct, ref.trials[0].rocket));
}

TEST_CASE("parallel ensemble is bit-identical to the serial reference") {
    auto cfg = base_config(pi / 5);
    cfg.mode = EvolutionMode::Kind::full_von_neumann;
    cfg.dt = 5e-2;
    cfg.trials = 500;
    cfg.seed = 2024;
    const auto ref = serial::run_experiment(cfg);
    for (int workers : {1, 2, 4}) {
        cfg.workers = workers;
        const auto par = run_experiment(cfg);
        REQUIRE(par.trials.size() == ref.trials.size());
        bool identical = true;
        for (std::size_t k = 0; k < ref.trials.size(); ++k)
            identical = identical && same_bits(par.trials[k].rocket, ref.trials[k].rocket) &&
                        same_bits(par.trials[k].earth, ref.trials[k].earth);
        CHECK(identical);
        CHECK(par.outcome_counts == ref.outcome_counts);
        CHECK(par.spin_counts == ref.spin_counts);
    }
}
