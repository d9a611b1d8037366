// Command-line driver: propertime, simulate, chsh, validate.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include "relbell/config.hpp"
#include "relbell/ensemble.hpp"
#include "relbell/output.hpp"
#include "relbell/stats.hpp"
#include "relbell/validate.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    bool quiet = false;
};

relbell::RunConfig load(const Options& opt) {
    auto cfg = relbell::load_config(opt.config);
    if (opt.seed) cfg.experiment.seed = *opt.seed;
    if (opt.trials) {
        if (*opt.trials < 1) throw relbell::ConfigError("--trials", 0, "trials must be at least 1");
        cfg.experiment.trials = *opt.trials;
    }
    if (!opt.out.empty()) cfg.output_dir = opt.out;
    return cfg;
}

void write_json(const std::filesystem::path& dir, const char* name, const nlohmann::ordered_json& j) {
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << j.dump(2) << '\n';
}

int cmd_propertime(const Options& opt) {
    const auto cfg = load(opt);
    const auto t = relbell::scenario_proper_times(cfg.experiment.scenario);
    if (!opt.quiet) {
        std::printf("delta_tau_e = %s\n", relbell::format_double(t.earth).c_str());
        std::printf("delta_tau_r = %s\n", relbell::format_double(t.rocket).c_str());
        std::printf("ratio       = %s\n", relbell::format_double(t.ratio()).c_str());
    }
    if (!cfg.output_dir.empty())
        write_json(cfg.output_dir, "propertime.json",
                   {{"scenario", cfg.to_json()["scenario"]},
                    {"delta_tau_e", t.earth},
                    {"delta_tau_r", t.rocket},
                    {"ratio", t.ratio()}});
    return 0;
}

int cmd_simulate(const Options& opt) {
    auto cfg = load(opt);
    if (cfg.output_dir.empty()) throw relbell::ConfigError(opt.config, 0, "no output directory: pass --out or set [output] dir");
    const auto start = std::chrono::steady_clock::now();
    const auto result = relbell::run_experiment(cfg.experiment);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto files = relbell::write_simulation(cfg.output_dir, cfg, result, wall);
    if (!opt.quiet) {
        const auto summary = relbell::summary_json(cfg, result);
        std::printf("delta_tau_e = %.6g, delta_tau_r = %.6g\n", result.proper_times.earth, result.proper_times.rocket);
        std::printf("trials = %zu, failed = %zu\n", result.trials.size(), result.failed_trials);
        if (!summary["correlation"].is_null())
            std::printf("E = %.6f +- %.6f (exact %.6f)\n", summary["correlation"]["value"].get<double>(),
                        summary["correlation"]["std_error"].get<double>(),
                        summary["correlation"]["exact"].get<double>());
        for (const char* w : {"earth", "rocket"})
            if (summary["plates"][w].is_object())
                std::printf("%-6s spot separation = %.6g\n", w, summary["plates"][w]["separation"].get<double>());
        if (summary["plates"].contains("separation_ratio"))
            std::printf("separation ratio rocket/earth = %.6g\n", summary["plates"]["separation_ratio"].get<double>());
        std::printf("wrote %s\n", files.trials.parent_path().string().c_str());
    }
    return 0;
}

int cmd_chsh(const Options& opt) {
    const auto cfg = load(opt);
    if (!cfg.chsh) throw relbell::ConfigError(opt.config, 0, "chsh needs chsh_a, chsh_a_prime, chsh_b, chsh_b_prime in [spin]");
    const auto res = relbell::chsh(cfg.experiment, *cfg.chsh);
    const char* names[] = {"E(a,b)  ", "E(a,b') ", "E(a',b) ", "E(a',b')"};
    if (!opt.quiet) {
        for (std::size_t k = 0; k < 4; ++k)
            std::printf("%s = %+.6f +- %.6f  (n = %zu)\n", names[k], res.estimates[k].value, res.estimates[k].std_error,
                        res.estimates[k].samples);
        double var = 0.0;
        for (const auto& e : res.estimates) var += e.std_error * e.std_error;
        std::printf("S = %+.6f +- %.6f  (exact %+.6f)\n", res.s, std::sqrt(var), relbell::chsh_exact(*cfg.chsh));
    }
    if (!cfg.output_dir.empty()) {
        nlohmann::ordered_json j;
        for (std::size_t k = 0; k < 4; ++k)
            j["estimates"].push_back({{"value", res.estimates[k].value},
                                      {"std_error", res.estimates[k].std_error},
                                      {"samples", res.estimates[k].samples}});
        j["s"] = res.s;
        j["s_exact"] = relbell::chsh_exact(*cfg.chsh);
        write_json(cfg.output_dir, "chsh.json", j);
    }
    return 0;
}

int cmd_validate(const Options& opt) {
    bool ok = true;
    for (const auto& c : relbell::run_validation()) {
        ok = ok && c.passed;
        if (!opt.quiet || !c.passed)
            std::printf("%s %-34s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    }
    return ok ? 0 : kRuntimeFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relativistic Bell experiment with a retrocausal hidden-variable model"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opt.config, "configuration file")->check(CLI::ExistingFile);
        if (needs_config) c->required();
        sub->add_option("--out", opt.out, "output directory");
        sub->add_option("--seed", opt.seed, "master seed (overrides the config)");
        sub->add_option("--trials", opt.trials, "trial count (overrides the config)");
        sub->add_flag("--quiet", opt.quiet, "suppress the human-readable report");
    };
    auto* propertime = app.add_subcommand("propertime", "proper times of the configured scenario");
    auto* simulate = app.add_subcommand("simulate", "run the ensemble and write trials, plates and summary");
    auto* chsh = app.add_subcommand("chsh", "CHSH composite from four independent ensembles");
    auto* validate = app.add_subcommand("validate", "fast invariant suite");
    add_common(propertime, true);
    add_common(simulate, true);
    add_common(chsh, true);
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*propertime) return cmd_propertime(opt);
        if (*simulate) return cmd_simulate(opt);
        if (*chsh) return cmd_chsh(opt);
        if (*validate) return cmd_validate(opt);
    } catch (const relbell::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntimeFailure;
    }
    return kUsageError;
}
