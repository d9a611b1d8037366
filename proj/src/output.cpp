#include "relbell/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace relbell {

std::string format_double(double v) {
    std::array<char, 40> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), ptr);
}

namespace {

const char* label(SpinLabel s) { return s == SpinLabel::plus ? "1" : "-1"; }

void write_outcome(std::ostream& out, const WingRecord& w) {
    if (w.outcome) out << label(*w.outcome);
}

std::ofstream open_for_write(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
}

nlohmann::ordered_json plate_json(const PlateHistogram& h) {
    return {{"count_plus", h.count_plus},     {"count_minus", h.count_minus},   {"center_plus", h.center_plus},
            {"center_minus", h.center_minus}, {"spread_plus", h.spread_plus}, {"spread_minus", h.spread_minus},
            {"separation", h.separation}};
}

}  // namespace

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records) {
    out << kTrialsHeader << '\n';
    for (const auto& t : records) {
        out << t.trial << ',' << label(t.rocket.spin) << ',' << label(t.earth.spin) << ',' << format_double(t.rocket.x0)
            << ',' << format_double(t.earth.x0) << ',' << format_double(t.rocket.xf) << ','
            << format_double(t.earth.xf) << ',';
        write_outcome(out, t.rocket);
        out << ',';
        write_outcome(out, t.earth);
        out << ',' << (t.rocket.failed ? 1 : 0) << ',' << (t.earth.failed ? 1 : 0) << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const PlateHistogram& h) {
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ',' << h.counts[b] << '\n';
}

nlohmann::ordered_json summary_json(const RunConfig& cfg, const EnsembleResult& result) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["settings"] = cfg.to_json();
    j["proper_times"] = {{"earth", result.proper_times.earth},
                         {"rocket", result.proper_times.rocket},
                         {"ratio", result.proper_times.earth > 0.0 ? result.proper_times.ratio() : 0.0}};
    const auto& c = result.outcome_counts;
    j["counts"] = {{"++", c[0][0]}, {"+-", c[0][1]}, {"-+", c[1][0]}, {"--", c[1][1]}, {"failed", result.failed_trials}};
    const auto& s = result.spin_counts;
    j["ontic_spin_counts"] = {{"++", s[0][0]}, {"+-", s[0][1]}, {"-+", s[1][0]}, {"--", s[1][1]}};
    try {
        const auto est = correlation_estimate(result.trials);
        j["correlation"] = {{"value", est.value}, {"std_error", est.std_error}, {"samples", est.samples},
                            {"exact", correlation_exact(cfg.experiment.r, cfg.experiment.e)}};
    } catch (const NoEstimateError&) {
        j["correlation"] = nullptr;
    }
    ordered_json plates = ordered_json::object();
    for (Wing w : {Wing::earth, Wing::rocket}) {
        try {
            plates[std::string(to_string(w))] = plate_json(plate_histogram(result.trials, w, cfg.bins));
        } catch (const NoEstimateError&) {
            plates[std::string(to_string(w))] = nullptr;
        }
    }
    if (plates["earth"].is_object() && plates["rocket"].is_object()) {
        const double earth = plates["earth"]["separation"];
        plates["separation_ratio"] = earth > 0.0 ? plates["rocket"]["separation"].get<double>() / earth : 0.0;
    }
    j["plates"] = plates;
    j["overlap"] = {{"threshold", cfg.experiment.overlap_threshold},
                    {"rocket", result.overlap_rocket},
                    {"earth", result.overlap_earth}};
    return j;
}

nlohmann::ordered_json manifest_json(const RunConfig& cfg, const ProperTimes& times, double wall_seconds) {
    return {{"version", kVersion},
            {"seed", cfg.experiment.seed},
            {"proper_times", {{"earth", times.earth}, {"rocket", times.rocket}}},
            {"config", cfg.to_json()},
            {"wall_clock_seconds", wall_seconds}};
}

SimulationFiles write_simulation(const std::filesystem::path& dir, const RunConfig& cfg, const EnsembleResult& result,
                                 double wall_seconds) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

    SimulationFiles files{dir / "trials.csv", dir / "plate_rocket.csv", dir / "plate_earth.csv", dir / "summary.json",
                          dir / "manifest.json"};
    {
        auto f = open_for_write(files.trials);
        write_trials_csv(f, result.trials);
    }
    for (Wing w : {Wing::rocket, Wing::earth}) {
        const auto& path = w == Wing::rocket ? files.plate_rocket : files.plate_earth;
        try {
            const auto h = plate_histogram(result.trials, w, cfg.bins);
            auto f = open_for_write(path);
            write_histogram_csv(f, h);
        } catch (const NoEstimateError&) {
            std::filesystem::remove(path, ec);
        }
    }
    {
        auto f = open_for_write(files.summary);
        f << summary_json(cfg, result).dump(2) << '\n';
    }
    {
        auto f = open_for_write(files.manifest);
        f << manifest_json(cfg, result.proper_times, wall_seconds).dump(2) << '\n';
    }
    return files;
}

}  // namespace relbell
