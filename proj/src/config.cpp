#include "relbell/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace relbell {

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

Scenario ScenarioSpec::build() const {
    if (type == Type::cylinder) return Cylinder{circumference, speed};
    return make_rocket_scenario(make_round_trip(v_max, ramp, cruise));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
    return out;
}

std::uint64_t parse_uint(std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(v) + "'");
    return out;
}

double positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
    return v;
}

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

/// "theta_deg" or "theta_deg, phi_deg"
Direction parse_direction(std::string_view v) {
    const auto comma = v.find(',');
    const double theta = parse_double(trim(v.substr(0, comma)));
    const double phi = comma == std::string_view::npos ? 0.0 : parse_double(trim(v.substr(comma + 1)));
    return Direction(radians(theta), radians(phi));
}

struct PacketOverrides {
    std::optional<double> center, sigma0, p0, mass, kick;

    void apply(PacketParams& p) const {
        if (center) p.center = *center;
        if (sigma0) p.sigma0 = *sigma0;
        if (p0) p.p0 = *p0;
        if (mass) p.mass = *mass;
        if (kick) p.kick = *kick;
    }
};

struct Draft {
    RunConfig cfg;
    double r_theta = 0.0, r_phi = 0.0, e_theta = 0.0, e_phi = 0.0;
    std::optional<Direction> a, a_prime, b, b_prime;
    PacketOverrides shared, rocket, earth;
};

using Setter = std::function<void(Draft&, std::string_view)>;

void add_packet_keys(std::map<std::string, Setter>& keys, const std::string& prefix,
                     PacketOverrides Draft::*target) {
    keys[prefix + "center"] = [target](Draft& d, std::string_view v) { (d.*target).center = parse_double(v); };
    keys[prefix + "sigma0"] = [target](Draft& d, std::string_view v) {
        (d.*target).sigma0 = positive(parse_double(v), "sigma0");
    };
    keys[prefix + "p0"] = [target](Draft& d, std::string_view v) { (d.*target).p0 = parse_double(v); };
    keys[prefix + "mass"] = [target](Draft& d, std::string_view v) {
        (d.*target).mass = positive(parse_double(v), "mass");
    };
    keys[prefix + "kick"] = [target](Draft& d, std::string_view v) {
        (d.*target).kick = positive(parse_double(v), "kick");
    };
}

const std::map<std::string, std::map<std::string, Setter>>& schema() {
    static const auto table = [] {
        std::map<std::string, std::map<std::string, Setter>> s;
        auto& spin = s["spin"];
        spin["r_theta_deg"] = [](Draft& d, std::string_view v) { d.r_theta = parse_double(v); };
        spin["r_phi_deg"] = [](Draft& d, std::string_view v) { d.r_phi = parse_double(v); };
        spin["e_theta_deg"] = [](Draft& d, std::string_view v) { d.e_theta = parse_double(v); };
        spin["e_phi_deg"] = [](Draft& d, std::string_view v) { d.e_phi = parse_double(v); };
        spin["chsh_a"] = [](Draft& d, std::string_view v) { d.a = parse_direction(v); };
        spin["chsh_a_prime"] = [](Draft& d, std::string_view v) { d.a_prime = parse_direction(v); };
        spin["chsh_b"] = [](Draft& d, std::string_view v) { d.b = parse_direction(v); };
        spin["chsh_b_prime"] = [](Draft& d, std::string_view v) { d.b_prime = parse_direction(v); };

        auto& packets = s["packets"];
        packets["mode"] = [](Draft& d, std::string_view v) { d.cfg.experiment.mode = parse_mode_kind(v); };
        packets["g"] = [](Draft& d, std::string_view v) { d.cfg.experiment.g = parse_double(v); };
        add_packet_keys(packets, "", &Draft::shared);
        add_packet_keys(packets, "rocket_", &Draft::rocket);
        add_packet_keys(packets, "earth_", &Draft::earth);

        auto& scenario = s["scenario"];
        scenario["type"] = [](Draft& d, std::string_view v) {
            if (v == "round_trip")
                d.cfg.scenario.type = ScenarioSpec::Type::round_trip;
            else if (v == "cylinder")
                d.cfg.scenario.type = ScenarioSpec::Type::cylinder;
            else
                throw std::invalid_argument("scenario type must be round_trip or cylinder");
        };
        scenario["v_max"] = [](Draft& d, std::string_view v) { d.cfg.scenario.v_max = parse_double(v); };
        scenario["ramp"] = [](Draft& d, std::string_view v) { d.cfg.scenario.ramp = parse_double(v); };
        scenario["cruise"] = [](Draft& d, std::string_view v) { d.cfg.scenario.cruise = parse_double(v); };
        scenario["circumference"] = [](Draft& d, std::string_view v) { d.cfg.scenario.circumference = parse_double(v); };
        scenario["speed"] = [](Draft& d, std::string_view v) { d.cfg.scenario.speed = parse_double(v); };

        auto& ensemble = s["ensemble"];
        ensemble["trials"] = [](Draft& d, std::string_view v) {
            const auto n = parse_uint(v);
            if (n < 1) throw std::invalid_argument("trials must be at least 1");
            d.cfg.experiment.trials = n;
        };
        ensemble["seed"] = [](Draft& d, std::string_view v) { d.cfg.experiment.seed = parse_uint(v); };
        ensemble["dt"] = [](Draft& d, std::string_view v) { d.cfg.experiment.dt = positive(parse_double(v), "dt"); };
        ensemble["overlap_threshold"] = [](Draft& d, std::string_view v) {
            const double t = parse_double(v);
            if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("overlap_threshold must lie in (0, 1)");
            d.cfg.experiment.overlap_threshold = t;
        };
        ensemble["workers"] = [](Draft& d, std::string_view v) {
            d.cfg.experiment.workers = static_cast<int>(parse_uint(v));
        };

        auto& output = s["output"];
        output["dir"] = [](Draft& d, std::string_view v) { d.cfg.output_dir = std::string(v); };
        output["bins"] = [](Draft& d, std::string_view v) {
            const auto n = parse_uint(v);
            if (n < 1) throw std::invalid_argument("bins must be at least 1");
            d.cfg.bins = n;
        };
        return s;
    }();
    return table;
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& source) {
    Draft d;
    const auto& table = schema();
    std::map<std::string, std::size_t> section_line;
    std::map<std::string, std::size_t> seen;
    std::string section;

    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(source, line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!table.contains(section)) throw ConfigError(source, line_no, "unknown section [" + section + "]");
            if (section_line.contains(section)) throw ConfigError(source, line_no, "duplicate section [" + section + "]");
            section_line[section] = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(source, line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        auto value = trim(line.substr(eq + 1));
        if (const auto hash = value.find(" #"); hash != std::string_view::npos) value = trim(value.substr(0, hash));
        if (section.empty()) throw ConfigError(source, line_no, "key '" + key + "' outside of any section");
        const auto& keys = table.at(section);
        const auto it = keys.find(key);
        if (it == keys.end()) throw ConfigError(source, line_no, "unknown key '" + key + "' in section [" + section + "]");
        const std::string qualified = section + "." + key;
        if (seen.contains(qualified)) throw ConfigError(source, line_no, "duplicate key '" + key + "'");
        seen[qualified] = line_no;
        if (value.empty()) throw ConfigError(source, line_no, "empty value for '" + key + "'");
        try {
            it->second(d, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(source, line_no, key + ": " + e.what());
        }
    }

    const auto anchor = [&](const char* sec) { return section_line.contains(sec) ? section_line.at(sec) : line_no; };
    RunConfig cfg = std::move(d.cfg);
    try {
        cfg.experiment.r = Direction(radians(d.r_theta), radians(d.r_phi));
        cfg.experiment.e = Direction(radians(d.e_theta), radians(d.e_phi));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source, anchor("spin"), e.what());
    }
    const int chsh_keys = d.a.has_value() + d.a_prime.has_value() + d.b.has_value() + d.b_prime.has_value();
    if (chsh_keys == 4)
        cfg.chsh = ChshSettings{*d.a, *d.a_prime, *d.b, *d.b_prime};
    else if (chsh_keys != 0)
        throw ConfigError(source, anchor("spin"), "CHSH settings need all of chsh_a, chsh_a_prime, chsh_b, chsh_b_prime");

    d.shared.apply(cfg.experiment.rocket);
    d.shared.apply(cfg.experiment.earth);
    d.rocket.apply(cfg.experiment.rocket);
    d.earth.apply(cfg.experiment.earth);

    try {
        cfg.experiment.scenario = cfg.scenario.build();
        (void)scenario_proper_times(cfg.experiment.scenario);
    } catch (const std::exception& e) {
        throw ConfigError(source, anchor("scenario"), e.what());
    }
    try {
        cfg.experiment.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source, anchor("packets"), e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), 0, "cannot open configuration file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

nlohmann::ordered_json RunConfig::to_json() const {
    using nlohmann::ordered_json;
    const auto deg = [](double rad) { return rad * 180.0 / std::numbers::pi; };
    const auto dir = [&](const Direction& n) { return ordered_json{{"theta_deg", deg(n.theta())}, {"phi_deg", deg(n.phi())}}; };
    const auto packet = [](const PacketParams& p) {
        return ordered_json{{"center", p.center}, {"sigma0", p.sigma0}, {"p0", p.p0}, {"mass", p.mass}, {"kick", p.kick}};
    };
    const auto& x = experiment;
    ordered_json j;
    j["spin"] = {{"r", dir(x.r)}, {"e", dir(x.e)}};
    if (chsh)
        j["spin"]["chsh"] = {{"a", dir(chsh->a)}, {"a_prime", dir(chsh->a_prime)}, {"b", dir(chsh->b)}, {"b_prime", dir(chsh->b_prime)}};
    j["packets"] = {{"mode", std::string(to_string(x.mode))}, {"g", x.g}, {"rocket", packet(x.rocket)}, {"earth", packet(x.earth)}};
    if (scenario.type == ScenarioSpec::Type::round_trip)
        j["scenario"] = {{"type", "round_trip"}, {"v_max", scenario.v_max}, {"ramp", scenario.ramp}, {"cruise", scenario.cruise}};
    else
        j["scenario"] = {{"type", "cylinder"}, {"circumference", scenario.circumference}, {"speed", scenario.speed}};
    j["ensemble"] = {{"trials", x.trials}, {"seed", x.seed}, {"dt", x.dt}, {"overlap_threshold", x.overlap_threshold}};
    j["output"] = {{"dir", output_dir}, {"bins", bins}};
    return j;
}

}  // namespace relbell
