#include "rsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rsim {

void SystemConfig::validate() const {
    if (n_antennas < 1) throw ConfigError("N must be >= 1");
    if (n_users < 1) throw ConfigError("K must be >= 1");
    if (n_users > n_antennas)
        throw ConfigError("K <= N required (precoder inverses need full row rank)");
    if (psk_order != 2 && psk_order != 4 && psk_order != 8)
        throw ConfigError("M must be one of {2,4,8}");
    if (!(total_power > 0.0)) throw ConfigError("P must be positive");
    if (sigma2.size() != static_cast<size_t>(n_users))
        throw ConfigError("sigma2 list length must equal K");
    for (double s : sigma2)
        if (!(s > 0.0)) throw ConfigError("sigma2 entries must be positive");
    if (!(pathloss_exponent >= 0.0)) throw ConfigError("pathloss exponent must be >= 0");
    if (distances) {
        if (distances->size() != static_cast<size_t>(n_users))
            throw ConfigError("distances list length must equal K");
        for (double d : *distances) {
            bool normalized_unit = d == 1.0;
            if (!normalized_unit && !(d >= min_radius && d <= radius))
                throw ConfigError("each fixed distance must be 1 (normalized) or in [R0, R]");
        }
    } else {
        if (!(min_radius > 0.0 && min_radius < radius))
            throw ConfigError("0 < R0 < R required when distances are sampled");
    }
}

PowerSplit derive_power_split(double total_power, double t, int n_users) {
    if (!(total_power > 0.0)) throw ConfigError("P must be positive");
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("power split t must lie in [0,1]");
    PowerSplit ps;
    ps.t = t;
    ps.common_power = (1.0 - t) * total_power;
    ps.private_power = t * total_power / n_users;
    return ps;
}

double sample_user_distance(double min_radius, double radius, Rng& rng) {
    if (!(min_radius > 0.0 && min_radius < radius))
        throw ConfigError("sample_user_distance requires 0 < R0 < R");
    double u = rng.uniform();
    return min_radius + (radius - min_radius) * std::sqrt(u);
}

std::vector<double> pathloss_gains(const SystemConfig& cfg,
                                   const std::vector<double>& distances) {
    std::vector<double> gains(distances.size());
    for (size_t k = 0; k < distances.size(); ++k)
        gains[k] = std::pow(distances[k], -cfg.pathloss_exponent);
    return gains;
}

std::vector<double> resolve_distances(const SystemConfig& cfg, Rng& rng) {
    if (cfg.distances) return *cfg.distances;
    std::vector<double> d(static_cast<size_t>(cfg.n_users));
    for (auto& dk : d) dk = sample_user_distance(cfg.min_radius, cfg.radius, rng);
    return d;
}

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    static const char* known[] = {
        "N", "K", "M", "pathloss_exponent", "snr_db_min", "snr_db_max",
        "snr_db_step", "radius", "min_radius", "distances", "csit", "tau",
        "pilot_power", "samples", "seed", "scheme", "t_mode", "t_value",
        "estimator", "workers"};
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

} // namespace rsim
