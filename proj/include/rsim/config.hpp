#ifndef RSIM_CONFIG_HPP
#define RSIM_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsim/common.hpp"
#include "rsim/rng.hpp"

namespace rsim {

/// System-level experiment configuration. Immutable value type shared
/// read-only by all modules; every invariant is checked in validate().
struct SystemConfig {
    int n_antennas = 3;               // N
    int n_users = 2;                  // K
    int psk_order = 4;                // M in {2,4,8}
    double pathloss_exponent = 2.7;   // m
    double total_power = 1.0;         // P (linear, sigma2 = 1 convention)
    std::vector<double> sigma2;       // per-user noise power, length K
    double min_radius = 1.0;          // R0
    double radius = 40.0;             // R
    std::optional<std::vector<double>> distances; // fixed per-user distances

    SystemConfig() : sigma2(2, 1.0) {}

    void validate() const;

    double noise_power(int user) const { return sigma2.at(static_cast<size_t>(user)); }

    /// All-users-equal noise check used by the SNR = P/sigma2 convention.
    bool fixed_distances() const { return distances.has_value(); }
};

/// Common/private power split: P_c = (1-t)P, P_p = tP/K.
struct PowerSplit {
    double t = 1.0;
    double common_power = 0.0;  // P_c
    double private_power = 0.0; // P_p, per private stream
};

PowerSplit derive_power_split(double total_power, double t, int n_users);

/// Inverse-CDF draw from f_d(r) = 2(r-R0)/(R-R0)^2 on [R0, R].
double sample_user_distance(double min_radius, double radius, Rng& rng);

/// Diagonal path-loss gains  d_k^(-m). Returns the K diagonal entries.
std::vector<double> pathloss_gains(const SystemConfig& cfg,
                                   const std::vector<double>& distances);

/// Resolves per-trial distances: the fixed list when configured, otherwise one
/// fresh draw per user from the cell geometry.
std::vector<double> resolve_distances(const SystemConfig& cfg, Rng& rng);

/// Flat key=value config file (keys documented in README). Unknown keys are
/// rejected so typos surface as config errors, not silent defaults.
std::map<std::string, std::string> parse_key_value_file(const std::string& path);

} // namespace rsim

#endif
