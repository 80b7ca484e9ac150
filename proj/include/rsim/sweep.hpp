#ifndef RSIM_SWEEP_HPP
#define RSIM_SWEEP_HPP

#include "rsim/power_alloc.hpp"
#include "rsim/rate_analytic.hpp"

namespace rsim {

std::string modulation_name(int order);
int modulation_order(const std::string& name);

enum class Estimator { mc, analytic };
std::string estimator_name(Estimator e);

struct SweepSpec {
    SystemConfig cfg; // total_power is overwritten per SNR point (sigma2 = 1)
    std::vector<double> snr_grid_db;
    std::vector<Scheme> schemes;
    CsitParams csit;
    SplitMethod t_mode = SplitMethod::fixed;
    double t_value = 0.8;
    int t_grid_points = 21;
    double t_tol = 1e-2;
    bool use_mc = true;
    bool use_analytic = false;
    McSettings mc;
    AnalyticSettings analytic;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct SweepRow {
    RatePoint point;
    Estimator estimator = Estimator::mc;
    int n_antennas = 0;
    int n_users = 0;
    int order = 0;
    std::uint64_t seed = 0;
    std::string build;
    double wall_ms = 0.0; // metadata only; not serialized
};

struct SweepResult {
    std::vector<SweepRow> rows; // sorted by (snr, scheme, estimator)
};

/// Deterministic for fixed (spec, master_seed) at any worker count: RNG
/// streams are keyed by (snr index, draw index) only, so CI/ZF/NoRS rows see
/// identical channels and noise (paired comparisons), and both estimator
/// families see the same sweep grid.
SweepResult run_sweep(const SweepSpec& spec);

/// Exact CSV schema, in order:
/// snr_db, scheme, estimator, csit, modulation, N, K, t, rate_common_min,
/// rate_private_sum, sum_rate, ci_halfwidth, n_channel, n_noise, seed, build
extern const char* kCsvHeader;

void emit_csv(const SweepResult& result, const std::string& path);
std::string csv_string(const SweepResult& result);

/// One CSV row in field form; used for the parse round trip.
struct CsvRow {
    double snr_db;
    std::string scheme, estimator, csit, modulation;
    int n_antennas, n_users;
    double t, rate_common_min, rate_private_sum, sum_rate, ci_halfwidth;
    long n_channel;
    int n_noise;
    std::uint64_t seed;
    std::string build;
    bool operator==(const CsvRow&) const = default;
};
CsvRow to_csv_row(const SweepRow& row);
std::vector<CsvRow> parse_csv(const std::string& path);

/// Static SVG of sum rate vs SNR, one polyline per (scheme, estimator).
void emit_plot(const SweepResult& result, const std::string& path);

const char* build_tag();

} // namespace rsim

#endif
