#ifndef RSIM_RATE_MC_HPP
#define RSIM_RATE_MC_HPP

#include <string>

#include "rsim/config.hpp"
#include "rsim/precoding.hpp"

namespace rsim {

enum class Scheme { RS_CI, RS_ZF, NORS_CI, NORS_ZF };
enum class CsitMode { perfect, imperfect };

PrecoderKind scheme_kind(Scheme s);
bool scheme_is_rs(Scheme s);
std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);
std::string csit_name(CsitMode m);

struct CsitParams {
    CsitMode mode = CsitMode::perfect;
    double tau = 10.0;        // pilot symbols
    double pilot_power = 1.0; // per-pilot transmit power
};

struct McSettings {
    int n_channel = 500;
    int n_noise = 20;
    bool logsumexp_guard = true;
    long enumeration_cap = 4096; // exact outer enumeration up to this
    int outer_samples = 2048;    // uniform outer-m subsample beyond the cap
    int workers = 1;
    // Per-realization power normalization (diagnostics; the analysis and all
    // defaults use the long-term constants).
    bool instantaneous_normalization = false;
};

/// One evaluated (snr, scheme) point. Per-user rates are clamped to
/// [0, log2 M]; clamp_events counts pre-clamp excursions out of that range
/// against rate_values produced.
struct RatePoint {
    double snr_db = 0.0;
    double t = 1.0;
    std::vector<double> common_rates;
    std::vector<double> private_rates;
    double rate_common_min = 0.0;
    double rate_private_sum = 0.0;
    double sum_rate = 0.0;
    double ci_halfwidth = 0.0; // 95% MC interval on sum_rate
    long samples = 0;          // channel draws
    int n_noise = 0;
    Scheme scheme = Scheme::RS_CI;
    CsitMode csit = CsitMode::perfect;
    long clamp_events = 0;
    long rate_values = 0;
};

struct McContext {
    SystemConfig cfg;
    Scheme scheme = Scheme::RS_CI;
    CsitParams csit;
    PowerSplit split;
    std::vector<double> u; // CI weights, 1^T u = 1
    McSettings settings;
    std::uint64_t master_seed = 1;
    std::uint64_t snr_index = 0; // stream coordinate, scheme-free
    double snr_db = 0.0;         // provenance
};

struct RateEstimate {
    double rate = 0.0;
    double halfwidth = 0.0;
};

/// Exact-expectation MC of the finite-alphabet ergodic rates: channels and
/// noise are sampled, exponents use the likelihood-ratio form
/// -(|v+n|^2-|n|^2)/sigma^2 (expectation-identical to the printed common-rate
/// expression, and exactly the per-user mutual information for the private
/// part). Deterministic for fixed (seed, settings) at any worker count.
RatePoint rs_sum_rate_mc(const McContext& ctx);

RateEstimate common_rate_mc(const McContext& ctx, int user);
RateEstimate private_rate_mc(const McContext& ctx, int user);
/// Conventional transmission: full power to the private precoder (t = 1).
RateEstimate nors_rate_mc(const McContext& ctx, int user);

} // namespace rsim

#endif
