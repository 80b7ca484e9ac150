#ifndef RSIM_POWER_ALLOC_HPP
#define RSIM_POWER_ALLOC_HPP

#include <functional>

#include "rsim/rate_mc.hpp"

namespace rsim {

enum class SplitMethod { fixed, golden, grid, rate_match, min_power };

SplitMethod split_method_from_name(const std::string& name);
std::string split_method_name(SplitMethod m);

struct SplitSearchResult {
    double t_star = 1.0;
    double rate_at_t = 0.0;
    int iterations = 0;
    double bracket_width = 0.0;
    SplitMethod method = SplitMethod::grid;
    bool flagged = false; // rate_match: no solution inside [0,1]
};

using RateFn = std::function<double(double)>;

/// Golden-section maximization on [0,1] with the standard contraction
/// updates t1 = hi - lambda (hi-lo), t2 = lo + lambda (hi-lo); returns the
/// bracket midpoint once |hi-lo| < tol. Callers evaluating MC rates must fix
/// one seed across evaluations (common random numbers) for comparability.
SplitSearchResult golden_section_t(const RateFn& rate_fn, double tol = 1e-3,
                                   int max_iter = 200);

/// Uniform-grid argmax (first maximizer wins ties); the unimodality-robust
/// reference mode and the oracle for golden-section acceptance.
SplitSearchResult grid_search_t(const RateFn& rate_fn, int grid_points = 101);

/// Rate-matching sub-optimal split: smallest t with
/// min_k [R_k^p(t) - R_k^NoRS] >= -rate_tol (private rates are monotone in
/// t). Returns t = 1 flagged when even full private power falls short.
SplitSearchResult rate_matching_t(const McContext& ctx, double rate_tol = 0.02,
                                  double t_resolution = 1e-3);

/// High-SNR scheme: smallest total power (over a dB bisection within
/// [p_lo_db, p_hi_db]) whose best-t sum rate reaches (K+1) log2 M - rate_tol.
/// Throws NumericError when the bound is exceeded.
struct MinPowerResult {
    double p_min_db = 0.0;
    double t_at_pmin = 1.0;
    double rate = 0.0;
};
MinPowerResult min_power_saturation(const McContext& ctx, double rate_tol = 0.05,
                                    double p_lo_db = -10.0, double p_hi_db = 60.0,
                                    int t_grid = 21, double p_tol_db = 0.25);

/// RS sum rate at split t with everything else fixed; the canonical rate_fn
/// for the searches above (seeds do not depend on t, so evaluations share
/// channels and noise).
RateFn ergodic_rate_fn(const McContext& ctx);

/// Per-channel-state optimization: mean over states of max_t R(t; H) with a
/// golden section per state (the alternative reading of the maximization;
/// the ergodic mode above is the default everywhere).
struct PerStateSplit {
    double mean_max_rate = 0.0;
    double mean_t_star = 0.0;
};
PerStateSplit per_state_split_rate(const McContext& ctx, int n_states, double tol = 1e-2);

} // namespace rsim

#endif
