#ifndef RSIM_GAMMA_FIT_HPP
#define RSIM_GAMMA_FIT_HPP

#include <vector>

#include "rsim/common.hpp"

namespace rsim {

struct GammaFit {
    double shape = 0.0; // upsilon
    double scale = 0.0; // theta
};

/// Calibration statistics behind the analytic rate models:
///   row_norm_A : ||A_k||^2, A = H H^H, shape pinned to N(N+1), scale from
///                the calibration mean.
///   mrt_sum_Y  : Re(sum_i h_k h_i^H), two-moment fit.
///   ci_gain    : |a (H H^H) b| / (a D b) for the CI private gain, two-moment
///                fit (reduces to the exact Gamma(N,1) at K = 1).
enum class FitStatistic { row_norm_A, mrt_sum_Y, ci_gain };

/// Moment fit against a one-time deterministic calibration MC (10^5 draws,
/// fixed internal seed, independent of any experiment seed). Results are
/// memoized behind a read-mostly cache keyed by (statistic, N, K, pathloss,
/// weights, user).
GammaFit gamma_fit_moments(FitStatistic stat, int n_antennas,
                           const std::vector<double>& pathloss,
                           const std::vector<double>& u, int user);

} // namespace rsim

#endif
