#ifndef RSIM_RATE_ANALYTIC_HPP
#define RSIM_RATE_ANALYTIC_HPP

#include "rsim/gamma_fit.hpp"
#include "rsim/rate_mc.hpp"
#include "rsim/special.hpp"

namespace rsim {

struct AnalyticSettings {
    int laguerre_order = 24; // Gamma integrals (ZF phi)
    int location_order = 24; // user-location averages
};

/// Jensen-bounded closed forms under perfect CSIT: phi by Gamma-MGF (CI) or
/// Gauss-Laguerre over the fitted MRT-sum Gamma (ZF); psi by the
/// Gamma-square-exponential kernel (CI) or the plain exponential sum (ZF).
/// All exponents carry the exact power scalings P_c = (1-t)P, P_p = tP/K.
double ci_common_rate_analytic(const SystemConfig& cfg, const std::vector<double>& pathloss,
                               const PowerSplit& split, const std::vector<double>& u,
                               int user, const AnalyticSettings& settings);
/// Reference variant of the CI phi term: Gamma-MGF with shape N(N+1) and the
/// ||A_k||^2 calibration scale.
double ci_common_rate_analytic_mgf(const SystemConfig& cfg,
                                   const std::vector<double>& pathloss,
                                   const PowerSplit& split, const std::vector<double>& u,
                                   int user);
double ci_private_rate_analytic(const SystemConfig& cfg, const std::vector<double>& pathloss,
                                const PowerSplit& split, const std::vector<double>& u, int user);
double zf_common_rate_analytic(const SystemConfig& cfg, const std::vector<double>& pathloss,
                               const PowerSplit& split, int user,
                               const AnalyticSettings& settings);
double zf_private_rate_analytic(const SystemConfig& cfg, const std::vector<double>& pathloss,
                                const PowerSplit& split, int user);

/// The printed CI psi summand: E[exp(-(c Y |d|)^2 / (2 sigma^2))] with the
/// Gamma(N-K+1, 1/K) density. Validated against numeric integration; the
/// production CI path reuses the same kernel with calibrated parameters.
double ci_psi_printed_kernel(int n_antennas, int n_users, double c, double sigma2,
                             double diff_abs);

/// Large-N deterministic-equivalent rates under imperfect CSIT; averages
/// over user location with a Gauss-Legendre rule when distances are sampled.
struct LargeNRates {
    double common_rate = 0.0;
    double private_rate = 0.0;
    double nors_rate = 0.0;
};
LargeNRates large_n_rates_imperfect(const SystemConfig& cfg, PrecoderKind kind,
                                    const PowerSplit& split, const std::vector<double>& u,
                                    int user, double tau, double pilot_power,
                                    const AnalyticSettings& settings);

/// Mirrors rs_sum_rate_mc for the analytic estimators (halfwidth = 0).
/// Imperfect CSIT routes to the large-N forms. Random-location configs
/// average each user's rate over its own location quadrature with the other
/// users held at the location-mean gain.
RatePoint rs_sum_rate_analytic(const McContext& ctx, const AnalyticSettings& settings);

} // namespace rsim

#endif
