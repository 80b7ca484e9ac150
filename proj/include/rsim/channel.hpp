#ifndef RSIM_CHANNEL_HPP
#define RSIM_CHANNEL_HPP

#include <Eigen/Dense>

#include "rsim/common.hpp"
#include "rsim/config.hpp"
#include "rsim/rng.hpp"

namespace rsim {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;

/// One fading realization. Row k of H has i.i.d. CN(0, gain_k) entries
/// (H = D^{1/2} G); under imperfect CSIT the decomposition H = Hhat + E holds
/// elementwise with the per-row variance split sigma_hat2 + sigma_e2 = gain.
struct ChannelRealization {
    CMatrix H;    // true channel, K x N
    CMatrix Hhat; // estimate used by the precoder (== H under perfect CSIT)
    CMatrix E;    // estimation error (zero under perfect CSIT)
    std::vector<double> pathloss;   // diagonal of D
    std::vector<double> sigma_hat2; // per-row variance of Hhat
    std::vector<double> sigma_e2;   // per-row variance of E
    bool imperfect = false;
};

ChannelRealization sample_channel(const SystemConfig& cfg,
                                  const std::vector<double>& pathloss, Rng& rng);

/// Imperfect CSIT: Hhat and E drawn independently with the MMSE training
/// variances sigma_hat2 = p_u*g^2/(p_u*g+1), sigma_e2 = g/(p_u*g+1),
/// p_u = tau * pilot_power. No pilot waveform is simulated; only the
/// resulting statistics enter any rate expression.
ChannelRealization estimate_channel(const SystemConfig& cfg,
                                    const std::vector<double>& pathloss,
                                    double tau, double pilot_power, Rng& rng);

double estimate_sigma_hat2(double pathloss_gain, double pu);
double estimate_sigma_e2(double pathloss_gain, double pu);

/// Empirical statistics of the four Lemma-1 quantities over `trials` draws of
/// independent n-vectors with entry variances var_a, var_b. Feeds the
/// law-of-large-numbers tests.
struct LlnReport {
    double mean_aa_over_n = 0;  // (a^H a)/n
    double mean_bb_over_n = 0;  // (b^H b)/n
    double mean_ab_over_n = 0;  // |(a^H b)/n| averaged as complex mean magnitude
    double var_ab_over_sqrtn = 0; // empirical variance of (a^H b)/sqrt(n)
};

LlnReport lln_diagnostics(int n, double var_a, double var_b, int trials, Rng& rng);

} // namespace rsim

#endif
