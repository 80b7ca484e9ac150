#ifndef RSIM_PRECODING_HPP
#define RSIM_PRECODING_HPP

#include "rsim/channel.hpp"

namespace rsim {

enum class PrecoderKind { CI, ZF };

/// Common + private precoders with their normalization constants. For CI the
/// private precoder depends on the transmitted private symbol vector, so W_p
/// here is the one built for a specific x_p (symbol_dependent = true).
struct PrecoderSet {
    CVector w_c;     // N, common (MRT), beta_c already applied
    CMatrix W_p;     // N x K private, beta_p already applied
    double beta_c = 0.0;
    double beta_p = 0.0;
    PrecoderKind kind = PrecoderKind::ZF;
    bool symbol_dependent = false;
};

/// CI weight vector, 1^T u = 1. Default is uniform 1/K.
std::vector<double> uniform_ci_weights(int n_users);

/// Long-term normalization constants. They are computed from the row
/// variances of the matrix the precoder is built from (D under perfect CSIT,
/// D-hat under imperfect), which keeps E{||s||^2} = P in both modes.
double long_term_beta_c(const std::vector<double>& row_var, int n_antennas);

/// ZF closed form sqrt(Gamma(2-K+N) / ((N-K)! sum_k 1/var_k)); the sum
/// reduces to K at unit gains, recovering sqrt(Gamma(2-K+N) / (K (N-K)!)).
double long_term_beta_p_zf(const std::vector<double>& row_var, int n_antennas);

/// CI closed form with the power-exact K^{3/2} scaling:
/// beta_p = K^{3/2} / sqrt(N sum_j u_j^2 var_j).
double long_term_beta_p_ci(const std::vector<double>& row_var,
                           const std::vector<double>& u, int n_antennas);

/// w_c = beta_c * sum_i h_i^H.
CVector mrt_common(const CMatrix& H_used, double beta_c);

/// W_p = beta_p * H^H (H H^H)^{-1}. Throws NumericError when H H^H is
/// numerically singular (condition number above 1e12); callers redraw.
CMatrix zf_private(const CMatrix& H_used, double beta_p);

/// Elementwise V^{-1}u for unit-modulus x_p: (V^{-1}u)_k = conj(x_k) *
/// sum_j A_kj x_j u_j with A = H H^H. No inverse is needed for this vector.
CVector ci_rotation_vector(const CMatrix& gram, const CVector& x_p,
                           const std::vector<double>& u);

/// W_p = (beta_p/K) H^H (H H^H)^{-1} diag(V^{-1} u).
CMatrix ci_private(const CMatrix& H_used, const CVector& x_p,
                   const std::vector<double>& u, double beta_p);

/// Both long-term constants for a given kind; CI uses the configured weights.
struct LongTermBetas {
    double beta_c = 0.0;
    double beta_p = 0.0;
};
LongTermBetas long_term_betas(const std::vector<double>& row_var, int n_antennas,
                              PrecoderKind kind, const std::vector<double>& u);

/// Instantaneous (per-realization) normalization; diagnostics only, the
/// analysis and all defaults use the long-term constants.
double instantaneous_beta_c(const CMatrix& H_used);
double instantaneous_beta_p_zf(const CMatrix& H_used, const CVector& x_p);
double instantaneous_beta_p_ci(const CMatrix& H_used, const CVector& x_p,
                               const std::vector<double>& u);

PrecoderSet build_precoders(PrecoderKind kind, const CMatrix& H_used,
                            const std::vector<double>& row_var,
                            const std::vector<double>& u, const CVector& x_p,
                            bool instantaneous = false);

/// Gram matrix H H^H with the conditioning guard shared by both precoders.
CMatrix gram_checked(const CMatrix& H_used);

} // namespace rsim

#endif
