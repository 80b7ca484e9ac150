#include "rsim/precoding.hpp"

#include <cmath>

namespace rsim {

std::vector<double> uniform_ci_weights(int n_users) {
    return std::vector<double>(static_cast<size_t>(n_users), 1.0 / n_users);
}

double long_term_beta_c(const std::vector<double>& row_var, int n_antennas) {
    double sum = 0.0;
    for (double v : row_var) sum += v;
    return 1.0 / std::sqrt(n_antennas * sum);
}

double long_term_beta_p_zf(const std::vector<double>& row_var, int n_antennas) {
    const int n_users = static_cast<int>(row_var.size());
    double inv_sum = 0.0;
    for (double v : row_var) inv_sum += 1.0 / v;
    double num = std::tgamma(static_cast<double>(2 - n_users + n_antennas));
    double den = inv_sum * std::tgamma(static_cast<double>(n_antennas - n_users + 1));
    return std::sqrt(num / den);
}

double long_term_beta_p_ci(const std::vector<double>& row_var,
                           const std::vector<double>& u, int n_antennas) {
    double sum = 0.0;
    for (size_t j = 0; j < row_var.size(); ++j) sum += u[j] * u[j] * row_var[j];
    double k = static_cast<double>(row_var.size());
    return k * std::sqrt(k) / std::sqrt(n_antennas * sum);
}

CMatrix gram_checked(const CMatrix& H_used) {
    CMatrix gram = H_used * H_used.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double lo = ev.minCoeff();
    double hi = ev.maxCoeff();
    if (!(lo > 0.0) || hi / lo > 1e12)
        throw NumericError("H H^H numerically singular; redraw the channel");
    return gram;
}

CVector mrt_common(const CMatrix& H_used, double beta_c) {
    return beta_c * H_used.colwise().sum().adjoint();
}

CMatrix zf_private(const CMatrix& H_used, double beta_p) {
    CMatrix gram = gram_checked(H_used);
    return beta_p * H_used.adjoint() * gram.ldlt().solve(
                        CMatrix::Identity(H_used.rows(), H_used.rows()));
}

CVector ci_rotation_vector(const CMatrix& gram, const CVector& x_p,
                           const std::vector<double>& u) {
    const int k_users = static_cast<int>(gram.rows());
    CVector xu(k_users);
    for (int j = 0; j < k_users; ++j) xu(j) = x_p(j) * u[static_cast<size_t>(j)];
    CVector ax = gram * xu;
    CVector w(k_users);
    for (int k = 0; k < k_users; ++k) w(k) = std::conj(x_p(k)) * ax(k);
    return w;
}

CMatrix ci_private(const CMatrix& H_used, const CVector& x_p,
                   const std::vector<double>& u, double beta_p) {
    const int k_users = static_cast<int>(H_used.rows());
    CMatrix gram = gram_checked(H_used);
    CVector w = ci_rotation_vector(gram, x_p, u);
    CMatrix pinv = H_used.adjoint() * gram.ldlt().solve(
                       CMatrix::Identity(k_users, k_users));
    return (beta_p / k_users) * pinv * w.asDiagonal();
}

LongTermBetas long_term_betas(const std::vector<double>& row_var, int n_antennas,
                              PrecoderKind kind, const std::vector<double>& u) {
    LongTermBetas b;
    b.beta_c = long_term_beta_c(row_var, n_antennas);
    b.beta_p = (kind == PrecoderKind::ZF) ? long_term_beta_p_zf(row_var, n_antennas)
                                          : long_term_beta_p_ci(row_var, u, n_antennas);
    return b;
}

double instantaneous_beta_c(const CMatrix& H_used) {
    CVector dir = H_used.colwise().sum().adjoint();
    return 1.0 / dir.norm();
}

double instantaneous_beta_p_zf(const CMatrix& H_used, const CVector& x_p) {
    CMatrix gram = gram_checked(H_used);
    double q = std::real(x_p.dot(gram.ldlt().solve(x_p)));
    double k = static_cast<double>(H_used.rows());
    return std::sqrt(k / q);
}

double instantaneous_beta_p_ci(const CMatrix& H_used, const CVector& x_p,
                               const std::vector<double>& u) {
    CMatrix gram = gram_checked(H_used);
    CVector w = ci_rotation_vector(gram, x_p, u);
    // u real, w = V^{-1}u, so u^H V^{-1} u = sum_k u_k w_k (real for HPD V).
    cplx q(0, 0);
    for (int k = 0; k < w.size(); ++k) q += u[static_cast<size_t>(k)] * w(k);
    double k = static_cast<double>(H_used.rows());
    return k * std::sqrt(k) / std::sqrt(std::real(q));
}

PrecoderSet build_precoders(PrecoderKind kind, const CMatrix& H_used,
                            const std::vector<double>& row_var,
                            const std::vector<double>& u, const CVector& x_p,
                            bool instantaneous) {
    PrecoderSet p;
    p.kind = kind;
    p.symbol_dependent = (kind == PrecoderKind::CI);
    const int n = static_cast<int>(H_used.cols());
    if (instantaneous) {
        p.beta_c = instantaneous_beta_c(H_used);
        p.beta_p = (kind == PrecoderKind::ZF) ? instantaneous_beta_p_zf(H_used, x_p)
                                              : instantaneous_beta_p_ci(H_used, x_p, u);
    } else {
        LongTermBetas b = long_term_betas(row_var, n, kind, u);
        p.beta_c = b.beta_c;
        p.beta_p = b.beta_p;
    }
    p.w_c = mrt_common(H_used, p.beta_c);
    p.W_p = (kind == PrecoderKind::ZF) ? zf_private(H_used, p.beta_p)
                                       : ci_private(H_used, x_p, u, p.beta_p);
    return p;
}

} // namespace rsim
