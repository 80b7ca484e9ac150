#include "rsim/channel.hpp"

namespace rsim {

namespace {

CMatrix gaussian_matrix(int rows, int cols, const std::vector<double>& row_var, Rng& rng) {
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = rng.cnormal(row_var[static_cast<size_t>(r)]);
    return m;
}

} // namespace

ChannelRealization sample_channel(const SystemConfig& cfg,
                                  const std::vector<double>& pathloss, Rng& rng) {
    ChannelRealization ch;
    ch.pathloss = pathloss;
    ch.H = gaussian_matrix(cfg.n_users, cfg.n_antennas, pathloss, rng);
    ch.Hhat = ch.H;
    ch.E = CMatrix::Zero(cfg.n_users, cfg.n_antennas);
    ch.sigma_hat2 = pathloss;
    ch.sigma_e2.assign(pathloss.size(), 0.0);
    ch.imperfect = false;
    return ch;
}

double estimate_sigma_hat2(double g, double pu) { return pu * g * g / (pu * g + 1.0); }
double estimate_sigma_e2(double g, double pu) { return g / (pu * g + 1.0); }

ChannelRealization estimate_channel(const SystemConfig& cfg,
                                    const std::vector<double>& pathloss,
                                    double tau, double pilot_power, Rng& rng) {
    if (!(tau >= 1.0)) throw ConfigError("tau must be >= 1");
    if (!(pilot_power > 0.0)) throw ConfigError("pilot power must be positive");
    double pu = tau * pilot_power;
    ChannelRealization ch;
    ch.pathloss = pathloss;
    ch.sigma_hat2.resize(pathloss.size());
    ch.sigma_e2.resize(pathloss.size());
    for (size_t k = 0; k < pathloss.size(); ++k) {
        ch.sigma_hat2[k] = estimate_sigma_hat2(pathloss[k], pu);
        ch.sigma_e2[k] = estimate_sigma_e2(pathloss[k], pu);
    }
    ch.Hhat = gaussian_matrix(cfg.n_users, cfg.n_antennas, ch.sigma_hat2, rng);
    ch.E = gaussian_matrix(cfg.n_users, cfg.n_antennas, ch.sigma_e2, rng);
    ch.H = ch.Hhat + ch.E;
    ch.imperfect = true;
    return ch;
}

LlnReport lln_diagnostics(int n, double var_a, double var_b, int trials, Rng& rng) {
    if (n < 1) throw ConfigError("lln_diagnostics requires n >= 1");
    KahanSum aa, bb, ab_re, ab_im, ab2;
    double sqrt_n = std::sqrt(static_cast<double>(n));
    for (int t = 0; t < trials; ++t) {
        cplx dot(0, 0);
        double na = 0, nb = 0;
        for (int i = 0; i < n; ++i) {
            cplx a = rng.cnormal(var_a);
            cplx b = rng.cnormal(var_b);
            na += std::norm(a);
            nb += std::norm(b);
            dot += std::conj(a) * b;
        }
        aa.add(na / n);
        bb.add(nb / n);
        ab_re.add(dot.real() / n);
        ab_im.add(dot.imag() / n);
        ab2.add(std::norm(dot / sqrt_n));
    }
    LlnReport rep;
    rep.mean_aa_over_n = aa.value() / trials;
    rep.mean_bb_over_n = bb.value() / trials;
    rep.mean_ab_over_n = std::abs(cplx(ab_re.value(), ab_im.value())) / trials;
    rep.var_ab_over_sqrtn = ab2.value() / trials;
    return rep;
}

} // namespace rsim
