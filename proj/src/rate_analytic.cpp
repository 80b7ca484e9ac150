#include "rsim/rate_analytic.hpp"

#include <cmath>

#include "rsim/constellation.hpp"

namespace rsim {

namespace {

double log2M_of(const SystemConfig& cfg) {
    return std::log2(static_cast<double>(cfg.psk_order));
}

double clamp01(double r, double hi) { return std::min(std::max(r, 0.0), hi); }

struct PairAverager {
    // Averages f(delta_c, delta_p) over the collapsed inner (a,b) grid and
    // outer (am,bm) grid; the tuple-degeneracy constants cancel between the
    // phi and psi stages so they never appear here.
    const PskAlphabet& alph;
    explicit PairAverager(const PskAlphabet& a) : alph(a) {}

    template <typename F>
    double phi_mean(F&& log2_inner_sum) const {
        const int M = alph.order;
        KahanSum acc;
        for (int am = 0; am < M; ++am)
            for (int bm = 0; bm < M; ++bm) acc.add(log2_inner_sum(am, bm));
        return acc.value() / (M * M);
    }

    template <typename F>
    double psi_mean(F&& log2_inner_sum) const {
        const int M = alph.order;
        KahanSum acc;
        for (int bm = 0; bm < M; ++bm) acc.add(log2_inner_sum(bm));
        return acc.value() / M;
    }
};

} // namespace

double ci_psi_printed_kernel(int n_antennas, int n_users, double c, double sigma2,
                             double diff_abs) {
    if (n_antennas < n_users) throw ConfigError("requires N >= K");
    double shape = static_cast<double>(n_antennas - n_users + 1);
    double scale = 1.0 / static_cast<double>(n_users);
    double a2 = c * c * diff_abs * diff_abs / (2.0 * sigma2);
    return gamma_square_exp_closed_form(shape, scale, a2);
}

double zf_private_rate_analytic(const SystemConfig& cfg, const std::vector<double>& pathloss,
                                const PowerSplit& split, int user) {
    const PskAlphabet alph = psk_alphabet(cfg.psk_order);
    const double beta_p = long_term_beta_p_zf(pathloss, cfg.n_antennas);
    (void)pathloss;
    const double sigma2 = cfg.noise_power(user);
    const double coef = split.private_power * beta_p * beta_p / (2.0 * sigma2);
    PairAverager avg(alph);
    double psi = avg.psi_mean([&](int bm) {
        KahanSum s;
        for (int b = 0; b < alph.order; ++b) {
            double d2 = std::norm(alph.symbols[static_cast<size_t>(bm)] -
                                  alph.symbols[static_cast<size_t>(b)]);
            s.add(std::exp(-coef * d2));
        }
        return std::log2(s.value());
    });
    return clamp01(log2M_of(cfg) - psi, log2M_of(cfg));
}

namespace {

double zf_psi_mean(const SystemConfig& cfg, const PowerSplit& split, int user,
                   double beta_p) {
    const PskAlphabet alph = psk_alphabet(cfg.psk_order);
    const double sigma2 = cfg.noise_power(user);
    const double coef = split.private_power * beta_p * beta_p / (2.0 * sigma2);
    PairAverager avg(alph);
    return avg.psi_mean([&](int bm) {
        KahanSum s;
        for (int b = 0; b < alph.order; ++b) {
            double d2 = std::norm(alph.symbols[static_cast<size_t>(bm)] -
                                  alph.symbols[static_cast<size_t>(b)]);
            s.add(std::exp(-coef * d2));
        }
        return std::log2(s.value());
    });
}

} // namespace

namespace {

/// Nodes/weights realizing E_{Y~Gamma(shape,scale)}[f(Y)] =~ sum_r q_r f(y_r).
/// Composite Gauss-Legendre over the density's mass window: the phi
/// integrands decay like Gaussians in y, for which Laguerre-type rules lose
/// the order-doubling convergence the defaults must satisfy.
struct GammaAverageRule {
    std::vector<double> y, q;
};

GammaAverageRule gamma_average_rule(double shape, double scale, int order) {
    const int per_panel = 8;
    const int panels = std::max(3, order / per_panel);
    const double ymax = scale * (shape + 12.0 * std::sqrt(shape) + 30.0);
    QuadratureRule leg = quadrature_rule(QuadKind::Legendre, per_panel);
    GammaAverageRule rule;
    const double lnorm = -ln_gamma(shape) - shape * std::log(scale);
    // exponential-proxy quantile edges cluster panels where the Gamma mass is
    const double mean = shape * scale;
    const double u_max = std::min(-std::expm1(-ymax / mean), 1.0 - 1e-12);
    auto edge = [&](int i) {
        return -mean * std::log1p(-u_max * i / panels);
    };
    for (int p = 0; p < panels; ++p) {
        double a = edge(p);
        double b = edge(p + 1);
        double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (size_t j = 0; j < leg.nodes.size(); ++j) {
            double yy = half * leg.nodes[j] + mid;
            double lq = lnorm + (shape - 1.0) * std::log(yy) - yy / scale;
            rule.y.push_back(yy);
            rule.q.push_back(leg.weights[j] * half * std::exp(lq));
        }
    }
    return rule;
}

} // namespace

double zf_common_rate_analytic(const SystemConfig& cfg, const std::vector<double>& pathloss,
                               const PowerSplit& split, int user,
                               const AnalyticSettings& settings) {
    const PskAlphabet alph = psk_alphabet(cfg.psk_order);
    const double log2M = log2M_of(cfg);
    const double sigma2 = cfg.noise_power(user);
    const double beta_c = long_term_beta_c(pathloss, cfg.n_antennas);
    const double beta_p = long_term_beta_p_zf(pathloss, cfg.n_antennas);
    const GammaFit fit =
        gamma_fit_moments(FitStatistic::mrt_sum_Y, cfg.n_antennas, pathloss, {}, user);
    GammaAverageRule rule = gamma_average_rule(fit.shape, 1.0, settings.laguerre_order);

    const double sc = std::sqrt(split.common_power) * beta_c * fit.scale;
    const double sp = std::sqrt(split.private_power) * beta_p;
    PairAverager avg(alph);

    double phi = avg.phi_mean([&](int am, int bm) {
        KahanSum s;
        for (int a = 0; a < alph.order; ++a) {
            cplx dc = alph.symbols[static_cast<size_t>(am)] - alph.symbols[static_cast<size_t>(a)];
            for (int b = 0; b < alph.order; ++b) {
                cplx dp = alph.symbols[static_cast<size_t>(bm)] - alph.symbols[static_cast<size_t>(b)];
                for (size_t r = 0; r < rule.y.size(); ++r) {
                    cplx v = sc * rule.y[r] * dc + sp * dp;
                    s.add(rule.q[r] * std::exp(-std::norm(v) / (2.0 * sigma2)));
                }
            }
        }
        return std::log2(s.value());
    });
    double psi = zf_psi_mean(cfg, split, user, beta_p);
    return clamp01(log2M - phi + psi, log2M);
}

namespace {

double ci_psi_mean(const SystemConfig& cfg, const std::vector<double>& pathloss,
                   const PowerSplit& split, const std::vector<double>& u, int user) {
    const PskAlphabet alph = psk_alphabet(cfg.psk_order);
    const double sigma2 = cfg.noise_power(user);
    const double beta_p = long_term_beta_p_ci(pathloss, u, cfg.n_antennas);
    const double c = beta_p * pathloss[static_cast<size_t>(user)] *
                     u[static_cast<size_t>(user)] / cfg.n_users;
    const GammaFit fit =
        gamma_fit_moments(FitStatistic::ci_gain, cfg.n_antennas, pathloss, u, user);
    PairAverager avg(alph);
    return avg.psi_mean([&](int bm) {
        KahanSum s;
        for (int b = 0; b < alph.order; ++b) {
            double d2 = std::norm(alph.symbols[static_cast<size_t>(bm)] -
                                  alph.symbols[static_cast<size_t>(b)]);
            double a2 = split.private_power * c * c * d2 / (2.0 * sigma2);
            s.add(gamma_square_exp_mean(fit.shape, fit.scale, a2));
        }
        return std::log2(s.value());
    });
}

} // namespace

double ci_private_rate_analytic(const SystemConfig& cfg, const std::vector<double>& pathloss,
                                const PowerSplit& split, const std::vector<double>& u,
                                int user) {
    double psi = ci_psi_mean(cfg, pathloss, split, u, user);
    return clamp01(log2M_of(cfg) - psi, log2M_of(cfg));
}

double ci_common_rate_analytic(const SystemConfig& cfg, const std::vector<double>& pathloss,
                               const PowerSplit& split, const std::vector<double>& u,
                               int user, const AnalyticSettings& settings) {
    (void)settings;
    const PskAlphabet alph = psk_alphabet(cfg.psk_order);
    const double log2M = log2M_of(cfg);
    const double sigma2 = cfg.noise_power(user);
    const double beta_c = long_term_beta_c(pathloss, cfg.n_antennas);
    const double beta_p = long_term_beta_p_ci(pathloss, u, cfg.n_antennas);
    const double gain_k = pathloss[static_cast<size_t>(user)];
    const GammaFit yfit =
        gamma_fit_moments(FitStatistic::ci_gain, cfg.n_antennas, pathloss, u, user);

    // Exponent model: both received components ride the same random MRT-like
    // factor W = gain_k * Y, so phi averages exp(-|W|^2 Theta / (2 sigma^2))
    // through the same calibrated Gamma kernel as psi. This keeps phi and psi
    // distribution-consistent (the t = 1 collapse is exact), which the
    // printed MGF form with shape N(N+1) is not.
    const double sc = std::sqrt(split.common_power) * beta_c;
    const double sp = std::sqrt(split.private_power) * beta_p *
                      u[static_cast<size_t>(user)] / cfg.n_users;
    PairAverager avg(alph);
    double phi = avg.phi_mean([&](int am, int bm) {
        KahanSum s;
        for (int a = 0; a < alph.order; ++a) {
            cplx dc = alph.symbols[static_cast<size_t>(am)] - alph.symbols[static_cast<size_t>(a)];
            for (int b = 0; b < alph.order; ++b) {
                cplx dp = alph.symbols[static_cast<size_t>(bm)] - alph.symbols[static_cast<size_t>(b)];
                double a2 = gain_k * gain_k * std::norm(sc * dc + sp * dp) / (2.0 * sigma2);
                s.add(gamma_square_exp_mean(yfit.shape, yfit.scale, a2));
            }
        }
        return std::log2(s.value());
    });
    double psi = ci_psi_mean(cfg, pathloss, split, u, user);
    return clamp01(log2M - phi + psi, log2M);
}

double ci_common_rate_analytic_mgf(const SystemConfig& cfg,
                                   const std::vector<double>& pathloss,
                                   const PowerSplit& split, const std::vector<double>& u,
                                   int user) {
    // The printed Gamma-MGF phi: (1 + theta_k Theta / (2 sigma^2))^{-v_k},
    // v_k = N(N+1), theta_k from the ||A_k||^2 calibration. Kept as the
    // reference form; the production path above is kernel-consistent.
    const PskAlphabet alph = psk_alphabet(cfg.psk_order);
    const double log2M = log2M_of(cfg);
    const double sigma2 = cfg.noise_power(user);
    const double beta_c = long_term_beta_c(pathloss, cfg.n_antennas);
    const double beta_p = long_term_beta_p_ci(pathloss, u, cfg.n_antennas);
    const GammaFit zfit =
        gamma_fit_moments(FitStatistic::row_norm_A, cfg.n_antennas, pathloss, u, user);
    const double sc = std::sqrt(split.common_power) * beta_c;
    const double sp = std::sqrt(split.private_power) * beta_p *
                      u[static_cast<size_t>(user)] / cfg.n_users;
    PairAverager avg(alph);
    double phi = avg.phi_mean([&](int am, int bm) {
        KahanSum s;
        for (int a = 0; a < alph.order; ++a) {
            cplx dc = alph.symbols[static_cast<size_t>(am)] - alph.symbols[static_cast<size_t>(a)];
            for (int b = 0; b < alph.order; ++b) {
                cplx dp = alph.symbols[static_cast<size_t>(bm)] - alph.symbols[static_cast<size_t>(b)];
                double theta_big = std::norm(sc * dc + sp * dp);
                s.add(std::exp(-zfit.shape *
                               std::log1p(zfit.scale * theta_big / (2.0 * sigma2))));
            }
        }
        return std::log2(s.value());
    });
    double psi = ci_psi_mean(cfg, pathloss, split, u, user);
    return clamp01(log2M - phi + psi, log2M);
}

namespace {

/// E over the radial user-location density of `f(r)`: composite affine-mapped
/// Gauss-Legendre panels (the integrand varies over decades near R0, so a
/// single panel misses the order-doubling convergence target).
template <typename F>
double location_average(const SystemConfig& cfg, int order, F&& f) {
    const int per_panel = 8;
    const int panels = std::max(2, order / per_panel);
    QuadratureRule rule = quadrature_rule(QuadKind::Legendre, per_panel);
    const double den = (cfg.radius - cfg.min_radius) * (cfg.radius - cfg.min_radius);
    KahanSum s;
    for (int p = 0; p < panels; ++p) {
        // geometric panel edges resolve the steep small-radius region
        double a = cfg.min_radius * std::pow(cfg.radius / cfg.min_radius,
                                             static_cast<double>(p) / panels);
        double b = cfg.min_radius * std::pow(cfg.radius / cfg.min_radius,
                                             static_cast<double>(p + 1) / panels);
        double half = 0.5 * (b - a);
        double mid = 0.5 * (b + a);
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
            double r = half * rule.nodes[j] + mid;
            double fd = 2.0 * (r - cfg.min_radius) / den;
            s.add(rule.weights[j] * half * fd * f(r));
        }
    }
    return s.value();
}

struct LargeNAmps {
    double amp_c = 0.0; // multiplies the common difference
    double amp_p = 0.0; // multiplies the own private difference
};

LargeNAmps large_n_amps(const SystemConfig& cfg, PrecoderKind kind, const PowerSplit& split,
                        const std::vector<double>& u, int user, double sigma_hat2_k,
                        double beta_c, double beta_p) {
    LargeNAmps a;
    const double n = static_cast<double>(cfg.n_antennas);
    a.amp_c = std::sqrt(split.common_power) * beta_c * n * sigma_hat2_k;
    if (kind == PrecoderKind::CI)
        a.amp_p = std::sqrt(split.private_power) * n * beta_p *
                  u[static_cast<size_t>(user)] / cfg.n_users * sigma_hat2_k;
    else
        a.amp_p = std::sqrt(split.private_power) * beta_p;
    return a;
}

} // namespace

LargeNRates large_n_rates_imperfect(const SystemConfig& cfg, PrecoderKind kind,
                                    const PowerSplit& split, const std::vector<double>& u,
                                    int user, double tau, double pilot_power,
                                    const AnalyticSettings& settings) {
    const PskAlphabet alph = psk_alphabet(cfg.psk_order);
    const double log2M = log2M_of(cfg);
    const double sigma2 = cfg.noise_power(user);
    const double pu = tau * pilot_power;
    const int M = alph.order;

    // Row variances of the estimate: fixed distances use them directly; the
    // random-location mode uses the location-averaged variance for the
    // normalization constants and keeps the location dependence in the
    // quadratured exponent.
    std::vector<double> shat(static_cast<size_t>(cfg.n_users));
    if (cfg.fixed_distances()) {
        auto gains = pathloss_gains(cfg, *cfg.distances);
        for (int j = 0; j < cfg.n_users; ++j)
            shat[static_cast<size_t>(j)] = estimate_sigma_hat2(gains[static_cast<size_t>(j)], pu);
    } else {
        double mean_shat = location_average(cfg, settings.location_order, [&](double r) {
            return estimate_sigma_hat2(std::pow(r, -cfg.pathloss_exponent), pu);
        });
        shat.assign(static_cast<size_t>(cfg.n_users), mean_shat);
    }
    const double beta_c = long_term_beta_c(shat, cfg.n_antennas);
    const double beta_p = (kind == PrecoderKind::ZF)
                              ? long_term_beta_p_zf(shat, cfg.n_antennas)
                              : long_term_beta_p_ci(shat, u, cfg.n_antennas);

    // E_r[ exp(-|amp_c(r) dc + amp_p(r) dp|^2 / (2 sigma^2)) ]
    auto pair_kernel = [&](cplx dc, cplx dp, const PowerSplit& sp) {
        if (cfg.fixed_distances()) {
            LargeNAmps a = large_n_amps(cfg, kind, sp, u, user, shat[static_cast<size_t>(user)],
                                        beta_c, beta_p);
            return std::exp(-std::norm(a.amp_c * dc + a.amp_p * dp) / (2.0 * sigma2));
        }
        return location_average(cfg, settings.location_order, [&](double r) {
            double s2 = estimate_sigma_hat2(std::pow(r, -cfg.pathloss_exponent), pu);
            LargeNAmps a = large_n_amps(cfg, kind, sp, u, user, s2, beta_c, beta_p);
            return std::exp(-std::norm(a.amp_c * dc + a.amp_p * dp) / (2.0 * sigma2));
        });
    };

    PairAverager avg(alph);
    auto psi_mean_for = [&](const PowerSplit& sp) {
        return avg.psi_mean([&](int bm) {
            KahanSum s;
            for (int b = 0; b < M; ++b) {
                cplx dp = alph.symbols[static_cast<size_t>(bm)] -
                          alph.symbols[static_cast<size_t>(b)];
                s.add(pair_kernel(cplx(0, 0), dp, sp));
            }
            return std::log2(s.value());
        });
    };

    double phi = avg.phi_mean([&](int am, int bm) {
        KahanSum s;
        for (int a = 0; a < M; ++a) {
            cplx dc = alph.symbols[static_cast<size_t>(am)] - alph.symbols[static_cast<size_t>(a)];
            for (int b = 0; b < M; ++b) {
                cplx dp = alph.symbols[static_cast<size_t>(bm)] -
                          alph.symbols[static_cast<size_t>(b)];
                s.add(pair_kernel(dc, dp, split));
            }
        }
        return std::log2(s.value());
    });
    double psi = psi_mean_for(split);

    LargeNRates rates;
    rates.common_rate = clamp01(log2M - phi + psi, log2M);
    rates.private_rate = clamp01(log2M - psi, log2M);
    PowerSplit full = derive_power_split(cfg.total_power, 1.0, cfg.n_users);
    rates.nors_rate = clamp01(log2M - psi_mean_for(full), log2M);
    return rates;
}

namespace {

struct PerUserRates {
    double common = 0.0;
    double priv = 0.0;
};

PerUserRates per_user_analytic(const McContext& ctx, const std::vector<double>& pathloss,
                               int user, const AnalyticSettings& settings) {
    PerUserRates r;
    const bool ci = scheme_kind(ctx.scheme) == PrecoderKind::CI;
    const bool rs = scheme_is_rs(ctx.scheme);
    PowerSplit split = rs ? ctx.split
                          : derive_power_split(ctx.cfg.total_power, 1.0, ctx.cfg.n_users);
    if (ctx.csit.mode == CsitMode::imperfect) {
        LargeNRates ln = large_n_rates_imperfect(
            ctx.cfg, scheme_kind(ctx.scheme), split, ctx.u, user, ctx.csit.tau,
            ctx.csit.pilot_power, settings);
        r.common = rs ? ln.common_rate : 0.0;
        r.priv = rs ? ln.private_rate : ln.nors_rate;
        return r;
    }
    if (ci) {
        if (rs) r.common = ci_common_rate_analytic(ctx.cfg, pathloss, split, ctx.u, user, settings);
        r.priv = ci_private_rate_analytic(ctx.cfg, pathloss, split, ctx.u, user);
    } else {
        if (rs) r.common = zf_common_rate_analytic(ctx.cfg, pathloss, split, user, settings);
        r.priv = zf_private_rate_analytic(ctx.cfg, pathloss, split, user);
    }
    return r;
}

} // namespace

RatePoint rs_sum_rate_analytic(const McContext& ctx, const AnalyticSettings& settings) {
    ctx.cfg.validate();
    const int K = ctx.cfg.n_users;
    RatePoint pt;
    pt.snr_db = ctx.snr_db;
    pt.t = scheme_is_rs(ctx.scheme) ? ctx.split.t : 1.0;
    pt.scheme = ctx.scheme;
    pt.csit = ctx.csit.mode;
    pt.samples = 0;
    pt.n_noise = 0;
    pt.common_rates.assign(static_cast<size_t>(K), 0.0);
    pt.private_rates.assign(static_cast<size_t>(K), 0.0);

    const bool random_loc =
        !ctx.cfg.fixed_distances() && ctx.csit.mode == CsitMode::perfect;
    std::vector<double> gains;
    if (ctx.cfg.fixed_distances()) {
        gains = pathloss_gains(ctx.cfg, *ctx.cfg.distances);
    } else {
        double mean_gain = location_average(ctx.cfg, settings.location_order, [&](double r) {
            return std::pow(r, -ctx.cfg.pathloss_exponent);
        });
        gains.assign(static_cast<size_t>(K), mean_gain);
    }

    for (int k = 0; k < K; ++k) {
        PerUserRates r;
        if (random_loc) {
            // Average this user's rate over its own location; other users sit
            // at the location-mean gain.
            double pc = 0, pp = 0;
            double mass = 0;
            QuadratureRule rule = quadrature_rule(QuadKind::Legendre, settings.location_order);
            const double half = 0.5 * (ctx.cfg.radius - ctx.cfg.min_radius);
            const double mid = 0.5 * (ctx.cfg.radius + ctx.cfg.min_radius);
            const double den =
                (ctx.cfg.radius - ctx.cfg.min_radius) * (ctx.cfg.radius - ctx.cfg.min_radius);
            for (size_t j = 0; j < rule.nodes.size(); ++j) {
                double rad = half * rule.nodes[j] + mid;
                double w = rule.weights[j] * half * 2.0 * (rad - ctx.cfg.min_radius) / den;
                std::vector<double> g = gains;
                g[static_cast<size_t>(k)] = std::pow(rad, -ctx.cfg.pathloss_exponent);
                PerUserRates rj = per_user_analytic(ctx, g, k, settings);
                pc += w * rj.common;
                pp += w * rj.priv;
                mass += w;
            }
            r.common = pc / mass;
            r.priv = pp / mass;
        } else {
            r = per_user_analytic(ctx, gains, k, settings);
        }
        pt.common_rates[static_cast<size_t>(k)] = r.common;
        pt.private_rates[static_cast<size_t>(k)] = r.priv;
    }

    if (scheme_is_rs(ctx.scheme)) {
        double worst = pt.common_rates[0];
        for (double c : pt.common_rates) worst = std::min(worst, c);
        pt.rate_common_min = worst;
    }
    for (double p : pt.private_rates) pt.rate_private_sum += p;
    pt.sum_rate = pt.rate_common_min + pt.rate_private_sum;
    return pt;
}

} // namespace rsim
