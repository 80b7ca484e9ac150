// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rsim/constellation.hpp"
#include "rsim/power_alloc.hpp"
#include "rsim/rate_analytic.hpp"
#include "rsim/sweep.hpp"

using namespace rsim;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s  #%-2d %s — %s\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

McContext make_ctx(int n, int k, int order, double snr_db, double t, Scheme scheme,
                   int n_channel = 500, int n_noise = 16) {
    McContext ctx;
    ctx.cfg.n_antennas = n;
    ctx.cfg.n_users = k;
    ctx.cfg.psk_order = order;
    ctx.cfg.sigma2.assign(static_cast<size_t>(k), 1.0);
    ctx.cfg.distances = std::vector<double>(static_cast<size_t>(k), 1.0);
    ctx.cfg.total_power = db_to_linear(snr_db);
    ctx.scheme = scheme;
    ctx.split = derive_power_split(ctx.cfg.total_power, t, k);
    ctx.u = uniform_ci_weights(k);
    ctx.settings.n_channel = n_channel;
    ctx.settings.n_noise = n_noise;
    ctx.settings.workers = 2;
    ctx.master_seed = 2024;
    ctx.snr_db = snr_db;
    ctx.snr_index = static_cast<std::uint64_t>(std::lround(snr_db * 10.0 + 4000.0));
    return ctx;
}

double best_t_rate(const McContext& ctx, int grid, double* t_star = nullptr) {
    auto res = grid_search_t(ergodic_rate_fn(ctx), grid);
    if (t_star) *t_star = res.t_star;
    return res.rate_at_t;
}

/// SNR (dB) where a curve first reaches `level`, linear interpolation.
double crossing_db(const std::vector<double>& snr, const std::vector<double>& rate,
                   double level) {
    for (size_t i = 1; i < rate.size(); ++i) {
        if (rate[i] >= level && rate[i - 1] < level) {
            double f = (level - rate[i - 1]) / (rate[i] - rate[i - 1]);
            return snr[i - 1] + f * (snr[i] - snr[i - 1]);
        }
    }
    return rate.back() >= level ? snr.front() : 1e9;
}

void criterion_1() {
    // Saturation levels at 40 dB with fixed unit distances.
    bool pass = true;
    char buf[256];
    std::string detail;
    struct Case {
        int order;
        Scheme scheme;
        double target;
    };
    const Case cases[] = {
        {4, Scheme::RS_CI, 6.0},   {4, Scheme::RS_ZF, 6.0},
        {4, Scheme::NORS_CI, 4.0}, {4, Scheme::NORS_ZF, 4.0},
        {2, Scheme::RS_CI, 3.0},   {2, Scheme::RS_ZF, 3.0},
        {2, Scheme::NORS_CI, 2.0}, {2, Scheme::NORS_ZF, 2.0},
    };
    for (const auto& c : cases) {
        McContext ctx = make_ctx(3, 2, c.order, 40.0, 0.8, c.scheme, 400, 10);
        RatePoint pt = rs_sum_rate_mc(ctx);
        bool ok = std::abs(pt.sum_rate - c.target) <= 0.05;
        pass = pass && ok;
        if (!ok) {
            std::snprintf(buf, sizeof(buf), "[%s M=%d: %.3f vs %.2f] ",
                          scheme_name(c.scheme).c_str(), c.order, pt.sum_rate, c.target);
            detail += buf;
        }
    }
    if (pass) detail = "RS 6.00/3.00 and NoRS 4.00/2.00 all within 0.05";
    report(1, pass, "saturation levels at 40 dB", detail);
}

void criterion_2() {
    // Paired-channel sweep, per-scheme best split.
    std::vector<double> grid, ci_curve, zf_curve;
    double worst_gap = 1e9;
    double worst_at = 0;
    for (double snr = 0.0; snr <= 30.0; snr += 2.0) {
        McContext ci = make_ctx(3, 2, 4, snr, 0.8, Scheme::RS_CI, 400, 10);
        McContext zf = ci;
        zf.scheme = Scheme::RS_ZF;
        double rci = best_t_rate(ci, 11);
        double rzf = best_t_rate(zf, 11);
        grid.push_back(snr);
        ci_curve.push_back(rci);
        zf_curve.push_back(rzf);
        if (rci - rzf < worst_gap) {
            worst_gap = rci - rzf;
            worst_at = snr;
        }
    }
    double ci_at = crossing_db(grid, ci_curve, 5.0);
    double zf_at = crossing_db(grid, zf_curve, 5.0);
    bool clause1 = worst_gap >= -0.05;
    bool clause2 = (zf_at - ci_at) >= 5.0;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "min(CI-ZF) = %+.3f bits at %.0f dB (need >= -0.05); 5.0-bit "
                  "crossings CI %.2f dB vs ZF %.2f dB (need >= 5 dB earlier)",
                  worst_gap, worst_at, ci_at, zf_at);
    report(2, clause1 && clause2, "CI vs ZF ordering (MC, best split)", buf);
}

void criterion_3() {
    McContext ctx = make_ctx(3, 2, 4, 0.0, 1.0, Scheme::RS_CI, 500, 16);
    auto res = grid_search_t(ergodic_rate_fn(ctx), 101);
    McContext nors = ctx;
    nors.scheme = Scheme::NORS_CI;
    RatePoint nors_pt = rs_sum_rate_mc(nors);
    McContext at = ctx;
    at.split = derive_power_split(at.cfg.total_power, res.t_star, 2);
    RatePoint rs_pt = rs_sum_rate_mc(at);
    double gap = std::abs(rs_pt.sum_rate - nors_pt.sum_rate);
    double hw = std::max(rs_pt.ci_halfwidth, nors_pt.ci_halfwidth);
    bool pass = res.t_star >= 0.9 && gap <= hw;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "t* = %.2f (need >= 0.9); |RS - NoRS| = %.3f vs halfwidth %.3f",
                  res.t_star, gap, hw);
    report(3, pass, "low-SNR degenerate split at 0 dB", buf);
}

void criterion_4() {
    McContext ctx = make_ctx(3, 2, 4, 30.0, 1.0, Scheme::RS_CI, 500, 16);
    auto res = grid_search_t(ergodic_rate_fn(ctx), 21);
    McContext nors = ctx;
    nors.scheme = Scheme::NORS_CI;
    RatePoint nors_pt = rs_sum_rate_mc(nors);
    bool pass = res.t_star <= 0.95 && (res.rate_at_t - nors_pt.sum_rate) >= 1.5;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "t* = %.2f (need <= 0.95); RS - NoRS = %.2f bits (need >= 1.5)",
                  res.t_star, res.rate_at_t - nors_pt.sum_rate);
    report(4, pass, "high-SNR split at 30 dB", buf);
}

void criterion_5() {
    AnalyticSettings as;
    bool pass = true;
    double worst = 0.0;
    std::string where;
    for (Scheme scheme : {Scheme::RS_ZF, Scheme::RS_CI}) {
        for (double snr = 0.0; snr <= 30.0; snr += 2.0) {
            McContext ctx = make_ctx(3, 2, 2, snr, 0.8, scheme, 600, 16);
            double tstar;
            best_t_rate(ctx, 11, &tstar);
            ctx.split = derive_power_split(ctx.cfg.total_power, tstar, 2);
            RatePoint mc = rs_sum_rate_mc(ctx);
            RatePoint an = rs_sum_rate_analytic(ctx, as);
            double tol = std::max(0.3, 0.1 * mc.sum_rate);
            double err = std::abs(an.sum_rate - mc.sum_rate);
            if (err > worst) {
                worst = err;
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%s @%g dB (tol %.2f)",
                              scheme_name(scheme).c_str(), snr, tol);
                where = buf;
            }
            pass = pass && err <= tol;
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf), "max |analytic - MC| = %.3f bits at %s", worst,
                  where.c_str());
    report(5, pass, "analytic vs MC agreement (BPSK)", buf);
}

void criterion_6() {
    Rng rng(404);
    double worst = 0.0;
    const double bp = long_term_beta_p_zf({1.0, 1.0}, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        CMatrix h(2, 3);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c) h(r, c) = rng.cnormal(1.0);
        CMatrix wp = zf_private(h, bp);
        worst = std::max(worst,
                         (h * wp - bp * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff());
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max |H W - beta I| = %.2e over 1000 channels", worst);
    report(6, worst < 1e-10, "ZF algebraic invariant", buf);
}

void criterion_7() {
    Rng rng(505);
    auto u = uniform_ci_weights(2);
    const double bp = long_term_beta_p_ci({1.0, 1.0}, u, 3);
    auto alph = psk_alphabet(4);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        CMatrix h(2, 3);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c) h(r, c) = rng.cnormal(1.0);
        CVector x(2);
        for (int k = 0; k < 2; ++k)
            x(k) = alph.symbols[rng.next_u64() % 4];
        CMatrix wp = ci_private(h, x, u, bp);
        CMatrix gram = h * h.adjoint();
        CVector w = ci_rotation_vector(gram, x, u);
        CVector rx = h * (wp * x);
        for (int k = 0; k < 2; ++k)
            worst = std::max(worst, std::abs(rx(k) - bp / 2.0 * w(k) * x(k)));
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "max |rx_k - (beta/K)[V^-1 u]_k x_k| = %.2e over 1000 pairs", worst);
    report(7, worst < 1e-10, "CI alignment invariant", buf);
}

void criterion_8() {
    bool pass = true;
    double worst = 0.0;
    for (double snr = -10.0; snr <= 20.0; snr += 2.5) {
        McContext ctx = make_ctx(1, 1, 2, snr, 1.0, Scheme::RS_ZF, 2000, 40);
        auto mc = private_rate_mc(ctx, 0);
        double ref = oracles::bpsk_mi(db_to_linear(snr));
        worst = std::max(worst, std::abs(mc.rate - ref));
        pass = pass && std::abs(mc.rate - ref) <= 1e-2;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "max |MC - Gauss-quadrature BPSK MI| = %.4f bits over -10..20 dB", worst);
    report(8, pass, "scalar BPSK mutual-information oracle", buf);
}

void criterion_9() {
    bool pass = true;
    std::string detail;
    double e1 = std::abs(kummer_1f1(0.7, 1.9, 0.0) - 1.0);
    double e2 = std::abs(kummer_1f1(1.0, 1.0, 2.5) - std::exp(2.5)) / std::exp(2.5);
    pass = pass && e1 < 1e-10 && e2 < 1e-10;

    double worst = 0.0;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 2}, {4, 3}, {4, 2}, {3, 1}}) {
        for (double c : {0.7, 1.0, 2.0}) {
            for (double s2 : {0.5, 1.0}) {
                double shape = n - k + 1, scale = 1.0 / k;
                double a2 = c * c * 4.0 / (2.0 * s2);
                double hi = scale * (shape + 60.0);
                double ref = oracles::integrate(
                    [&](double y) {
                        return std::exp((shape - 1.0) * std::log(y) - y / scale -
                                        std::lgamma(shape) - shape * std::log(scale) -
                                        a2 * y * y);
                    },
                    1e-12, hi, 1e-12);
                double got = ci_psi_printed_kernel(n, k, c, s2, 2.0);
                worst = std::max(worst, std::abs(got - ref) / ref);
            }
        }
    }
    pass = pass && worst < 1e-6;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "1F1 identity errors %.1e / %.1e; closed form vs integral rel err %.1e",
                  e1, e2, worst);
    report(9, pass, "special-function suite", buf);
}

void criterion_10() {
    Rng rng(606);
    auto u = uniform_ci_weights(2);
    auto alph = psk_alphabet(4);
    const double total_power = 2.0;
    auto split = derive_power_split(total_power, 0.7, 2);
    bool pass = true;
    std::string detail;
    for (Scheme scheme : {Scheme::RS_CI, Scheme::RS_ZF, Scheme::NORS_CI, Scheme::NORS_ZF}) {
        PowerSplit sp = scheme_is_rs(scheme) ? split : derive_power_split(total_power, 1.0, 2);
        for (bool imperfect : {false, true}) {
            std::vector<double> row_var = {1.0, 0.5};
            if (imperfect)
                for (auto& g : row_var) g = estimate_sigma_hat2(g, 10.0);
            KahanSum acc;
            // the ZF quadratic form has a heavy tail at N-K = 1, so the mean
            // needs well past the spec's 10^4 floor to stabilize
            const int draws = 40000;
            for (int d = 0; d < draws; ++d) {
                CMatrix h(2, 3);
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 3; ++c) h(r, c) = rng.cnormal(row_var[r]);
                CVector xp(2);
                for (int k = 0; k < 2; ++k) xp(k) = alph.symbols[rng.next_u64() % 4];
                cplx xc = alph.symbols[rng.next_u64() % 4];
                PrecoderSet p = build_precoders(scheme_kind(scheme), h, row_var, u, xp);
                CVector s = std::sqrt(sp.common_power) * p.w_c * xc +
                            std::sqrt(sp.private_power) * p.W_p * xp;
                acc.add(s.squaredNorm());
            }
            double ratio = acc.value() / draws / total_power;
            if (!(ratio > 0.98 && ratio < 1.02)) {
                pass = false;
                char buf[96];
                std::snprintf(buf, sizeof(buf), "[%s %s: %.3f] ",
                              scheme_name(scheme).c_str(), imperfect ? "imp" : "perf",
                              ratio);
                detail += buf;
            }
        }
    }
    if (pass) detail = "E||s||^2 / P within [0.98, 1.02] for all schemes and CSIT modes";
    report(10, pass, "long-term power normalization", detail);
}

void criterion_11() {
    bool pass = true;
    char buf[300];
    double worst_gap = 0.0;
    for (double snr : {10.0, 20.0}) {
        McContext ci = make_ctx(32, 2, 4, snr, 0.8, Scheme::RS_CI, 250, 8);
        McContext zf = ci;
        zf.scheme = Scheme::RS_ZF;
        double a = best_t_rate(ci, 11);
        double b = best_t_rate(zf, 11);
        worst_gap = std::max(worst_gap, std::abs(a - b));
    }
    pass = pass && worst_gap <= 0.1;

    // large-N imperfect analytic vs imperfect MC at N = 64
    McContext mc_ctx = make_ctx(64, 2, 4, 10.0, 0.8, Scheme::RS_CI, 300, 10);
    mc_ctx.csit.mode = CsitMode::imperfect;
    mc_ctx.csit.tau = 10.0;
    mc_ctx.csit.pilot_power = 1.0;
    RatePoint mc = rs_sum_rate_mc(mc_ctx);
    AnalyticSettings as;
    RatePoint an = rs_sum_rate_analytic(mc_ctx, as);
    double err = std::abs(an.sum_rate - mc.sum_rate);
    pass = pass && err <= 0.3;
    std::snprintf(buf, sizeof(buf),
                  "|CI-ZF| at N=32: %.3f bits (need <= 0.1); large-N analytic vs MC at "
                  "N=64: |%.3f - %.3f| = %.3f (need <= 0.3)",
                  worst_gap, an.sum_rate, mc.sum_rate, err);
    report(11, pass, "large-N consistency", buf);
}

void criterion_12() {
    // d = [1, 5] m, QPSK, CI
    auto eval = [&](double snr, double t) {
        McContext ctx = make_ctx(3, 2, 4, snr, t, Scheme::RS_CI, 600, 16);
        ctx.cfg.distances = std::vector<double>{1.0, 5.0};
        return rs_sum_rate_mc(ctx);
    };
    RatePoint low_t1 = eval(5.0, 1.0);
    RatePoint low_t02 = eval(5.0, 0.2);
    RatePoint hi_t06 = eval(25.0, 0.6);
    RatePoint hi_t1 = eval(25.0, 1.0);
    bool clause1 = low_t1.sum_rate >= low_t02.sum_rate;
    double margin = hi_t06.sum_rate - hi_t1.sum_rate;
    bool clause2 = margin > hi_t06.ci_halfwidth + hi_t1.ci_halfwidth;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "5 dB: t=1.0 %.3f vs t=0.2 %.3f; 25 dB: t=0.6 %.3f vs t=1.0 %.3f "
                  "(margin %.3f > hw %.3f)",
                  low_t1.sum_rate, low_t02.sum_rate, hi_t06.sum_rate, hi_t1.sum_rate,
                  margin, hi_t06.ci_halfwidth + hi_t1.ci_halfwidth);
    report(12, clause1 && clause2, "power-split crossover with unequal users", buf);
}

void criterion_13() {
    SweepSpec spec;
    spec.cfg.n_antennas = 3;
    spec.cfg.n_users = 2;
    spec.cfg.psk_order = 4;
    spec.cfg.sigma2 = {1.0, 1.0};
    spec.cfg.distances = std::vector<double>{1.0, 1.0};
    spec.snr_grid_db = {0.0, 15.0, 30.0};
    spec.schemes = {Scheme::RS_CI, Scheme::RS_ZF, Scheme::NORS_CI};
    spec.t_mode = SplitMethod::fixed;
    spec.t_value = 0.8;
    spec.mc.n_channel = 200;
    spec.mc.n_noise = 8;
    spec.master_seed = 31;
    spec.mc.workers = 1;
    std::string one = csv_string(run_sweep(spec));
    spec.mc.workers = 8;
    std::string eight = csv_string(run_sweep(spec));
    bool pass = one == eight && !one.empty();
    report(13, pass, "determinism across worker counts",
           pass ? "identical CSV bytes for workers in {1, 8}"
                : "CSV bytes differ between worker counts");
}

} // namespace

int main() {
    std::printf("acceptance suite: N=3 K=2 desk-scale reproduction\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
