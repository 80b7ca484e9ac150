#include "rsim/rate_mc.hpp"

#include <algorithm>
#include <cmath>

#include "rsim/constellation.hpp"
#include "rsim/parallel.hpp"

namespace rsim {

PrecoderKind scheme_kind(Scheme s) {
    return (s == Scheme::RS_CI || s == Scheme::NORS_CI) ? PrecoderKind::CI
                                                        : PrecoderKind::ZF;
}

bool scheme_is_rs(Scheme s) { return s == Scheme::RS_CI || s == Scheme::RS_ZF; }

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::RS_CI: return "rs-ci";
        case Scheme::RS_ZF: return "rs-zf";
        case Scheme::NORS_CI: return "nors-ci";
        case Scheme::NORS_ZF: return "nors-zf";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "rs-ci") return Scheme::RS_CI;
    if (name == "rs-zf") return Scheme::RS_ZF;
    if (name == "nors-ci") return Scheme::NORS_CI;
    if (name == "nors-zf") return Scheme::NORS_ZF;
    throw ConfigError("unknown scheme '" + name + "'");
}

std::string csit_name(CsitMode m) {
    return m == CsitMode::perfect ? "perfect" : "imperfect";
}

namespace {

constexpr double kLog2E = 1.4426950408889634073599246810019;
constexpr int kMaxRedraws = 64;

double log2_bits(double x) { return std::log2(x); }

/// log2 sum_i exp(z_i) with z_i = -(|d_i|^2 + 2 Re(d_i conj(n))) / sigma^2.
/// The i = m term has d = 0, so the max is always >= 0 and the guard only
/// matters for the deep negative tail.
struct LseKernel {
    std::vector<double> d2, dr, di;

    void clear() {
        d2.clear();
        dr.clear();
        di.clear();
    }
    void push(cplx d) {
        d2.push_back(std::norm(d));
        dr.push_back(d.real());
        di.push_back(d.imag());
    }
    double eval(double nr, double ni, double inv_sigma2, bool guard) const {
        const size_t n = d2.size();
        if (guard) {
            double zmax = -1e300;
            for (size_t i = 0; i < n; ++i) {
                double z = -(d2[i] + 2.0 * (dr[i] * nr + di[i] * ni)) * inv_sigma2;
                if (z > zmax) zmax = z;
            }
            double s = 0.0;
            for (size_t i = 0; i < n; ++i) {
                double z = -(d2[i] + 2.0 * (dr[i] * nr + di[i] * ni)) * inv_sigma2;
                s += std::exp(z - zmax);
            }
            return (zmax + std::log(s)) * kLog2E;
        }
        double s = 0.0;
        for (size_t i = 0; i < n; ++i)
            s += std::exp(-(d2[i] + 2.0 * (dr[i] * nr + di[i] * ni)) * inv_sigma2);
        return std::log2(s);
    }
};

struct NoiseSeq {
    std::vector<double> re, im;
};

/// Outer hypothesis indices: full enumeration up to the cap, a uniform
/// subsample with its own seed stream beyond it.
std::vector<long> outer_indices(long count, const McSettings& st, std::uint64_t master,
                                std::uint64_t snr_index, long draw, int stage) {
    std::vector<long> idx;
    if (count <= st.enumeration_cap) {
        idx.resize(static_cast<size_t>(count));
        for (long i = 0; i < count; ++i) idx[static_cast<size_t>(i)] = i;
        return idx;
    }
    Rng rng(derive_seed(master, StreamTag::outer_subsample, snr_index,
                        static_cast<std::uint64_t>(draw), static_cast<std::uint64_t>(stage)));
    idx.resize(static_cast<size_t>(st.outer_samples));
    for (auto& v : idx) v = static_cast<long>(rng.next_u64() % static_cast<std::uint64_t>(count));
    return idx;
}

struct DrawOutput {
    // per user: psi-minus-phi contribution (common) and private psi average
    std::vector<double> cdelta;
    std::vector<double> ppsi;
};

struct Evaluator {
    const McContext& ctx;
    bool need_common;
    bool need_private;
    int user_filter; // -1 = all

    int n_users, n_antennas, order;
    double log2M;
    PskAlphabet alphabet;
    StreamVectorSet priv_tuples; // M^K private tuples
    PrecoderKind kind;
    bool imperfect;
    long n_full;     // M^(K+1)
    long n_priv;     // M^K
    std::vector<int> digit_at; // k-th digit of private tuple pm: [pm*K + k]

    explicit Evaluator(const McContext& c, bool common, bool priv, int filter)
        : ctx(c),
          need_common(common && scheme_is_rs(c.scheme)),
          need_private(priv),
          user_filter(filter),
          n_users(c.cfg.n_users),
          n_antennas(c.cfg.n_antennas),
          order(c.cfg.psk_order),
          log2M(std::log2(static_cast<double>(c.cfg.psk_order))),
          alphabet(psk_alphabet(c.cfg.psk_order)),
          priv_tuples(stream_vectors(c.cfg.psk_order, c.cfg.n_users,
                                     std::max<long>(kEnumerationCap, c.settings.enumeration_cap))),
          kind(scheme_kind(c.scheme)),
          imperfect(c.csit.mode == CsitMode::imperfect) {
        n_priv = priv_tuples.count;
        n_full = n_priv * order;
        if (imperfect && n_full > c.settings.enumeration_cap && need_common)
            throw ResourceError(
                "imperfect-CSIT common rate requires full tuple enumeration; "
                "M^(K+1) exceeds the cap");
        digit_at.resize(static_cast<size_t>(n_priv * n_users));
        for (long pm = 0; pm < n_priv; ++pm) {
            long rem = pm;
            for (int s = n_users - 1; s >= 0; --s) {
                digit_at[static_cast<size_t>(pm * n_users + s)] = static_cast<int>(rem % order);
                rem /= order;
            }
        }
    }

    bool wants_user(int k) const { return user_filter < 0 || user_filter == k; }

    DrawOutput run_draw(long draw) const {
        const auto& st = ctx.settings;
        const SystemConfig& cfg = ctx.cfg;

        // Geometry for this trial (fixed list or one draw per trial).
        std::vector<double> dist;
        if (cfg.fixed_distances()) {
            dist = *cfg.distances;
        } else {
            Rng loc(derive_seed(ctx.master_seed, StreamTag::location, ctx.snr_index,
                                static_cast<std::uint64_t>(draw)));
            dist = resolve_distances(cfg, loc);
        }
        std::vector<double> gains = pathloss_gains(cfg, dist);

        // Channel (redraw on numerically singular Gram).
        ChannelRealization ch;
        CMatrix gram_hat;
        for (int attempt = 0;; ++attempt) {
            if (attempt >= kMaxRedraws)
                throw NumericError("channel redraw limit hit (degenerate RNG state?)");
            Rng crng(derive_seed(ctx.master_seed, StreamTag::channel, ctx.snr_index,
                                 static_cast<std::uint64_t>(draw),
                                 static_cast<std::uint64_t>(attempt)));
            ch = imperfect ? estimate_channel(cfg, gains, ctx.csit.tau, ctx.csit.pilot_power, crng)
                           : sample_channel(cfg, gains, crng);
            try {
                gram_hat = gram_checked(ch.Hhat);
                break;
            } catch (const NumericError&) {
                continue;
            }
        }

        const std::vector<double>& row_var = imperfect ? ch.sigma_hat2 : gains;
        LongTermBetas betas = long_term_betas(row_var, n_antennas, kind, ctx.u);
        if (st.instantaneous_normalization) betas.beta_c = instantaneous_beta_c(ch.Hhat);
        CMatrix gram_inv_zf; // only for instantaneous ZF quadratic forms
        if (st.instantaneous_normalization && kind == PrecoderKind::ZF)
            gram_inv_zf = gram_hat.ldlt().solve(CMatrix::Identity(n_users, n_users));

        const double sc = std::sqrt(ctx.split.common_power);
        const double sp = std::sqrt(ctx.split.private_power);

        // Effective receive-side quantities.
        // Perfect CSIT: H W_base = I exactly, so user k only sees column k.
        // Imperfect: T = H Hhat^H (Hhat Hhat^H)^{-1} spreads across columns.
        CMatrix cross = ch.H * ch.Hhat.adjoint(); // K x K, == gram_hat when perfect
        CMatrix Tmat;
        if (imperfect)
            Tmat = gram_hat.ldlt()
                       .solve(cross.adjoint())
                       .adjoint(); // H Hhat^H (Hhat Hhat^H)^{-1}

        // CI rotation vectors per private tuple (shared by all users).
        std::vector<CVector> rot;
        if (kind == PrecoderKind::CI && n_priv <= st.enumeration_cap) {
            rot.resize(static_cast<size_t>(n_priv));
            CVector x(n_users);
            for (long pm = 0; pm < n_priv; ++pm) {
                const auto& t = priv_tuples[pm];
                for (int j = 0; j < n_users; ++j) x(j) = t[static_cast<size_t>(j)];
                rot[static_cast<size_t>(pm)] = ci_rotation_vector(gram_hat, x, ctx.u);
            }
        }
        auto rotation_for = [&](long pm) -> CVector {
            if (!rot.empty()) return rot[static_cast<size_t>(pm)];
            CVector x(n_users);
            const auto a = alphabet.symbols;
            long rem = pm;
            for (int s = n_users - 1; s >= 0; --s) {
                x(s) = a[static_cast<size_t>(rem % order)];
                rem /= order;
            }
            return ci_rotation_vector(gram_hat, x, ctx.u);
        };

        DrawOutput out;
        out.cdelta.assign(static_cast<size_t>(n_users), 0.0);
        out.ppsi.assign(static_cast<size_t>(n_users), 0.0);

        std::vector<long> priv_idx =
            outer_indices(n_priv, st, ctx.master_seed, ctx.snr_index, draw, 1);

        LseKernel lse;
        for (int k = 0; k < n_users; ++k) {
            if (!wants_user(k)) continue;
            const double sigma2 = cfg.noise_power(k);
            const double inv_sigma2 = 1.0 / sigma2;

            NoiseSeq noise;
            noise.re.resize(static_cast<size_t>(st.n_noise));
            noise.im.resize(static_cast<size_t>(st.n_noise));
            Rng nrng(derive_seed(ctx.master_seed, StreamTag::noise, ctx.snr_index,
                                 static_cast<std::uint64_t>(draw),
                                 static_cast<std::uint64_t>(k)));
            for (int j = 0; j < st.n_noise; ++j) {
                cplx n = nrng.cnormal(sigma2);
                noise.re[static_cast<size_t>(j)] = n.real();
                noise.im[static_cast<size_t>(j)] = n.imag();
            }

            // h_k w_c (true channel, estimate-built precoder).
            cplx g_common(0, 0);
            for (int j = 0; j < n_users; ++j) g_common += cross(k, j);
            g_common *= betas.beta_c;
            const cplx c1 = sc * g_common;

            auto beta_p_for = [&](long pm) -> double {
                if (!st.instantaneous_normalization) return betas.beta_p;
                if (kind == PrecoderKind::ZF) {
                    const auto& t = priv_tuples[pm];
                    cplx q(0, 0);
                    for (int a = 0; a < n_users; ++a)
                        for (int b = 0; b < n_users; ++b)
                            q += std::conj(t[static_cast<size_t>(a)]) * gram_inv_zf(a, b) *
                                 t[static_cast<size_t>(b)];
                    return std::sqrt(n_users / std::real(q));
                }
                CVector w = rotation_for(pm);
                double q = 0.0;
                for (int j = 0; j < n_users; ++j) q += ctx.u[static_cast<size_t>(j)] * w(j).real();
                return n_users * std::sqrt(static_cast<double>(n_users)) / std::sqrt(q);
            };
            // True whenever the private gain cannot depend on the tuple.
            const bool zf_uniform_gain =
                kind == PrecoderKind::ZF && !st.instantaneous_normalization;
            // Private gain for user k given the hypothesized tuple pm.
            auto priv_gain = [&](long pm) -> cplx {
                double bp = beta_p_for(pm);
                if (kind == PrecoderKind::ZF)
                    return imperfect ? cplx(sp * bp) * Tmat(k, k) : cplx(sp * bp);
                CVector w = rotation_for(pm);
                cplx g = (bp / n_users) * w(k);
                if (imperfect) g *= Tmat(k, k);
                return sp * g;
            };
            // Full private row q_m (imperfect common stage).
            auto priv_row = [&](long pm, CRowVector& q) {
                double bp = beta_p_for(pm);
                if (kind == PrecoderKind::ZF) {
                    q = (sp * bp) * Tmat.row(k);
                    return;
                }
                CVector w = rotation_for(pm);
                q.resize(n_users);
                for (int j = 0; j < n_users; ++j)
                    q(j) = sp * (bp / n_users) * Tmat(k, j) * w(j);
            };

            // --- private stage (and, for perfect CSIT, the common psi) ---
            double acc_priv = 0.0;
            if (need_private || (need_common && !imperfect)) {
                KahanSum acc;
                long n_outer = 0;
                auto eval_outer = [&](int bm, cplx gain) {
                    lse.clear();
                    for (int b = 0; b < order; ++b)
                        lse.push(gain * (alphabet.symbols[static_cast<size_t>(bm)] -
                                         alphabet.symbols[static_cast<size_t>(b)]));
                    double s = 0.0;
                    for (int j = 0; j < st.n_noise; ++j)
                        s += lse.eval(noise.re[static_cast<size_t>(j)],
                                      noise.im[static_cast<size_t>(j)], inv_sigma2,
                                      st.logsumexp_guard);
                    acc.add(s / st.n_noise);
                    ++n_outer;
                };
                if (zf_uniform_gain) {
                    // gain is tuple-independent; average over the k-th digit only
                    cplx gain = priv_gain(0);
                    for (int bm = 0; bm < order; ++bm) eval_outer(bm, gain);
                } else {
                    for (long pm : priv_idx)
                        eval_outer(digit_at[static_cast<size_t>(pm * n_users + k)],
                                   priv_gain(pm));
                }
                acc_priv = acc.value() / static_cast<double>(n_outer);
                if (need_private) out.ppsi[static_cast<size_t>(k)] = acc_priv;
            }

            if (!need_common) continue;

            // --- common stage: I(all streams) vs I(private streams) ---
            if (!imperfect) {
                // phi: inner collapses to the (common symbol, own private
                // symbol) grid; degeneracy constants cancel against psi.
                KahanSum acc_phi;
                long n_outer = 0;
                auto phi_outer = [&](int am, int bm, cplx gain) {
                    lse.clear();
                    for (int a = 0; a < order; ++a) {
                        cplx dc = c1 * (alphabet.symbols[static_cast<size_t>(am)] -
                                        alphabet.symbols[static_cast<size_t>(a)]);
                        for (int b = 0; b < order; ++b)
                            lse.push(dc + gain * (alphabet.symbols[static_cast<size_t>(bm)] -
                                                  alphabet.symbols[static_cast<size_t>(b)]));
                    }
                    double s = 0.0;
                    for (int j = 0; j < st.n_noise; ++j)
                        s += lse.eval(noise.re[static_cast<size_t>(j)],
                                      noise.im[static_cast<size_t>(j)], inv_sigma2,
                                      st.logsumexp_guard);
                    acc_phi.add(s / st.n_noise);
                    ++n_outer;
                };
                if (zf_uniform_gain) {
                    cplx gain = priv_gain(0);
                    for (int am = 0; am < order; ++am)
                        for (int bm = 0; bm < order; ++bm) phi_outer(am, bm, gain);
                } else if (n_full <= st.enumeration_cap) {
                    for (long pm : priv_idx) {
                        cplx gain = priv_gain(pm);
                        int bm = digit_at[static_cast<size_t>(pm * n_users + k)];
                        for (int am = 0; am < order; ++am) phi_outer(am, bm, gain);
                    }
                } else {
                    std::vector<long> full_idx = outer_indices(
                        n_full, st, ctx.master_seed, ctx.snr_index, draw, 0);
                    for (long m : full_idx) {
                        long pm = m / order;
                        int am = static_cast<int>(m % order);
                        int bm = digit_at[static_cast<size_t>(pm * n_users + k)];
                        phi_outer(am, bm, priv_gain(pm));
                    }
                }
                double acc_phi_mean = acc_phi.value() / static_cast<double>(n_outer);
                out.cdelta[static_cast<size_t>(k)] = acc_priv - acc_phi_mean;
            } else {
                // Full tuple enumeration: the estimation-error row couples
                // user k to every private stream.
                KahanSum acc_phi, acc_psi;
                std::vector<cplx> dots(static_cast<size_t>(n_priv));
                CRowVector q;
                std::vector<cplx> rho(static_cast<size_t>(n_full));
                double phi_n = 0, psi_n = 0;
                for (long pm = 0; pm < n_priv; ++pm) {
                    priv_row(pm, q);
                    for (long pi = 0; pi < n_priv; ++pi) {
                        cplx d(0, 0);
                        const auto& t = priv_tuples[pi];
                        for (int j = 0; j < n_users; ++j) d += q(j) * t[static_cast<size_t>(j)];
                        dots[static_cast<size_t>(pi)] = d;
                    }
                    // psi term for this pm
                    lse.clear();
                    for (long pi = 0; pi < n_priv; ++pi)
                        lse.push(dots[static_cast<size_t>(pm)] - dots[static_cast<size_t>(pi)]);
                    double s = 0.0;
                    for (int j = 0; j < st.n_noise; ++j)
                        s += lse.eval(noise.re[static_cast<size_t>(j)],
                                      noise.im[static_cast<size_t>(j)], inv_sigma2,
                                      st.logsumexp_guard);
                    acc_psi.add(s / st.n_noise);
                    psi_n += 1;
                    // phi terms for (am, pm)
                    for (long i = 0; i < n_full; ++i)
                        rho[static_cast<size_t>(i)] =
                            c1 * alphabet.symbols[static_cast<size_t>(i % order)] +
                            dots[static_cast<size_t>(i / order)];
                    for (int am = 0; am < order; ++am) {
                        cplx rm = c1 * alphabet.symbols[static_cast<size_t>(am)] +
                                  dots[static_cast<size_t>(pm)];
                        lse.clear();
                        for (long i = 0; i < n_full; ++i) lse.push(rm - rho[static_cast<size_t>(i)]);
                        double s = 0.0;
                        for (int j = 0; j < st.n_noise; ++j)
                            s += lse.eval(noise.re[static_cast<size_t>(j)],
                                          noise.im[static_cast<size_t>(j)], inv_sigma2,
                                          st.logsumexp_guard);
                        acc_phi.add(s / st.n_noise);
                        phi_n += 1;
                    }
                }
                out.cdelta[static_cast<size_t>(k)] =
                    acc_psi.value() / psi_n - acc_phi.value() / phi_n;
            }
        }
        return out;
    }
};

struct McRaw {
    std::vector<std::vector<double>> cdelta; // [draw][user]
    std::vector<std::vector<double>> ppsi;   // [draw][user]
};

McRaw run_mc(const McContext& ctx, bool need_common, bool need_private, int user_filter) {
    ctx.cfg.validate();
    if (ctx.u.size() != static_cast<size_t>(ctx.cfg.n_users))
        throw ConfigError("CI weight vector length must equal K");
    double usum = 0;
    for (double v : ctx.u) usum += v;
    if (std::abs(usum - 1.0) > 1e-9) throw ConfigError("CI weights must sum to 1");
    if (ctx.settings.n_channel < 1 || ctx.settings.n_noise < 1)
        throw ConfigError("sample counts must be >= 1");

    Evaluator ev(ctx, need_common, need_private, user_filter);
    McRaw raw;
    raw.cdelta.resize(static_cast<size_t>(ctx.settings.n_channel));
    raw.ppsi.resize(static_cast<size_t>(ctx.settings.n_channel));
    parallel_for(ctx.settings.n_channel, ctx.settings.workers, [&](long d) {
        DrawOutput o = ev.run_draw(d);
        raw.cdelta[static_cast<size_t>(d)] = std::move(o.cdelta);
        raw.ppsi[static_cast<size_t>(d)] = std::move(o.ppsi);
    });
    return raw;
}

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;
};

MeanVar column_stats(const std::vector<std::vector<double>>& rows, int col) {
    KahanSum s1, s2;
    for (const auto& r : rows) s1.add(r[static_cast<size_t>(col)]);
    double mean = s1.value() / static_cast<double>(rows.size());
    for (const auto& r : rows) {
        double d = r[static_cast<size_t>(col)] - mean;
        s2.add(d * d);
    }
    MeanVar mv;
    mv.mean = mean;
    mv.var = rows.size() > 1 ? s2.value() / (static_cast<double>(rows.size()) - 1.0) : 0.0;
    return mv;
}

double clamp_rate(double r, double log2M, long& clamp_events, long& rate_values) {
    ++rate_values;
    if (r < -1e-12 || r > log2M + 1e-12) ++clamp_events;
    return std::min(std::max(r, 0.0), log2M);
}

} // namespace

RatePoint rs_sum_rate_mc(const McContext& ctx_in) {
    McContext ctx = ctx_in;
    const bool rs = scheme_is_rs(ctx.scheme);
    if (!rs) ctx.split = derive_power_split(ctx.cfg.total_power, 1.0, ctx.cfg.n_users);
    McRaw raw = run_mc(ctx, rs, true, -1);

    const int K = ctx.cfg.n_users;
    const double log2M = log2_bits(static_cast<double>(ctx.cfg.psk_order));
    const long n = ctx.settings.n_channel;

    RatePoint pt;
    pt.snr_db = ctx.snr_db;
    pt.t = ctx.split.t;
    pt.scheme = ctx.scheme;
    pt.csit = ctx.csit.mode;
    pt.samples = n;
    pt.n_noise = ctx.settings.n_noise;
    pt.common_rates.assign(static_cast<size_t>(K), 0.0);
    pt.private_rates.assign(static_cast<size_t>(K), 0.0);

    int k_min = 0;
    double worst = 1e300;
    for (int k = 0; k < K; ++k) {
        MeanVar pv = column_stats(raw.ppsi, k);
        pt.private_rates[static_cast<size_t>(k)] =
            clamp_rate(log2M - pv.mean, log2M, pt.clamp_events, pt.rate_values);
        if (rs) {
            MeanVar cv = column_stats(raw.cdelta, k);
            double ck = clamp_rate(log2M + cv.mean, log2M, pt.clamp_events, pt.rate_values);
            pt.common_rates[static_cast<size_t>(k)] = ck;
            if (ck < worst) {
                worst = ck;
                k_min = k;
            }
        }
    }
    pt.rate_common_min = rs ? pt.common_rates[static_cast<size_t>(k_min)] : 0.0;
    for (double p : pt.private_rates) pt.rate_private_sum += p;
    pt.sum_rate = pt.rate_common_min + pt.rate_private_sum;

    // Delta-method interval on the assembled sum: the min behaves locally as
    // the selected coordinate, so use the per-draw composite for user k_min.
    std::vector<std::vector<double>> composite(static_cast<size_t>(n),
                                               std::vector<double>(1, 0.0));
    for (long d = 0; d < n; ++d) {
        double s = 0.0;
        if (rs) s += raw.cdelta[static_cast<size_t>(d)][static_cast<size_t>(k_min)];
        for (int k = 0; k < K; ++k) s -= raw.ppsi[static_cast<size_t>(d)][static_cast<size_t>(k)];
        composite[static_cast<size_t>(d)][0] = s;
    }
    MeanVar sv = column_stats(composite, 0);
    pt.ci_halfwidth = 1.96 * std::sqrt(sv.var / static_cast<double>(n));
    return pt;
}

RateEstimate common_rate_mc(const McContext& ctx, int user) {
    if (!scheme_is_rs(ctx.scheme))
        throw ConfigError("common rate undefined for NoRS schemes");
    McRaw raw = run_mc(ctx, true, false, user);
    const double log2M = log2_bits(static_cast<double>(ctx.cfg.psk_order));
    MeanVar mv = column_stats(raw.cdelta, user);
    RateEstimate est;
    est.rate = std::min(std::max(log2M + mv.mean, 0.0), log2M);
    est.halfwidth = 1.96 * std::sqrt(mv.var / static_cast<double>(ctx.settings.n_channel));
    return est;
}

RateEstimate private_rate_mc(const McContext& ctx, int user) {
    McRaw raw = run_mc(ctx, false, true, user);
    const double log2M = log2_bits(static_cast<double>(ctx.cfg.psk_order));
    MeanVar mv = column_stats(raw.ppsi, user);
    RateEstimate est;
    est.rate = std::min(std::max(log2M - mv.mean, 0.0), log2M);
    est.halfwidth = 1.96 * std::sqrt(mv.var / static_cast<double>(ctx.settings.n_channel));
    return est;
}

RateEstimate nors_rate_mc(const McContext& ctx_in, int user) {
    McContext ctx = ctx_in;
    ctx.split = derive_power_split(ctx.cfg.total_power, 1.0, ctx.cfg.n_users);
    return private_rate_mc(ctx, user);
}

} // namespace rsim
