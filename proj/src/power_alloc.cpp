#include "rsim/power_alloc.hpp"

#include <cmath>

namespace rsim {

SplitMethod split_method_from_name(const std::string& name) {
    if (name == "fixed") return SplitMethod::fixed;
    if (name == "golden") return SplitMethod::golden;
    if (name == "grid") return SplitMethod::grid;
    if (name == "rate-match") return SplitMethod::rate_match;
    if (name == "min-power") return SplitMethod::min_power;
    throw ConfigError("unknown t-mode '" + name + "'");
}

std::string split_method_name(SplitMethod m) {
    switch (m) {
        case SplitMethod::fixed: return "fixed";
        case SplitMethod::golden: return "golden";
        case SplitMethod::grid: return "grid";
        case SplitMethod::rate_match: return "rate-match";
        case SplitMethod::min_power: return "min-power";
    }
    return "?";
}

namespace {
constexpr double kGolden = 0.61803398874989484820458683436564; // (sqrt(5)-1)/2

double checked(double v) {
    if (!std::isfinite(v)) throw NumericError("rate function returned a non-finite value");
    return v;
}
} // namespace

SplitSearchResult golden_section_t(const RateFn& rate_fn, double tol, int max_iter) {
    if (!(tol > 0)) throw ConfigError("golden-section tol must be positive");
    double lo = 0.0, hi = 1.0;
    double t1 = hi - kGolden * (hi - lo);
    double t2 = lo + kGolden * (hi - lo);
    double r1 = checked(rate_fn(t1));
    double r2 = checked(rate_fn(t2));
    SplitSearchResult res;
    res.method = SplitMethod::golden;
    int it = 0;
    while (std::abs(hi - lo) >= tol && it < max_iter) {
        if (r1 > r2) {
            hi = t2;
            t2 = t1;
            r2 = r1;
            t1 = hi - kGolden * (hi - lo);
            r1 = checked(rate_fn(t1));
        } else {
            lo = t1;
            t1 = t2;
            r1 = r2;
            t2 = lo + kGolden * (hi - lo);
            r2 = checked(rate_fn(t2));
        }
        ++it;
    }
    res.t_star = 0.5 * (lo + hi);
    res.rate_at_t = checked(rate_fn(res.t_star));
    res.iterations = it;
    res.bracket_width = std::abs(hi - lo);
    return res;
}

SplitSearchResult grid_search_t(const RateFn& rate_fn, int grid_points) {
    if (grid_points < 2) throw ConfigError("grid search needs >= 2 points");
    SplitSearchResult res;
    res.method = SplitMethod::grid;
    double best_t = 0.0, best_r = -1e300;
    for (int i = 0; i < grid_points; ++i) {
        double t = static_cast<double>(i) / (grid_points - 1);
        double r = checked(rate_fn(t));
        if (r > best_r) {
            best_r = r;
            best_t = t;
        }
        ++res.iterations;
    }
    res.t_star = best_t;
    res.rate_at_t = best_r;
    res.bracket_width = 1.0 / (grid_points - 1);
    return res;
}

RateFn ergodic_rate_fn(const McContext& ctx) {
    return [ctx](double t) {
        McContext c = ctx;
        c.split = derive_power_split(c.cfg.total_power, t, c.cfg.n_users);
        return rs_sum_rate_mc(c).sum_rate;
    };
}

SplitSearchResult rate_matching_t(const McContext& ctx, double rate_tol,
                                  double t_resolution) {
    if (!scheme_is_rs(ctx.scheme))
        throw ConfigError("rate matching applies to RS schemes");
    // NoRS per-user reference rates (same channel/noise streams).
    McContext nors = ctx;
    nors.scheme = scheme_kind(ctx.scheme) == PrecoderKind::CI ? Scheme::NORS_CI
                                                              : Scheme::NORS_ZF;
    RatePoint ref = rs_sum_rate_mc(nors);

    auto gap = [&](double t) {
        McContext c = ctx;
        c.split = derive_power_split(c.cfg.total_power, t, c.cfg.n_users);
        RatePoint pt = rs_sum_rate_mc(c);
        double worst = 1e300;
        for (int k = 0; k < c.cfg.n_users; ++k)
            worst = std::min(worst, pt.private_rates[static_cast<size_t>(k)] -
                                        ref.private_rates[static_cast<size_t>(k)]);
        return worst;
    };

    SplitSearchResult res;
    res.method = SplitMethod::rate_match;
    if (gap(1.0) < -rate_tol) {
        res.t_star = 1.0;
        res.flagged = true;
        res.rate_at_t = ergodic_rate_fn(ctx)(1.0);
        return res;
    }
    // Private rate is monotone increasing in t; bisect for the smallest t
    // whose worst-user gap clears -rate_tol.
    double lo = 0.0, hi = 1.0;
    int it = 0;
    while (hi - lo > t_resolution) {
        double mid = 0.5 * (lo + hi);
        if (gap(mid) >= -rate_tol)
            hi = mid;
        else
            lo = mid;
        ++it;
    }
    res.t_star = hi;
    res.iterations = it;
    res.bracket_width = hi - lo;
    res.rate_at_t = ergodic_rate_fn(ctx)(hi);
    return res;
}

MinPowerResult min_power_saturation(const McContext& ctx, double rate_tol,
                                    double p_lo_db, double p_hi_db, int t_grid,
                                    double p_tol_db) {
    const double target =
        (ctx.cfg.n_users + 1) * std::log2(static_cast<double>(ctx.cfg.psk_order)) - rate_tol;
    auto best_at = [&](double p_db) {
        McContext c = ctx;
        c.cfg.total_power = db_to_linear(p_db);
        return grid_search_t(ergodic_rate_fn(c), t_grid);
    };
    SplitSearchResult hi_best = best_at(p_hi_db);
    if (hi_best.rate_at_t < target)
        throw NumericError("sum rate does not saturate within the power search bound");
    double lo = p_lo_db, hi = p_hi_db;
    SplitSearchResult at_hi = hi_best;
    while (hi - lo > p_tol_db) {
        double mid = 0.5 * (lo + hi);
        SplitSearchResult b = best_at(mid);
        if (b.rate_at_t >= target) {
            hi = mid;
            at_hi = b;
        } else {
            lo = mid;
        }
    }
    MinPowerResult res;
    res.p_min_db = hi;
    res.t_at_pmin = at_hi.t_star;
    res.rate = at_hi.rate_at_t;
    return res;
}

PerStateSplit per_state_split_rate(const McContext& ctx, int n_states, double tol) {
    if (n_states < 1) throw ConfigError("per-state split needs >= 1 state");
    KahanSum rates, splits;
    for (int s = 0; s < n_states; ++s) {
        McContext c = ctx;
        c.settings.n_channel = 1;
        c.settings.workers = 1;
        c.master_seed = derive_seed(ctx.master_seed, StreamTag::channel,
                                    static_cast<std::uint64_t>(s), 0xabcd);
        SplitSearchResult r = golden_section_t(ergodic_rate_fn(c), tol, 60);
        rates.add(r.rate_at_t);
        splits.add(r.t_star);
    }
    PerStateSplit out;
    out.mean_max_rate = rates.value() / n_states;
    out.mean_t_star = splits.value() / n_states;
    return out;
}

} // namespace rsim
