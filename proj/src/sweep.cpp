#include "rsim/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

namespace rsim {

#ifndef RSIM_BUILD_TAG
#define RSIM_BUILD_TAG "untagged"
#endif

const char* build_tag() { return RSIM_BUILD_TAG; }

const char* kCsvHeader =
    "snr_db,scheme,estimator,csit,modulation,N,K,t,rate_common_min,"
    "rate_private_sum,sum_rate,ci_halfwidth,n_channel,n_noise,seed,build";

std::string modulation_name(int order) {
    switch (order) {
        case 2: return "bpsk";
        case 4: return "qpsk";
        case 8: return "8psk";
    }
    throw ConfigError("unsupported modulation order");
}

int modulation_order(const std::string& name) {
    if (name == "bpsk") return 2;
    if (name == "qpsk") return 4;
    if (name == "8psk") return 8;
    throw ConfigError("unknown modulation '" + name + "'");
}

std::string estimator_name(Estimator e) { return e == Estimator::mc ? "mc" : "analytic"; }

void SweepSpec::validate() const {
    cfg.validate();
    if (snr_grid_db.empty()) throw ConfigError("empty SNR grid");
    if (schemes.empty()) throw ConfigError("empty scheme list");
    if (!use_mc && !use_analytic) throw ConfigError("no estimator selected");
    if (t_mode == SplitMethod::min_power)
        throw ConfigError("t-mode min-power is a standalone search, not a sweep mode");
    if (t_mode == SplitMethod::fixed && !(t_value >= 0.0 && t_value <= 1.0))
        throw ConfigError("fixed t must lie in [0,1]");
}

namespace {

double resolve_t(const SweepSpec& spec, const McContext& ctx, Estimator est) {
    if (!scheme_is_rs(ctx.scheme)) return 1.0;
    switch (spec.t_mode) {
        case SplitMethod::fixed: return spec.t_value;
        case SplitMethod::grid:
        case SplitMethod::golden: {
            RateFn fn;
            if (est == Estimator::mc) {
                fn = ergodic_rate_fn(ctx);
            } else {
                fn = [&ctx, &spec](double t) {
                    McContext c = ctx;
                    c.split = derive_power_split(c.cfg.total_power, t, c.cfg.n_users);
                    return rs_sum_rate_analytic(c, spec.analytic).sum_rate;
                };
            }
            return spec.t_mode == SplitMethod::grid
                       ? grid_search_t(fn, spec.t_grid_points).t_star
                       : golden_section_t(fn, spec.t_tol).t_star;
        }
        case SplitMethod::rate_match: {
            McContext c = ctx;
            if (est == Estimator::analytic) c.settings.n_channel = std::min(c.settings.n_channel, 200);
            return rate_matching_t(c).t_star;
        }
        case SplitMethod::min_power:
            throw ConfigError("min-power is not a sweep mode");
    }
    return 1.0;
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    for (size_t si = 0; si < spec.snr_grid_db.size(); ++si) {
        const double snr_db = spec.snr_grid_db[si];
        for (Scheme scheme : spec.schemes) {
            McContext ctx;
            ctx.cfg = spec.cfg;
            ctx.cfg.total_power = db_to_linear(snr_db); // sigma2 fixed at 1
            ctx.scheme = scheme;
            ctx.csit = spec.csit;
            ctx.u = uniform_ci_weights(spec.cfg.n_users);
            ctx.settings = spec.mc;
            ctx.master_seed = spec.master_seed;
            ctx.snr_index = si;
            ctx.snr_db = snr_db;
            for (int pass = 0; pass < 2; ++pass) {
                Estimator est = pass == 0 ? Estimator::mc : Estimator::analytic;
                if ((est == Estimator::mc && !spec.use_mc) ||
                    (est == Estimator::analytic && !spec.use_analytic))
                    continue;
                auto start = std::chrono::steady_clock::now();
                double t = resolve_t(spec, ctx, est);
                McContext c = ctx;
                c.split = derive_power_split(c.cfg.total_power,
                                             scheme_is_rs(scheme) ? t : 1.0,
                                             c.cfg.n_users);
                SweepRow row;
                row.point = (est == Estimator::mc) ? rs_sum_rate_mc(c)
                                                   : rs_sum_rate_analytic(c, spec.analytic);
                row.estimator = est;
                row.n_antennas = spec.cfg.n_antennas;
                row.n_users = spec.cfg.n_users;
                row.order = spec.cfg.psk_order;
                row.seed = spec.master_seed;
                row.build = build_tag();
                row.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
                result.rows.push_back(std::move(row));
            }
        }
    }
    std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.point.snr_db != b.point.snr_db) return a.point.snr_db < b.point.snr_db;
        if (a.point.scheme != b.point.scheme)
            return static_cast<int>(a.point.scheme) < static_cast<int>(b.point.scheme);
        return static_cast<int>(a.estimator) < static_cast<int>(b.estimator);
    });
    return result;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v); // shortest round-trip
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("bad numeric CSV field '" + s + "'");
    return v;
}

} // namespace

CsvRow to_csv_row(const SweepRow& row) {
    CsvRow r;
    r.snr_db = row.point.snr_db;
    r.scheme = scheme_name(row.point.scheme);
    r.estimator = estimator_name(row.estimator);
    r.csit = csit_name(row.point.csit);
    r.modulation = modulation_name(row.order);
    r.n_antennas = row.n_antennas;
    r.n_users = row.n_users;
    r.t = row.point.t;
    r.rate_common_min = row.point.rate_common_min;
    r.rate_private_sum = row.point.rate_private_sum;
    r.sum_rate = row.point.sum_rate;
    r.ci_halfwidth = row.point.ci_halfwidth;
    r.n_channel = row.point.samples;
    r.n_noise = row.point.n_noise;
    r.seed = row.seed;
    r.build = row.build;
    return r;
}

std::string csv_string(const SweepResult& result) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& row : result.rows) {
        const auto& p = row.point;
        os << fmt_double(p.snr_db) << ',' << scheme_name(p.scheme) << ','
           << estimator_name(row.estimator) << ',' << csit_name(p.csit) << ','
           << modulation_name(row.order) << ',' << row.n_antennas << ',' << row.n_users
           << ',' << fmt_double(p.t) << ',' << fmt_double(p.rate_common_min) << ','
           << fmt_double(p.rate_private_sum) << ',' << fmt_double(p.sum_rate) << ','
           << fmt_double(p.ci_halfwidth) << ',' << p.samples << ',' << p.n_noise << ','
           << row.seed << ',' << row.build << '\n';
    }
    return os.str();
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << csv_string(result);
    if (!out) throw ConfigError("write failed: " + path);
}

std::vector<CsvRow> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty CSV: " + path);
    if (line != kCsvHeader) throw ConfigError("CSV header mismatch in " + path);
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) f.push_back(field);
        if (f.size() != 16) throw ConfigError("bad CSV row in " + path);
        CsvRow r;
        r.snr_db = parse_double(f[0]);
        r.scheme = f[1];
        r.estimator = f[2];
        r.csit = f[3];
        r.modulation = f[4];
        r.n_antennas = static_cast<int>(parse_double(f[5]));
        r.n_users = static_cast<int>(parse_double(f[6]));
        r.t = parse_double(f[7]);
        r.rate_common_min = parse_double(f[8]);
        r.rate_private_sum = parse_double(f[9]);
        r.sum_rate = parse_double(f[10]);
        r.ci_halfwidth = parse_double(f[11]);
        r.n_channel = static_cast<long>(parse_double(f[12]));
        r.n_noise = static_cast<int>(parse_double(f[13]));
        r.seed = std::stoull(f[14]);
        r.build = f[15];
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_plot(const SweepResult& result, const std::string& path) {
    if (result.rows.empty()) throw ConfigError("nothing to plot");
    double xmin = 1e300, xmax = -1e300, ymax = 0.0;
    for (const auto& r : result.rows) {
        xmin = std::min(xmin, r.point.snr_db);
        xmax = std::max(xmax, r.point.snr_db);
        ymax = std::max(ymax, r.point.sum_rate);
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    ymax = std::max(ymax * 1.1, 1.0);
    const double W = 720, H = 480, L = 60, B = 40;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - 20); };
    auto py = [&](double y) { return H - B - y / ymax * (H - B - 20); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
    std::map<std::string, std::vector<const SweepRow*>> series;
    for (const auto& r : result.rows)
        series[scheme_name(r.point.scheme) + "/" + estimator_name(r.estimator)].push_back(&r);

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
       << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    os << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - 20 << "' y2='" << H - B
       << "' stroke='black'/>\n";
    os << "<line x1='" << L << "' y1='20' x2='" << L << "' y2='" << H - B
       << "' stroke='black'/>\n";
    os << "<text x='" << (W / 2) << "' y='" << H - 8 << "' font-size='13'>SNR (dB)</text>\n";
    os << "<text x='12' y='" << (H / 2) << "' font-size='13' transform='rotate(-90 12 "
       << (H / 2) << ")'>sum rate (bits/s/Hz)</text>\n";
    for (int g = 0; g <= 6; ++g) {
        double y = ymax * g / 6.0;
        os << "<text x='8' y='" << py(y) + 4 << "' font-size='11'>" << fmt_double(y)
           << "</text>\n";
    }
    int ci = 0, ly = 30;
    for (auto& [name, pts] : series) {
        std::string color = colors[ci++ % 8];
        std::sort(pts.begin(), pts.end(), [](const SweepRow* a, const SweepRow* b) {
            return a->point.snr_db < b->point.snr_db;
        });
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (const SweepRow* r : pts) os << px(r->point.snr_db) << ',' << py(r->point.sum_rate) << ' ';
        os << "'/>\n";
        os << "<text x='" << W - 180 << "' y='" << ly << "' font-size='12' fill='" << color
           << "'>" << name << "</text>\n";
        ly += 16;
    }
    os << "</svg>\n";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << os.str();
    if (!out) throw ConfigError("write failed: " + path);
}

} // namespace rsim
