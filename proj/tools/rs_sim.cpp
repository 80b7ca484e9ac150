#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "rsim/sweep.hpp"

namespace {

using namespace rsim;

std::vector<double> parse_snr_range(const std::string& s) {
    // "a:b:step" or a comma list
    std::vector<double> grid;
    if (s.find(':') != std::string::npos) {
        double a, b, step;
        if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0)
            throw ConfigError("bad --snr-db range '" + s + "' (want a:b:step)");
        for (double v = a; v <= b + 1e-9; v += step) grid.push_back(v);
        return grid;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    return grid;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

void apply_config_file(SweepSpec& spec, const std::string& path,
                       std::vector<std::string>& scheme_names) {
    auto kv = parse_key_value_file(path);
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto v = get("N")) spec.cfg.n_antennas = std::stoi(*v);
    if (auto v = get("K")) {
        spec.cfg.n_users = std::stoi(*v);
        spec.cfg.sigma2.assign(static_cast<size_t>(spec.cfg.n_users), 1.0);
    }
    if (auto v = get("M")) spec.cfg.psk_order = std::stoi(*v);
    if (auto v = get("pathloss_exponent")) spec.cfg.pathloss_exponent = std::stod(*v);
    if (auto v = get("radius")) spec.cfg.radius = std::stod(*v);
    if (auto v = get("min_radius")) spec.cfg.min_radius = std::stod(*v);
    if (auto v = get("distances")) {
        if (*v == "random")
            spec.cfg.distances.reset();
        else
            spec.cfg.distances = parse_double_list(*v);
    }
    double lo = 0, hi = 30, step = 2;
    bool have_range = false;
    if (auto v = get("snr_db_min")) lo = std::stod(*v), have_range = true;
    if (auto v = get("snr_db_max")) hi = std::stod(*v), have_range = true;
    if (auto v = get("snr_db_step")) step = std::stod(*v), have_range = true;
    if (have_range) {
        spec.snr_grid_db.clear();
        for (double x = lo; x <= hi + 1e-9; x += step) spec.snr_grid_db.push_back(x);
    }
    if (auto v = get("csit"))
        spec.csit.mode = (*v == "imperfect") ? CsitMode::imperfect : CsitMode::perfect;
    if (auto v = get("tau")) spec.csit.tau = std::stod(*v);
    if (auto v = get("pilot_power")) spec.csit.pilot_power = std::stod(*v);
    if (auto v = get("samples")) {
        int nc, nn;
        if (std::sscanf(v->c_str(), "%d:%d", &nc, &nn) != 2)
            throw ConfigError("samples must be NC:NN");
        spec.mc.n_channel = nc;
        spec.mc.n_noise = nn;
    }
    if (auto v = get("seed")) spec.master_seed = std::stoull(*v);
    if (auto v = get("scheme")) {
        scheme_names.clear();
        std::stringstream ss(*v);
        std::string tok;
        while (std::getline(ss, tok, ',')) scheme_names.push_back(tok);
    }
    if (auto v = get("t_mode")) spec.t_mode = split_method_from_name(*v);
    if (auto v = get("t_value")) spec.t_value = std::stod(*v);
    if (auto v = get("estimator")) {
        spec.use_mc = (*v == "mc" || *v == "both");
        spec.use_analytic = (*v == "analytic" || *v == "both");
    }
    if (auto v = get("workers")) spec.mc.workers = std::stoi(*v);
}

int run_simulate(int argc, char** argv) {
    CLI::App app{"Rate-splitting MU-MIMO downlink link-level simulator"};
    app.name("rs_sim");
    auto* sim = app.add_subcommand("simulate", "run an SNR/t sweep and emit CSV + SVG");

    std::string config_path, snr_range, modulation, csit, estimator, t_mode,
                out_dir = ".", distances;
    std::vector<std::string> scheme_names;
    std::string samples;
    double tau = -1, pilot_power = -1, t_value = -1;
    std::uint64_t seed = 0;
    bool have_seed = false;
    int workers = 0;

    sim->add_option("--config", config_path, "flat key=value config file");
    sim->add_option("--snr-db", snr_range, "SNR grid, a:b:step or comma list (dB)");
    sim->add_option("--scheme", scheme_names, "rs-ci|rs-zf|nors-ci|nors-zf (repeatable)");
    sim->add_option("--modulation", modulation, "bpsk|qpsk|8psk");
    sim->add_option("--csit", csit, "perfect|imperfect");
    sim->add_option("--tau", tau, "pilot symbols (imperfect CSIT)");
    sim->add_option("--pilot-power", pilot_power, "per-pilot power (imperfect CSIT)");
    sim->add_option("--estimator", estimator, "mc|analytic|both");
    sim->add_option("--t-mode", t_mode, "fixed|golden|grid|rate-match|min-power");
    sim->add_option("--t-value", t_value, "fixed power split t");
    sim->add_option("--distances", distances, "comma list of metres, or 'random'");
    auto* seed_opt = sim->add_option("--seed", seed, "master seed");
    sim->add_option("--samples", samples, "channel:noise draws, e.g. 500:20");
    sim->add_option("--workers", workers, "worker threads");
    sim->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!sim->parsed()) {
        std::cerr << app.help() << std::endl;
        return 2;
    }

    SweepSpec spec;
    spec.snr_grid_db = {0, 5, 10, 15, 20, 25, 30};
    std::vector<std::string> scheme_acc = {"rs-ci"};
    if (!config_path.empty()) apply_config_file(spec, config_path, scheme_acc);

    // CLI flags override the file.
    if (!snr_range.empty()) spec.snr_grid_db = parse_snr_range(snr_range);
    if (!scheme_names.empty()) scheme_acc = scheme_names;
    if (!modulation.empty()) spec.cfg.psk_order = modulation_order(modulation);
    if (!csit.empty())
        spec.csit.mode = (csit == "imperfect") ? CsitMode::imperfect : CsitMode::perfect;
    if (tau > 0) spec.csit.tau = tau;
    if (pilot_power > 0) spec.csit.pilot_power = pilot_power;
    if (!estimator.empty()) {
        spec.use_mc = (estimator == "mc" || estimator == "both");
        spec.use_analytic = (estimator == "analytic" || estimator == "both");
    }
    if (!t_mode.empty()) spec.t_mode = split_method_from_name(t_mode);
    if (t_value >= 0) spec.t_value = t_value;
    if (!distances.empty()) {
        if (distances == "random")
            spec.cfg.distances.reset();
        else
            spec.cfg.distances = parse_double_list(distances);
    }
    if (!seed_opt->empty()) {
        spec.master_seed = seed;
        have_seed = true;
    }
    (void)have_seed;
    if (!samples.empty()) {
        int nc, nn;
        if (std::sscanf(samples.c_str(), "%d:%d", &nc, &nn) != 2)
            throw ConfigError("--samples must be NC:NN");
        spec.mc.n_channel = nc;
        spec.mc.n_noise = nn;
    }
    if (workers > 0) spec.mc.workers = workers;

    spec.schemes.clear();
    for (const auto& s : scheme_acc) spec.schemes.push_back(scheme_from_name(s));

    std::filesystem::create_directories(out_dir);

    if (spec.t_mode == SplitMethod::min_power) {
        // Standalone search: smallest power whose best-split sum rate reaches
        // (K+1) log2 M; emits one row per RS scheme at (P_min, t*).
        SweepResult result;
        for (Scheme scheme : spec.schemes) {
            if (!scheme_is_rs(scheme)) continue;
            McContext ctx;
            ctx.cfg = spec.cfg;
            ctx.scheme = scheme;
            ctx.csit = spec.csit;
            ctx.u = uniform_ci_weights(spec.cfg.n_users);
            ctx.settings = spec.mc;
            ctx.master_seed = spec.master_seed;
            MinPowerResult mp = min_power_saturation(ctx);
            std::cout << scheme_name(scheme) << ": P_min = " << mp.p_min_db
                      << " dB, t* = " << mp.t_at_pmin << ", rate = " << mp.rate
                      << " bits/s/Hz" << std::endl;
            ctx.cfg.total_power = db_to_linear(mp.p_min_db);
            ctx.snr_db = mp.p_min_db;
            ctx.split = derive_power_split(ctx.cfg.total_power, mp.t_at_pmin,
                                           ctx.cfg.n_users);
            SweepRow row;
            row.point = rs_sum_rate_mc(ctx);
            row.estimator = Estimator::mc;
            row.n_antennas = spec.cfg.n_antennas;
            row.n_users = spec.cfg.n_users;
            row.order = spec.cfg.psk_order;
            row.seed = spec.master_seed;
            row.build = build_tag();
            result.rows.push_back(std::move(row));
        }
        if (result.rows.empty()) throw ConfigError("min-power needs at least one RS scheme");
        emit_csv(result, out_dir + "/min_power.csv");
        std::cout << "wrote " << out_dir << "/min_power.csv" << std::endl;
        return 0;
    }

    SweepResult result = run_sweep(spec);
    std::string csv_path = out_dir + "/sweep.csv";
    std::string svg_path = out_dir + "/sweep.svg";
    emit_csv(result, csv_path);
    emit_plot(result, svg_path);
    std::cout << "wrote " << csv_path << " (" << result.rows.size() << " rows) and "
              << svg_path << std::endl;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_simulate(argc, argv);
    } catch (const rsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    } catch (const rsim::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << std::endl;
        return 4;
    } catch (const rsim::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
