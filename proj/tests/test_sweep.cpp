#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "rsim/sweep.hpp"

using namespace rsim;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.cfg.n_antennas = 3;
    spec.cfg.n_users = 2;
    spec.cfg.psk_order = 4;
    spec.cfg.sigma2 = {1.0, 1.0};
    spec.cfg.distances = std::vector<double>{1.0, 1.0};
    spec.snr_grid_db = {0.0, 10.0, 20.0};
    spec.schemes = {Scheme::RS_CI, Scheme::NORS_ZF};
    spec.t_mode = SplitMethod::fixed;
    spec.t_value = 0.8;
    spec.mc.n_channel = 120;
    spec.mc.n_noise = 6;
    spec.master_seed = 9;
    return spec;
}

} // namespace

TEST_CASE("sweep validation rejects bad specs before any work") {
    SweepSpec spec = small_spec();
    spec.schemes.clear();
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);

    spec = small_spec();
    spec.snr_grid_db.clear();
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);

    spec = small_spec();
    spec.use_mc = false;
    spec.use_analytic = false;
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);

    spec = small_spec();
    spec.t_mode = SplitMethod::min_power;
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
}

TEST_CASE("sweep produces one sorted row per (snr, scheme, estimator)") {
    SweepSpec spec = small_spec();
    spec.use_analytic = true;
    SweepResult result = run_sweep(spec);
    CHECK(result.rows.size() == 3 * 2 * 2);
    for (size_t i = 1; i < result.rows.size(); ++i) {
        const auto& a = result.rows[i - 1];
        const auto& b = result.rows[i];
        bool sorted =
            a.point.snr_db < b.point.snr_db ||
            (a.point.snr_db == b.point.snr_db &&
             (static_cast<int>(a.point.scheme) < static_cast<int>(b.point.scheme) ||
              (a.point.scheme == b.point.scheme &&
               static_cast<int>(a.estimator) < static_cast<int>(b.estimator))));
        CHECK(sorted);
    }
    for (const auto& row : result.rows) {
        CHECK(row.seed == 9);
        CHECK(!row.build.empty());
        if (!scheme_is_rs(row.point.scheme)) CHECK(row.point.t == 1.0);
    }
}

TEST_CASE("byte-identical output for any worker count and repeated runs") {
    SweepSpec spec = small_spec();
    spec.mc.workers = 1;
    std::string one = csv_string(run_sweep(spec));
    spec.mc.workers = 8;
    std::string eight = csv_string(run_sweep(spec));
    CHECK(one == eight);
    std::string again = csv_string(run_sweep(spec));
    CHECK(eight == again);
}

TEST_CASE("CSV header and round trip") {
    CHECK(std::string(kCsvHeader) ==
          "snr_db,scheme,estimator,csit,modulation,N,K,t,rate_common_min,"
          "rate_private_sum,sum_rate,ci_halfwidth,n_channel,n_noise,seed,build");

    SweepSpec spec = small_spec();
    SweepResult result = run_sweep(spec);
    const char* path = "test_sweep_tmp.csv";
    emit_csv(result, path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == kCsvHeader);
    in.close();

    auto parsed = parse_csv(path);
    REQUIRE(parsed.size() == result.rows.size());
    for (size_t i = 0; i < parsed.size(); ++i) CHECK(parsed[i] == to_csv_row(result.rows[i]));
    std::remove(path);
}

TEST_CASE("plot emission") {
    SweepSpec spec = small_spec();
    SweepResult result = run_sweep(spec);
    const char* path = "test_sweep_tmp.svg";
    emit_plot(result, path);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first.find("<svg") == 0);
    in.close();
    std::remove(path);

    SweepResult empty;
    CHECK_THROWS_AS(emit_plot(empty, path), ConfigError);
}

TEST_CASE("optimizer-driven split modes resolve per row") {
    SweepSpec spec = small_spec();
    spec.schemes = {Scheme::RS_CI, Scheme::NORS_CI};
    spec.snr_grid_db = {25.0};
    spec.t_mode = SplitMethod::grid;
    spec.t_grid_points = 6;
    spec.use_analytic = true;
    SweepResult result = run_sweep(spec);
    REQUIRE(result.rows.size() == 4);
    for (const auto& row : result.rows) {
        CHECK(row.point.t >= 0.0);
        CHECK(row.point.t <= 1.0);
        if (!scheme_is_rs(row.point.scheme)) CHECK(row.point.t == 1.0);
    }
    // at 25 dB the optimizer keeps a common allocation alive for RS rows
    for (const auto& row : result.rows)
        if (scheme_is_rs(row.point.scheme)) CHECK(row.point.t < 1.0);

    spec.t_mode = SplitMethod::golden;
    spec.t_tol = 5e-2;
    spec.use_analytic = false;
    SweepResult golden = run_sweep(spec);
    REQUIRE(golden.rows.size() == 2);
    CHECK(golden.rows[0].point.sum_rate > 4.0);
}

TEST_CASE("paired streams: NoRS row equals the RS private sum at t = 1") {
    SweepSpec spec = small_spec();
    spec.schemes = {Scheme::RS_ZF, Scheme::NORS_ZF};
    spec.t_value = 1.0;
    SweepResult result = run_sweep(spec);
    for (size_t i = 0; i + 1 < result.rows.size(); i += 2) {
        const auto& rs = result.rows[i];
        const auto& nors = result.rows[i + 1];
        REQUIRE(rs.point.scheme == Scheme::RS_ZF);
        REQUIRE(nors.point.scheme == Scheme::NORS_ZF);
        CHECK(rs.point.rate_private_sum ==
              Catch::Approx(nors.point.sum_rate).margin(1e-12));
    }
}
