#include "rsim/gamma_fit.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "rsim/channel.hpp"
#include "rsim/rng.hpp"

namespace rsim {

namespace {

constexpr int kCalibrationDraws = 100000;
constexpr std::uint64_t kCalibrationSeed = 0x5eedCA11B8A7E5ULL;

std::string cache_key(FitStatistic stat, int n, const std::vector<double>& pathloss,
                      const std::vector<double>& u, int user) {
    std::ostringstream os;
    os << static_cast<int>(stat) << '|' << n << '|' << user;
    os.precision(17);
    for (double g : pathloss) os << '|' << g;
    if (stat == FitStatistic::ci_gain)
        for (double w : u) os << '~' << w;
    return os.str();
}

GammaFit compute(FitStatistic stat, int n_antennas, const std::vector<double>& pathloss,
                 const std::vector<double>& u, int user) {
    const int k_users = static_cast<int>(pathloss.size());
    Rng rng(derive_seed(kCalibrationSeed, StreamTag::calibration,
                        static_cast<std::uint64_t>(stat),
                        static_cast<std::uint64_t>(n_antennas),
                        static_cast<std::uint64_t>(user)));
    KahanSum s1, s2;
    CMatrix h(k_users, n_antennas);
    for (int d = 0; d < kCalibrationDraws; ++d) {
        for (int r = 0; r < k_users; ++r)
            for (int c = 0; c < n_antennas; ++c)
                h(r, c) = rng.cnormal(pathloss[static_cast<size_t>(r)]);
        double sample = 0.0;
        switch (stat) {
            case FitStatistic::row_norm_A: {
                // ||A_user||^2, A = H H^H
                for (int j = 0; j < k_users; ++j)
                    sample += std::norm(h.row(user).dot(h.row(j)));
                break;
            }
            case FitStatistic::mrt_sum_Y: {
                cplx y(0, 0);
                for (int j = 0; j < k_users; ++j) y += (h.row(user) * h.row(j).adjoint())(0, 0);
                sample = y.real();
                break;
            }
            case FitStatistic::ci_gain: {
                // |sum_j A_kj u_j| / (g_k u_k); the PSK phases on the cross
                // terms are immaterial (circular symmetry), calibrate at
                // all-ones symbols.
                cplx y(0, 0);
                for (int j = 0; j < k_users; ++j)
                    y += (h.row(user) * h.row(j).adjoint())(0, 0) * u[static_cast<size_t>(j)];
                sample = std::abs(y) /
                         (pathloss[static_cast<size_t>(user)] * u[static_cast<size_t>(user)]);
                break;
            }
        }
        s1.add(sample);
        s2.add(sample * sample);
    }
    double mean = s1.value() / kCalibrationDraws;
    double var = s2.value() / kCalibrationDraws - mean * mean;
    GammaFit fit;
    if (stat == FitStatistic::row_norm_A) {
        fit.shape = static_cast<double>(n_antennas) * (n_antennas + 1);
        fit.scale = mean / fit.shape;
    } else {
        fit.shape = mean * mean / var;
        fit.scale = var / mean;
    }
    return fit;
}

} // namespace

GammaFit gamma_fit_moments(FitStatistic stat, int n_antennas,
                           const std::vector<double>& pathloss,
                           const std::vector<double>& u, int user) {
    if (user < 0 || user >= static_cast<int>(pathloss.size()))
        throw ConfigError("gamma_fit_moments: user index out of range");
    static std::map<std::string, GammaFit> cache;
    static std::mutex mtx;
    std::string key = cache_key(stat, n_antennas, pathloss, u, user);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    GammaFit fit = compute(stat, n_antennas, pathloss, u, user);
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, fit);
    return fit;
}

} // namespace rsim
