#ifndef RSIM_COMMON_HPP
#define RSIM_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsim {

using cplx = std::complex<double>;

// Exit codes used by the CLI: 2 config, 3 numeric, 4 resource.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Neumaier compensated summation; the cross-draw reductions use this so the
/// result does not depend on how work was split across threads.
class KahanSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace rsim

#endif
