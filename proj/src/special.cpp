#include "rsim/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace rsim {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr int kMaxSeriesTerms = 10000;

double series_1f1(double a, double b, double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < kMaxSeriesTerms; ++n) {
        term *= (a + n) * z / ((b + n) * (n + 1));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && n > 2) return sum;
        if (!std::isfinite(sum)) throw NumericError("1F1 series overflow");
    }
    throw NumericError("1F1 series did not converge within 10^4 terms");
}

// Truncated-at-smallest-term asymptotic expansion of the z -> +inf form
//   1F1(a,b,z) ~ Gamma(b)/Gamma(a) e^z z^{a-b} sum_j (b-a)_j (1-a)_j / (j! z^j)
double asymptotic_series(double p, double q, double z) {
    // sum_j (p)_j (q)_j / (j! z^j), truncated where terms stop shrinking
    double term = 1.0;
    double sum = 1.0;
    double prev = std::abs(term);
    for (int j = 0; j < 200; ++j) {
        term *= (p + j) * (q + j) / ((j + 1) * z);
        if (std::abs(term) >= prev) break;
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) <= 1e-16 * std::abs(sum)) break;
    }
    return sum;
}

double gamma_ratio(double num, double den) {
    // Gamma(num)/Gamma(den) handling negative non-integer arguments through
    // the reflection formula inside lgamma's domain.
    auto lg = [](double x, int& sign) {
        if (x > 0) {
            sign = 1;
            return std::lgamma(x);
        }
        // Gamma(x) = pi / (sin(pi x) Gamma(1-x))
        double s = std::sin(kPi * x);
        if (s == 0.0) throw NumericError("Gamma pole");
        sign = s > 0 ? 1 : -1;
        return std::log(kPi / std::abs(s)) - std::lgamma(1.0 - x);
    };
    int sn, sd;
    double v = lg(num, sn) - lg(den, sd);
    return sn * sd * std::exp(v);
}

} // namespace

double ln_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw NumericError("ln_gamma pole at non-positive integer");
    return std::lgamma(x);
}

double kummer_1f1(double a, double b, double z) {
    if (b <= 0.0 && b == std::floor(b))
        throw NumericError("1F1 undefined for non-positive integer b");
    if (!std::isfinite(z)) throw NumericError("1F1 requires finite z");
    if (z == 0.0) return 1.0;
    // Terminating polynomial when a is a non-positive integer.
    if (a <= 0.0 && a == std::floor(a)) {
        double term = 1.0, sum = 1.0;
        int n_terms = static_cast<int>(-a);
        for (int n = 0; n < n_terms; ++n) {
            term *= (a + n) * z / ((b + n) * (n + 1));
            sum += term;
        }
        return sum;
    }
    if (std::abs(z) <= 30.0) return series_1f1(a, b, z);
    if (z < 0.0) return std::exp(z) * kummer_1f1(b - a, b, -z);
    // Large positive z.
    return gamma_ratio(b, a) * std::exp(z + (a - b) * std::log(z)) *
           asymptotic_series(b - a, 1.0 - a, z);
}

namespace {

// Symmetric tridiagonal QL with implicit shifts; tracks only the first row of
// the eigenvector matrix, which is all Golub-Welsch needs for the weights.
void tql_first_components(std::vector<double>& diag, std::vector<double>& off,
                          std::vector<double>& first) {
    const int n = static_cast<int>(diag.size());
    first.assign(static_cast<size_t>(n), 0.0);
    first[0] = 1.0;
    off.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= 1e-300 + 1e-15 * dd) break;
            }
            if (m != l) {
                if (iter++ == 80) throw NumericError("quadrature eigensolver failed to converge");
                double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + off[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * off[i];
                    double bb = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        off[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * bb;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - bb;
                    double ftmp = first[static_cast<size_t>(i + 1)];
                    first[static_cast<size_t>(i + 1)] = s * first[static_cast<size_t>(i)] + c * ftmp;
                    first[static_cast<size_t>(i)] = c * first[static_cast<size_t>(i)] - s * ftmp;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                diag[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }
}

QuadratureRule golub_welsch(QuadKind kind, int n, std::vector<double> diag,
                            std::vector<double> off, double weight_total) {
    std::vector<double> first;
    tql_first_components(diag, off, first);
    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(),
              [&diag](int a, int b) { return diag[static_cast<size_t>(a)] < diag[static_cast<size_t>(b)]; });
    QuadratureRule rule;
    rule.kind = kind;
    rule.order = n;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int j = idx[static_cast<size_t>(i)];
        rule.nodes[static_cast<size_t>(i)] = diag[static_cast<size_t>(j)];
        double f = first[static_cast<size_t>(j)];
        rule.weights[static_cast<size_t>(i)] = weight_total * f * f;
    }
    return rule;
}

} // namespace

QuadratureRule quadrature_rule(QuadKind kind, int n) {
    if (n < 2 || n > 64) throw ConfigError("quadrature order must lie in [2, 64]");
    std::vector<double> diag(static_cast<size_t>(n)), off(static_cast<size_t>(n - 1));
    if (kind == QuadKind::Legendre) {
        for (int j = 0; j < n; ++j) diag[static_cast<size_t>(j)] = 0.0;
        for (int j = 1; j < n; ++j)
            off[static_cast<size_t>(j - 1)] = j / std::sqrt(4.0 * j * j - 1.0);
        return golub_welsch(kind, n, diag, off, 2.0);
    }
    for (int j = 0; j < n; ++j) diag[static_cast<size_t>(j)] = 2.0 * j + 1.0;
    for (int j = 1; j < n; ++j) off[static_cast<size_t>(j - 1)] = static_cast<double>(j);
    return golub_welsch(kind, n, diag, off, 1.0);
}

QuadratureRule generalized_laguerre_rule(double alpha, int n) {
    if (n < 2 || n > 128) throw ConfigError("generalized Laguerre order must lie in [2, 128]");
    if (!(alpha > -1.0)) throw ConfigError("generalized Laguerre requires alpha > -1");
    std::vector<double> diag(static_cast<size_t>(n)), off(static_cast<size_t>(n - 1));
    for (int j = 0; j < n; ++j) diag[static_cast<size_t>(j)] = 2.0 * j + alpha + 1.0;
    for (int j = 1; j < n; ++j)
        off[static_cast<size_t>(j - 1)] = std::sqrt(j * (j + alpha));
    return golub_welsch(QuadKind::Laguerre, n, diag, off, std::tgamma(alpha + 1.0));
}

double gamma_square_exp_closed_form(double shape, double scale, double a2) {
    if (a2 == 0.0) return 1.0;
    // E[e^{-a2 Y^2}] = w^{v/2} sqrt(pi) [ 1F1(v/2,1/2,w)/Gamma((v+1)/2)
    //                  - 2 sqrt(w) 1F1((v+1)/2,3/2,w)/Gamma(v/2) ],
    // w = 1/(4 a2 scale^2).
    double w = 1.0 / (4.0 * a2 * scale * scale);
    double f1 = kummer_1f1(shape / 2.0, 0.5, w);
    double f2 = kummer_1f1((shape + 1.0) / 2.0, 1.5, w);
    double t1 = f1 / std::tgamma((shape + 1.0) / 2.0);
    double t2 = 2.0 * std::sqrt(w) * f2 / std::tgamma(shape / 2.0);
    return std::pow(w, shape / 2.0) * std::sqrt(kPi) * (t1 - t2);
}

namespace {

const QuadratureRule& cached_gen_laguerre(double alpha) {
    static std::map<double, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(alpha);
    if (it == cache.end())
        it = cache.emplace(alpha, generalized_laguerre_rule(alpha, 48)).first;
    return it->second;
}

} // namespace

double gamma_square_exp_mean(double shape, double scale, double a2) {
    if (!(shape > 0.0 && scale > 0.0)) throw ConfigError("Gamma parameters must be positive");
    if (!(a2 >= 0.0)) throw ConfigError("a2 must be non-negative");
    if (a2 == 0.0) return 1.0;
    double w = 1.0 / (4.0 * a2 * scale * scale);
    if (w <= 5.0) return gamma_square_exp_closed_form(shape, scale, a2);
    // The two-1F1 closed form cancels to ~e^w * poly(w) digits, so past
    // w ~ 5 it cannot hold 1e-10 in doubles; integrate against the Gamma
    // weight instead. f(z) = exp(-a2 scale^2 z^2) is smooth, so the fixed
    // 48-node rule is far below the target here.
    const QuadratureRule& rule = cached_gen_laguerre(shape - 1.0);
    double c = a2 * scale * scale;
    KahanSum sum;
    for (size_t r = 0; r < rule.nodes.size(); ++r) {
        double z = rule.nodes[r];
        sum.add(rule.weights[r] * std::exp(-c * z * z));
    }
    return sum.value() / std::tgamma(shape);
}

} // namespace rsim
