#ifndef RSIM_SPECIAL_HPP
#define RSIM_SPECIAL_HPP

#include <vector>

#include "rsim/common.hpp"

namespace rsim {

double ln_gamma(double x);

/// Confluent hypergeometric 1F1(a;b;z), relative error target 1e-10.
/// Power series for |z| <= 30, asymptotic expansions beyond (the Kummer
/// transform maps large negative z onto the positive-z expansion).
double kummer_1f1(double a, double b, double z);

enum class QuadKind { Laguerre, Legendre };

/// Gaussian quadrature nodes/weights, 2 <= n <= 64, nodes ascending.
/// Laguerre integrates against e^{-x} on [0,inf) (weights sum to 1);
/// Legendre against 1 on [-1,1] (weights sum to 2).
struct QuadratureRule {
    QuadKind kind;
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule quadrature_rule(QuadKind kind, int n);

/// Generalized Gauss-Laguerre for weight x^alpha e^{-x}; weights sum to
/// Gamma(alpha+1). Used for Gamma-density integrals with fractional shape.
QuadratureRule generalized_laguerre_rule(double alpha, int n);

/// E[exp(-a2 * Y^2)] for Y ~ Gamma(shape, scale). Closed form via 1F1 where
/// it is numerically safe (w = 1/(4*a2*scale^2) <= 5), generalized
/// Gauss-Laguerre otherwise; the two branches agree to ~1e-9 at the seam.
double gamma_square_exp_mean(double shape, double scale, double a2);

/// The printed closed form only (the two-1F1 expression): exposed so tests
/// can validate it against direct numeric integration of the density form.
double gamma_square_exp_closed_form(double shape, double scale, double a2);

} // namespace rsim

#endif
