#pragma once

#include <functional>

namespace rasp {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Regularized incomplete beta I_x(p, b) for x in [0,1], p,b > 0.
// Monotone nondecreasing in x, I_0 = 0, I_1 = 1.
double regularized_incomplete_beta(double x, double p, double b);

// Lower incomplete gamma  gamma(s,t) = int_0^t u^{s-1} e^{-u} du,  s > 0, t >= 0.
double lower_incomplete_gamma(double s, double t);

// Regularized lower incomplete gamma P(s,t) = gamma(s,t) / Gamma(s).
double regularized_lower_gamma(double s, double t);

// Bisection for a monotone-decreasing f on [lo, hi], interval width <= tol.
// Saturates: f > 0 throughout -> hi, f < 0 throughout -> lo.
double find_root_decreasing(const std::function<double(double)>& f,
                            double lo, double hi, double tol);

// Adaptive Gauss-Kronrod (G7,K15) quadrature of f on [a,b] to absolute
// tolerance abs_tol.
double integrate(const std::function<double(double)>& f,
                 double a, double b, double abs_tol = 1e-10);

// ln C(n,k).
double log_binomial(int n, int k);

// Gamma(shape, rate) pdf at y (0 for y <= 0).
double gamma_pdf(double y, double shape, double rate);

} // namespace rasp
