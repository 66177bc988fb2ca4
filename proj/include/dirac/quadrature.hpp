#pragma once

#include <functional>
#include <vector>

namespace dirac::quad {

struct Result {
    double value = 0;
    double abs_error = 0;
    int evaluations = 0;
    bool converged = false;
};

struct Options {
    double abs_tol = 1e-15;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss–Kronrod on [a, b]; the interval with the
/// largest error estimate is bisected until the total estimate meets
/// max(abs_tol, rel_tol * |value|).
Result adaptive(const Integrand& f, double a, double b, const Options& opt = {});

/// Same as adaptive() but with initial breakpoints (sorted, inside [a,b]).
Result adaptive(const Integrand& f, std::vector<double> breakpoints, const Options& opt = {});

/// Double-exponential (tanh-sinh) rule on a finite interval. The integrand
/// receives (x, xc) where xc is the signed distance to the nearer endpoint
/// (a - x on the left half, b - x on the right half), which keeps endpoint
/// singularities resolvable.
using EndpointIntegrand = std::function<double(double, double)>;
Result tanh_sinh(const EndpointIntegrand& f, double a, double b, double rel_tol = 1e-12);

/// Gauss–Legendre rule on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const Rule& gauss_legendre(int n);

/// Gauss–Legendre rule mapped to [a, b].
Rule gauss_legendre(int n, double a, double b);

}  // namespace dirac::quad
