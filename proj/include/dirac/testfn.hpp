#pragma once

namespace dirac {

/// Spectral window [a, b] smoothed at inverse width t.
struct WindowParams {
    double a = 0;
    double b = 1;
    double t = 1;

    WindowParams() = default;
    WindowParams(double a, double b, double t);  // validates 0 <= a <= b, t > 0
};

bool operator==(const WindowParams& p, const WindowParams& q);

// Gaussian-smoothed indicator of the window:
//   h_t(l) = 1/2 [erf(t(l-a)) - erf(t(l-b))]
double h_t(const WindowParams& p, double lambda);

// Even symmetrisation h_t(l) + h_t(-l).
double H_t(const WindowParams& p, double lambda);

// Inverse Fourier transform of H_t,
//   g_t(u) = (sin bu - sin au) / (pi u) * exp(-u^2 / 4t^2),
// evaluated as (b sinc(bu) - a sinc(au)) / pi so it is regular at u = 0.
double g_t(const WindowParams& p, double u);

// Analytic derivative of g_t.
double g_t_prime(const WindowParams& p, double u);

// Tail envelope exp(-rho^2) / (2 sqrt(pi) rho), rho > 0.
double s_envelope(double rho);

// Upper bounds on |g_t| and |g_t'| for u > 0 (Gaussian-window decay bounds).
double g_t_bound(const WindowParams& p, double u);
double g_t_prime_bound(const WindowParams& p, double u);

// Regularised indicator: 1 inside (a, b), 1/2 at the endpoints, 0 outside.
double soft_indicator(const WindowParams& p, double lambda);

// Upper bound on |h_t - soft_indicator| from the s-envelope, +inf where the
// envelope is evaluated at 0.
double h_t_deviation_bound(const WindowParams& p, double lambda);

namespace detail {
double sinc(double x);       // sin x / x
double sinc_prime_kernel(double x);  // (sin x - x cos x) / x^2
}  // namespace detail

}  // namespace dirac
