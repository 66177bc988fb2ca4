#include "dirac/testfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dirac/errors.hpp"

namespace dirac {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// erf(x) - erf(y) without the cancellation that occurs when both arguments
// sit in the same tail.
double erf_difference(double x, double y) {
    if (x > 0 && y > 0) return std::erfc(y) - std::erfc(x);
    if (x < 0 && y < 0) return std::erfc(-x) - std::erfc(-y);
    return std::erf(x) - std::erf(y);
}
}  // namespace

WindowParams::WindowParams(double a_, double b_, double t_) : a(a_), b(b_), t(t_) {
    if (!(a >= 0) || !(b >= a) || !(t > 0) || !std::isfinite(b) || !std::isfinite(t)) {
        throw DomainError("window needs 0 <= a <= b and t > 0");
    }
}

bool operator==(const WindowParams& p, const WindowParams& q) {
    return p.a == q.a && p.b == q.b && p.t == q.t;
}

namespace detail {

double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1 - x2 / 6 * (1 - x2 / 20);
    }
    return std::sin(x) / x;
}

double sinc_prime_kernel(double x) {
    // (sin x - x cos x) / x^2 = sum_{k>=1} (-1)^{k+1} 2k x^{2k-1} / (2k+1)!
    const double ax = std::abs(x);
    if (ax < 0.5) {
        const double x2 = x * x;
        double term = x / 3;  // k = 1
        double sum = term;
        for (int k = 2; k < 12; ++k) {
            // ratio of successive terms: -x^2 * k / ((k-1) (2k)(2k+1))
            term *= -x2 * k / ((k - 1.0) * (2.0 * k) * (2.0 * k + 1));
            sum += term;
        }
        return sum;
    }
    return (std::sin(x) - x * std::cos(x)) / (x * x);
}

}  // namespace detail

double h_t(const WindowParams& p, double lambda) {
    return 0.5 * erf_difference(p.t * (lambda - p.a), p.t * (lambda - p.b));
}

double H_t(const WindowParams& p, double lambda) {
    const double l = std::abs(lambda);
    return h_t(p, l) + h_t(p, -l);
}

double g_t(const WindowParams& p, double u) {
    const double f = (p.b * detail::sinc(p.b * u) - p.a * detail::sinc(p.a * u)) / kPi;
    return f * std::exp(-u * u / (4 * p.t * p.t));
}

double g_t_prime(const WindowParams& p, double u) {
    // f(u) = (1/pi) int_a^b cos(l u) dl,  f'(u) = -(1/pi) [b^2 j(bu) - a^2 j(au)]
    // with j(x) = (sin x - x cos x)/x^2.
    using detail::sinc;
    using detail::sinc_prime_kernel;
    const double f = (p.b * sinc(p.b * u) - p.a * sinc(p.a * u)) / kPi;
    const double fp = -(p.b * p.b * sinc_prime_kernel(p.b * u) -
                        p.a * p.a * sinc_prime_kernel(p.a * u)) / kPi;
    const double t2 = p.t * p.t;
    return (fp - u / (2 * t2) * f) * std::exp(-u * u / (4 * t2));
}

double s_envelope(double rho) {
    if (!(rho > 0)) throw DomainError("s envelope needs rho > 0");
    return std::exp(-rho * rho) / (2 * std::sqrt(kPi) * rho);
}

double g_t_bound(const WindowParams& p, double u) {
    if (!(u > 0)) return kInf;
    return 2 / (kPi * u) * std::exp(-u * u / (4 * p.t * p.t));
}

double g_t_prime_bound(const WindowParams& p, double u) {
    if (!(u > 0)) return kInf;
    return (1 / (kPi * p.t * p.t) + 4 * p.b / (kPi * u)) * std::exp(-u * u / (4 * p.t * p.t));
}

double soft_indicator(const WindowParams& p, double lambda) {
    // h_t vanishes identically on an empty window, so does its limit.
    if (p.a == p.b) return 0.0;
    if (lambda == p.a || lambda == p.b) return 0.5;
    return (lambda > p.a && lambda < p.b) ? 1.0 : 0.0;
}

double h_t_deviation_bound(const WindowParams& p, double lambda) {
    auto s = [&](double dist) { return dist > 0 ? s_envelope(p.t * dist) : kInf; };
    if (lambda < p.a || lambda == p.b) return s(std::abs(lambda - p.a));
    if (lambda == p.a || lambda > p.b) return s(std::abs(lambda - p.b));
    return s(lambda - p.a) + s(p.b - lambda);
}

}  // namespace dirac
