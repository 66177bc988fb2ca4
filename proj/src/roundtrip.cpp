#include <algorithm>
#include <cmath>

#include "dirac/errors.hpp"
#include "dirac/transforms.hpp"

namespace dirac {

namespace {

// exp(1 - 1/(1 - u^2)) on |u| < 1, peak value 1 at u = 0.
double bump(double u) {
    if (std::abs(u) >= 1) return 0.0;
    return std::exp(1 - 1 / (1 - u * u));
}

double bump_prime(double u) {
    if (std::abs(u) >= 1) return 0.0;
    const double q = 1 - u * u;
    return bump(u) * (-2 * u / (q * q));
}

ScalarFunction scaled_bump(double centre, double half_width) {
    ScalarFunction f;
    f.value = [=](double x) { return bump((x - centre) / half_width); };
    f.derivative = [=](double x) { return bump_prime((x - centre) / half_width) / half_width; };
    f.support_end = centre + half_width;
    return f;
}

ScalarFunction exponential(double k) {
    ScalarFunction f;
    f.value = [k](double x) { return std::exp(-k * x); };
    f.derivative = [k](double x) { return -k * std::exp(-k * x); };
    f.envelope = f.value;
    f.derivative_envelope = [k](double x) { return k * std::exp(-k * x); };
    return f;
}

}  // namespace

std::vector<NamedFunction> builtin_bumps() {
    ScalarFunction tilted;
    tilted.value = [](double x) { return (1 + x / 2) * bump(x / 6); };
    tilted.derivative = [](double x) { return bump(x / 6) / 2 + (1 + x / 2) * bump_prime(x / 6) / 6; };
    tilted.support_end = 6;
    return {{"bump_wide", scaled_bump(0, 10)}, {"bump_shifted", scaled_bump(5, 3)}, {"bump_tilted", tilted}};
}

NamedFunction narrow_bump() { return {"bump_narrow", scaled_bump(0, 1)}; }

std::vector<NamedFunction> schwartz_family() {
    ScalarFunction gauss;
    gauss.value = [](double x) { return std::exp(-x * x); };
    gauss.derivative = [](double x) { return -2 * x * std::exp(-x * x); };
    gauss.envelope = gauss.value;
    gauss.derivative_envelope = [](double x) { return 2 * (1 + x) * std::exp(-x * x); };
    return {{"exp", exponential(1)},
            {"exp2", exponential(2)},
            {"gauss", gauss},
            {"bump_wide", scaled_bump(0, 10)},
            {"bump_shifted", scaled_bump(5, 3)}};
}

double kernel_roundtrip_error(const ScalarFunction& phi, double lo, double hi, int points,
                              const KernelOptions& opt) {
    if (points < 1 || !(lo > 0) || hi < lo) throw DomainError("round trip needs 0 < lo <= hi and points >= 1");
    const ScalarFunction h = hcheck_from_phi(phi);
    double err = 0;
    for (int i = 0; i < points; ++i) {
        const double r = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
        const double s = std::sinh(r / 2);
        err = std::max(err, std::abs(kernel_from_hcheck(h, r, opt) - phi(4 * s * s)));
    }
    return err;
}

double ba_roundtrip_error(const ScalarFunction& f, double lo, double hi, int points) {
    if (points < 1 || hi < lo) throw DomainError("round trip needs lo <= hi and points >= 1");
    const ScalarFunction back = op_B(op_A(f));
    double err = 0;
    for (int i = 0; i < points; ++i) {
        const double x = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
        err = std::max(err, std::abs(back(x) - f(x)));
    }
    return err;
}

double sup_abs(const ScalarFunction& f, double lo, double hi, int points) {
    double m = 0;
    for (int i = 0; i < points; ++i) {
        const double x = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
        m = std::max(m, std::abs(f(x)));
    }
    return m;
}

}  // namespace dirac
