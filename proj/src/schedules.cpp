#include "dirac/schedules.hpp"

#include <cmath>
#include <numbers>

#include "dirac/errors.hpp"
#include "dirac/trace_terms.hpp"

namespace dirac {

namespace {

double sqrt_log_g(double g) {
    if (!(g >= 2) || !std::isfinite(g)) throw DomainError("schedules need g >= 2");
    return std::sqrt(std::log(g));
}

// (1/t^2 + (b+1)/r)(1 + t/r), shared by the thick/thin estimates.
double kernel_prefactor(const WindowParams& p, double r) {
    return (1 / (p.t * p.t) + (p.b + 1) / r) * (1 + p.t / r);
}

void check_r(double r) {
    if (!(r > 0 && r <= 2)) throw DomainError("counting radius r must lie in (0, 2]");
}

}  // namespace

Schedule parameter_schedule(double g) {
    const double s = sqrt_log_g(g);
    const double t = s / (4 * std::sqrt(3.0));
    return {t, 8 * t * t, s / (2 * std::pow(g, 1.0 / 24))};
}

double eta_schedule(const WindowParams& p) {
    const double x = p.t * (p.b - p.a);
    const double threshold = std::sqrt(2 * std::numbers::e);
    if (!(x >= threshold * (1 - 1e-12))) {
        throw DomainError("eta schedule needs t (b - a) >= sqrt(2e); use the trivial bound instead");
    }
    const double arg = std::sqrt(std::numbers::e / 2) * x;
    const double eta = std::sqrt(std::max(0.0, std::log(arg))) / p.t;
    if (eta < (1 / p.t) * (1 - 1e-9) || eta > 0.5 * (p.b - p.a) * (1 + 1e-9)) {
        throw NumericError("eta outside [1/t, (b-a)/2]");
    }
    return eta;
}

Interval theorem1_window(double g, const WindowParams& p, double C) {
    const double s = sqrt_log_g(g);
    const double m = main_term(p.a, p.b);
    const double base = C * (p.b + 1) / s;
    return {m - base, m + base * (1 + std::sqrt(std::log(2 + (p.b - p.a) * s)))};
}

double upper_bound_prop2(double g, const WindowParams& p, double C) {
    return C * (p.b + 1) * (p.b - p.a + 1 / sqrt_log_g(g));
}

double weyl_main(double lambda) {
    if (!(lambda >= 0)) throw DomainError("weyl_main needs lambda >= 0");
    return lambda * lambda / (8 * std::numbers::pi);
}

double multiplicity_bound(double g, double lambda, double C) {
    if (!(lambda >= 0)) throw DomainError("multiplicity bound needs lambda >= 0");
    return C * (lambda + 1) / sqrt_log_g(g);
}

double pinch_prediction(double eta, double ell) {
    if (!(eta > 0)) throw DomainError("pinch prediction needs eta > 0");
    if (!(ell > 0 && ell < 1)) throw DomainError("pinch prediction needs 0 < ell < 1");
    return -(eta / std::numbers::pi) * std::log(ell);
}

bool good_set_predicate(double g, double systole, double thin_fraction) {
    const double s = sqrt_log_g(g);
    return systole >= std::pow(g, -1.0 / 24) * s && thin_fraction <= std::pow(g, -1.0 / 3);
}

double prop6_bound(const WindowParams& p) {
    return (p.b + 1) / (2 * p.t) + 1 / (2 * p.t * p.t);
}

double prop7_bound(int genus, int cusps, const WindowParams& p) {
    const int chi = 2 * genus - 2 + cusps;
    if (genus < 0 || cusps < 0 || chi <= 0) throw DomainError("signature must satisfy 2g - 2 + k > 0");
    return cusps * (p.b - p.a) / chi;
}

double prop10_bound(const WindowParams& p, double r) {
    if (!(r > 0)) throw DomainError("kernel bound needs r > 0");
    return kernel_prefactor(p, r) * std::exp(-r * r / (4 * p.t * p.t));
}

double lemma12_bound(const WindowParams& p, double r, double L) {
    check_r(r);
    return 4 * std::numbers::e / (r * r) * kernel_prefactor(p, r) * std::exp(-L);
}

double lemma13_bound(const WindowParams& p, double r, double L, double thin_fraction) {
    check_r(r);
    return 4 * std::numbers::e / (r * r) * kernel_prefactor(p, r) * thin_fraction * (1 + L * std::exp(L));
}

double coth_envelope(double a, double b) {
    return ((b * b - a * a) / 2 + (b - a) / std::numbers::pi) / (4 * std::numbers::pi);
}

}  // namespace dirac
