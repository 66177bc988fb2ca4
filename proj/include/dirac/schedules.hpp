#pragma once

#include "dirac/testfn.hpp"

namespace dirac {

struct Schedule {
    double t;
    double L;  // 8 t^2
    double r;
};

/// t = sqrt(log g) / (4 sqrt 3), L = 8 t^2, r = sqrt(log g) / (2 g^{1/24}).
/// Real g accepted (only log g enters). g < 2 throws DomainError.
Schedule parameter_schedule(double g);

/// eta = sqrt(log(sqrt(e/2) t (b-a))) / t, valid when t (b-a) >= sqrt(2e).
double eta_schedule(const WindowParams& p);

struct Interval {
    double lower, upper;
};

/// Main-result window for N/area: M(a,b) plus the two remainder bounds
/// with constant C.
Interval theorem1_window(double g, const WindowParams& p, double C = 1);

/// C (b+1) (b-a + 1/sqrt(log g)).
double upper_bound_prop2(double g, const WindowParams& p, double C = 1);

/// lambda^2 / (8 pi).
double weyl_main(double lambda);

/// C (lambda + 1) / sqrt(log g).
double multiplicity_bound(double g, double lambda, double C = 1);

/// -(eta / pi) log ell, leading term of the small-eigenvalue count under pinching.
double pinch_prediction(double eta, double ell);

/// systole >= g^{-1/24} sqrt(log g) and thin_fraction <= g^{-1/3}.
bool good_set_predicate(double g, double systole, double thin_fraction);

// Bound evaluators.

/// (b+1)/(2t) + 1/(2t^2).
double prop6_bound(const WindowParams& p);
/// k (b-a) / (2g - 2 + k).
double prop7_bound(int genus, int cusps, const WindowParams& p);
/// (1/t^2 + (b+1)/r)(1 + t/r) e^{-r^2/(4t^2)}.
double prop10_bound(const WindowParams& p, double r);
/// (4e/r^2)(1/t^2 + (b+1)/r)(1 + t/r) e^{-L}.
double lemma12_bound(const WindowParams& p, double r, double L);
/// (4e/r^2)(1/t^2 + (b+1)/r)(1 + t/r) fraction (1 + L e^L).
double lemma13_bound(const WindowParams& p, double r, double L, double thin_fraction);
/// (1/4pi) [(b^2 - a^2)/2 + (b - a)/pi], from 0 <= lambda coth(pi lambda) <= lambda + 1/pi.
double coth_envelope(double a, double b);

}  // namespace dirac
