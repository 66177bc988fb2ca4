#pragma once

// Hand-rolled generators for the property tests.

#include <cmath>
#include <random>

#include "dirac/hyperbolic.hpp"

namespace testsupport {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    // Log-uniform heights so points near the boundary and high up both occur.
    dirac::HPoint point(double xr = 5, double log_y = 3) {
        return {uniform(-xr, xr), std::exp(uniform(-log_y, log_y))};
    }

    // Random SL(2,R) element: rotation * dilation * translation.
    dirac::MoebiusElement sl2(double spread = 2) {
        const double th = uniform(0, 2 * M_PI), l = uniform(-spread, spread), s = uniform(-spread, spread);
        const double c = std::cos(th), sn = std::sin(th), e = std::exp(l / 2);
        // [[c, -s],[s, c]] * diag(e, 1/e) * [[1, s],[0, 1]]
        const double a = c * e, b = -sn / e, cc = sn * e, d = c / e;
        return dirac::MoebiusElement::from_entries(a, a * s + b, cc, cc * s + d);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testsupport
