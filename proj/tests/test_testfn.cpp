#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dirac/errors.hpp"
#include "dirac/quadrature.hpp"
#include "dirac/testfn.hpp"
#include "support.hpp"

using namespace dirac;

namespace {

constexpr double kPi = std::numbers::pi;

// Indicator of [a, b] convolved with the normalised Gaussian of width 1/t.
double h_convolution_oracle(const WindowParams& p, double l) {
    quad::Options o;
    o.rel_tol = 1e-14;
    o.abs_tol = 1e-17;
    const double ker = p.t / std::sqrt(kPi);
    return quad::adaptive([&](double m) { return ker * std::exp(-p.t * p.t * (l - m) * (l - m)); }, p.a, p.b, o)
        .value;
}

// Inverse Fourier transform of H_t by quadrature: (1/pi) int_0^inf H_t(l) cos(l u) dl.
double g_fourier_oracle(const WindowParams& p, double u) {
    quad::Options o;
    o.rel_tol = 1e-13;
    o.abs_tol = 1e-16;
    o.max_intervals = 20000;
    const double hi = p.b + 40 / p.t;
    std::vector<double> br{0, p.a, p.b, hi};
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return quad::adaptive([&](double l) { return H_t(p, l) * std::cos(l * u); }, br, o).value / kPi;
}

}  // namespace

TEST_SUITE("testfn") {

TEST_CASE("window validation") {
    CHECK_THROWS_AS(WindowParams(-1, 1, 1), DomainError);
    CHECK_THROWS_AS(WindowParams(2, 1, 1), DomainError);
    CHECK_THROWS_AS(WindowParams(0, 1, 0), DomainError);
    CHECK_NOTHROW(WindowParams(1, 1, 1));
}

TEST_CASE("h_t examples") {
    const WindowParams p(1, 3, 2);  // t (b - a) = 4
    CHECK(std::abs(h_t(p, 1) - 0.5 * std::erf(4.0)) <= 1e-15);
    CHECK(h_t(p, 1) == doctest::Approx(0.4999999923).epsilon(1e-10));
    CHECK(std::abs(h_t(p, 1) - h_convolution_oracle(p, 1)) <= 1e-12);
    CHECK(h_t(p, 2) == doctest::Approx(std::erf(2.0)).epsilon(1e-15));
    CHECK(h_t(p, 2) == doctest::Approx(0.995322).epsilon(1e-6));
    CHECK(std::abs(h_t(p, 2) - h_convolution_oracle(p, 2)) <= 1e-12);
    CHECK(std::abs(h_t(WindowParams(1, 3, 1e8), 1) - 0.5) <= 1e-12);
}

TEST_CASE("h_t closed form matches the convolution integral") {
    testsupport::Gen gen(51);
    for (int k = 0; k < 500; ++k) {
        const double a = gen.uniform(0, 5), b = a + gen.uniform(0, 5), t = std::exp(gen.uniform(-2, 2));
        const WindowParams p(a, b, t);
        const double l = gen.uniform(-5, 15);
        REQUIRE(std::abs(h_t(p, l) - h_convolution_oracle(p, l)) <= 1e-12);
    }
}

TEST_CASE("h_t range, mass and evenness of H_t") {
    testsupport::Gen gen(53);
    for (int k = 0; k < 20; ++k) {
        const double a = gen.uniform(0, 3), b = a + gen.uniform(0, 4), t = std::exp(gen.uniform(-1, 2));
        const WindowParams p(a, b, t);
        for (int i = 0; i < 5000; ++i) {
            const double l = -20 + 40.0 * i / 4999;
            const double h = h_t(p, l);
            REQUIRE(h >= 0);
            REQUIRE(h <= 1);
            REQUIRE(H_t(p, l) == H_t(p, -l));
        }
        quad::Options o;
        o.rel_tol = 1e-13;
        const double mass = quad::adaptive([&](double l) { return h_t(p, l); },
                                           std::vector<double>{a - 40 / t, a, b, b + 40 / t}, o)
                                .value;
        REQUIRE(std::abs(mass - (b - a)) <= 1e-10 * std::max(1.0, b - a));
    }
}

TEST_CASE("H_t examples") {
    const WindowParams p0(0, 2, 1.5);
    CHECK(H_t(p0, 0) == 2 * h_t(p0, 0));
    const WindowParams p(1, 2, 3);
    CHECK(H_t(p, 1.5) == h_t(p, 1.5) + h_t(p, -1.5));
    CHECK(std::abs(H_t(p, 1.5) - (h_convolution_oracle(p, 1.5) + h_convolution_oracle(p, -1.5))) <= 1e-12);
}

TEST_CASE("g_t examples") {
    CHECK(g_t(WindowParams(1, 3, 1), 0) == doctest::Approx(2 / kPi).epsilon(1e-15));
    CHECK(g_t(WindowParams(0, kPi, 0.7), 0) == doctest::Approx(1).epsilon(1e-15));
    const WindowParams p(1, 2, 1);
    const double expect = (std::sin(6.0) - std::sin(3.0)) / (3 * kPi) * std::exp(-9.0 / 4);
    CHECK(g_t(p, 3) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(g_t(p, 3) == doctest::Approx(-0.004716).epsilon(1e-3));
    CHECK(std::abs(g_t(p, 3) - g_fourier_oracle(p, 3)) <= 1e-9);
}

TEST_CASE("g_t is the inverse Fourier transform of H_t") {
    testsupport::Gen gen(57);
    for (int k = 0; k < 60; ++k) {
        const double a = gen.uniform(0, 3), b = a + gen.uniform(0.1, 3), t = std::exp(gen.uniform(-0.5, 1.5));
        const WindowParams p(a, b, t);
        const double u = gen.uniform(0, 6);
        INFO("a=" << a << " b=" << b << " t=" << t << " u=" << u);
        REQUIRE(std::abs(g_t(p, u) - g_fourier_oracle(p, u)) <= 1e-9);
    }
}

TEST_CASE("g_t is smooth and even through zero") {
    const WindowParams p(0.5, 2.5, 1.3);
    for (double u : {1e-9, 1e-6, 1e-5, 1e-4, 2e-4, 1e-3}) {
        CHECK(g_t(p, u) == g_t(p, -u));
        CHECK(std::abs(g_t(p, u) - g_t(p, 0)) <= u * u);
        CHECK(std::abs(g_t_prime(p, u) + g_t_prime(p, -u)) <= 1e-15);
    }
    CHECK(g_t_prime(p, 0) == 0);
    // Series branch against the direct branch on both sides of the switch.
    CHECK(std::abs(detail::sinc_prime_kernel(0.4999999) - detail::sinc_prime_kernel(0.5000001)) <= 1e-7);
    CHECK(std::abs(detail::sinc(0.99999e-4) - detail::sinc(1.00001e-4)) <= 1e-12);
}

TEST_CASE("g_t_prime matches central differences") {
    const WindowParams p0(1, 2, 1);
    const double hs = 1e-5;
    CHECK(std::abs(g_t_prime(p0, 3) - (g_t(p0, 3 + hs) - g_t(p0, 3 - hs)) / (2 * hs)) <= 1e-7);
    testsupport::Gen gen(59);
    for (int k = 0; k < 1000; ++k) {
        const double a = gen.uniform(0, 4), b = a + gen.uniform(0, 4), t = std::exp(gen.uniform(-1, 2));
        const WindowParams p(a, b, t);
        const double u = gen.uniform(-8, 8);
        const double fd = (g_t(p, u + hs) - g_t(p, u - hs)) / (2 * hs);
        REQUIRE(std::abs(g_t_prime(p, u) - fd) <= 1e-7 * std::max(1.0, b * b));
    }
}

TEST_CASE("decay bounds on g_t and g_t_prime") {
    testsupport::Gen gen(61);
    for (int k = 0; k < 20000; ++k) {
        const double a = gen.uniform(0, 5), b = a + gen.uniform(0, 5), t = std::exp(gen.uniform(-2, 2));
        const WindowParams p(a, b, t);
        const double u = std::exp(gen.uniform(-6, 4));
        REQUIRE(std::abs(g_t(p, u)) <= g_t_bound(p, u) * (1 + 1e-12));
        REQUIRE(std::abs(g_t_prime(p, u)) <= g_t_prime_bound(p, u) * (1 + 1e-12));
    }
    CHECK(std::isinf(g_t_bound(WindowParams(0, 1, 1), 0)));
}

TEST_CASE("s envelope") {
    CHECK(s_envelope(1) == doctest::Approx(std::exp(-1.0) / (2 * std::sqrt(kPi))).epsilon(1e-15));
    CHECK(s_envelope(1) == doctest::Approx(0.103777).epsilon(1e-5));
    CHECK(s_envelope(30) <= 1e-300);
    CHECK_THROWS_AS(s_envelope(0), DomainError);
    CHECK_THROWS_AS(s_envelope(-1), DomainError);
    // Upper bound on the Gaussian tail (1/2) erfc(rho).
    for (double rho = 0.05; rho < 25; rho *= 1.3) REQUIRE(0.5 * std::erfc(rho) <= s_envelope(rho));
}

TEST_CASE("h_t approaches the soft indicator inside the envelope") {
    testsupport::Gen gen(67);
    for (int k = 0; k < 5000; ++k) {
        const double a = gen.uniform(0, 3), b = a + gen.uniform(0.01, 4), t = std::exp(gen.uniform(-1, 3));
        const WindowParams p(a, b, t);
        const double l = gen.uniform(-2, b + 2);
        // Direct form; only checked where it is not cancellation limited.
        const double dev = std::abs(h_t(p, l) - soft_indicator(p, l));
        const double bound = h_t_deviation_bound(p, l);
        if (bound > 1e-13) REQUIRE(dev <= bound * (1 + 1e-9) + 1e-15);
    }
    const WindowParams p(1, 2, 1);
    CHECK(soft_indicator(p, 1) == 0.5);
    CHECK(soft_indicator(p, 2) == 0.5);
    CHECK(soft_indicator(p, 1.5) == 1);
    CHECK(soft_indicator(p, 3) == 0);
    CHECK(soft_indicator(WindowParams(1, 1, 1), 1) == 0);
    // At an endpoint the soft indicator is 1/2 and only the far endpoint contributes.
    CHECK(h_t_deviation_bound(p, 1) == s_envelope(1));
    CHECK(h_t_deviation_bound(WindowParams(1, 1, 1), 1) == INFINITY);
}

}  // TEST_SUITE
