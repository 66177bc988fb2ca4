#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dirac/errors.hpp"
#include "dirac/quadrature.hpp"
#include "dirac/transforms.hpp"
#include "support.hpp"

using namespace dirac;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarFunction exp_fn(double k) {
    ScalarFunction f;
    f.value = [k](double x) { return std::exp(-k * x); };
    f.derivative = [k](double x) { return -k * std::exp(-k * x); };
    f.envelope = f.value;
    f.derivative_envelope = [k](double x) { return k * std::exp(-k * x); };
    return f;
}

// Kernel of the window family written out from g_t and g_t' directly, with
// rho = r + s^2 removing the inverse square root at the lower end.
double window_kernel_oracle(const WindowParams& p, double r) {
    auto integrand = [&](double s) {
        const double rho = r + s * s;
        const double num = g_t_prime(p, rho) - 0.5 * g_t(p, rho) * std::tanh(rho / 2);
        // cosh(rho) - cosh(r) = 2 sinh((rho + r)/2) sinh(s^2/2)
        const double diff = 2 * std::sinh((rho + r) / 2) * std::sinh(s * s / 2);
        if (s == 0) return num / std::cosh(rho / 2) * 2 / std::sqrt(std::sinh(r));
        return num / (std::cosh(rho / 2) * std::sqrt(diff)) * 2 * s;
    };
    const double smax = std::sqrt(40 * p.t + 20);
    quad::Options o;
    o.rel_tol = 1e-13;
    o.abs_tol = 1e-18;
    o.max_intervals = 20000;
    std::vector<double> br;
    for (int k = 0; k <= 40; ++k) br.push_back(smax * k / 40);
    const double v = quad::adaptive(integrand, br, o).value;
    return -std::cosh(r / 2) / (kPi * std::sqrt(2.0)) * v;
}

}  // namespace

TEST_SUITE("transforms") {

TEST_CASE("op_A examples") {
    const auto Ae = op_A(exp_fn(1));
    const auto A2 = op_A(exp_fn(2));
    for (double x : {0.0, 0.3, 1.0, 4.0, 10.0}) {
        CHECK(std::abs(Ae(x) - std::sqrt(kPi) / 2 * std::exp(-x)) <= 1e-9);
        CHECK(std::abs(A2(x) - 0.5 * std::sqrt(kPi / 2) * std::exp(-2 * x)) <= 1e-9);
        CHECK(op_A(ScalarFunction::zero())(x) == 0);
    }
    // The derivative carried by A f is A f'.
    for (double x : {0.0, 0.5, 2.0}) CHECK(std::abs(Ae.deriv(x) + std::sqrt(kPi) / 2 * std::exp(-x)) <= 1e-9);
}

TEST_CASE("op_B examples") {
    ScalarFunction c;
    c.value = [](double) { return 3.0; };
    c.derivative = [](double) { return 0.0; };
    c.derivative_envelope = [](double) { return 0.0; };
    for (double x : {0.0, 1.0, 5.0}) CHECK(apply_B(c, x) == 0);
    const auto BA = op_B(op_A(exp_fn(1)));
    for (double x : {0.0, 0.5, 1.0, 3.0, 7.0}) CHECK(std::abs(BA(x) - std::exp(-x)) <= 1e-9);
    // B e^{-x} = (4/pi)(sqrt(pi)/2) e^{-x}.
    CHECK(std::abs(apply_B(exp_fn(1), 1.0) - 2 / std::sqrt(kPi) * std::exp(-1.0)) <= 1e-10);
}

TEST_CASE("B inverts A on rapidly decaying functions") {
    for (const auto& nf : schwartz_family()) {
        INFO(nf.name);
        CHECK(ba_roundtrip_error(nf.f, 0, 10, 21) <= 1e-7);
    }
}

TEST_CASE("hcheck from phi") {
    const auto z = hcheck_from_phi([] {
        auto f = ScalarFunction::zero();
        f.support_end = 1;
        return f;
    }());
    for (double x : {0.0, 0.5, 2.0}) CHECK(z(x) == 0);
    CHECK_THROWS_AS(hcheck_from_phi(exp_fn(1)), DomainError);
    const auto bump = builtin_bumps().front().f;
    const auto h = hcheck_from_phi(bump);
    REQUIRE(h.has_derivative());
    testsupport::Gen gen(71);
    for (int k = 0; k < 40; ++k) {
        const double x = gen.uniform(0.5, 5);
        CHECK(std::abs(h(x) - h(-x)) <= 1e-12 * std::max(1.0, std::abs(h(x))));
        const double fd = (h(x + 1e-4) - h(x - 1e-4)) / 2e-4;
        CHECK(std::abs(h.deriv(x) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("window hcheck is g_t") {
    const WindowParams p(0.5, 2, 1.2);
    const auto h = hcheck_of_window(p);
    for (double u : {-3.0, -0.2, 0.0, 0.7, 4.0}) {
        CHECK(h(u) == g_t(p, u));
        CHECK(h.deriv(u) == g_t_prime(p, u));
        CHECK(h(u) == h(-u));
    }
}

TEST_CASE("kernel by two quadrature schemes") {
    const WindowParams p(0, 2, 1);
    const auto h = hcheck_of_window(p);
    KernelOptions gk, ts;
    ts.scheme = KernelScheme::tanh_sinh;
    for (double r : {1.0, 6.0}) {
        const double k1 = kernel_from_hcheck(h, r, gk), k2 = kernel_from_hcheck(h, r, ts);
        INFO("r=" << r << " gk=" << k1 << " ts=" << k2);
        CHECK(std::abs(k1 - k2) <= 1e-8 * std::max(1.0, std::abs(k1)));
        CHECK(std::abs(K_t(p, r) - k1) <= 1e-8 * std::max(1.0, std::abs(k1)));
    }
    KernelOptions both;
    both.cross_check = true;
    CHECK_NOTHROW(kernel_from_hcheck(h, 2.5, both));
}

TEST_CASE("kernel matches a direct quadrature of the window formula") {
    testsupport::Gen gen(73);
    for (int k = 0; k < 30; ++k) {
        const double a = gen.uniform(0, 3), b = a + gen.uniform(0.1, 3), t = gen.uniform(0.3, 2);
        const WindowParams p(a, b, t);
        const double r = gen.uniform(0.2, 8);
        const double oracle = window_kernel_oracle(p, r);
        INFO("a=" << a << " b=" << b << " t=" << t << " r=" << r);
        REQUIRE(std::abs(K_t(p, r) - oracle) <= 1e-8 * std::max(1e-3, std::abs(oracle)));
    }
}

TEST_CASE("kernel errors and trivial inputs") {
    const auto h = hcheck_of_window(WindowParams(0, 2, 1));
    CHECK_THROWS_AS(kernel_from_hcheck(h, 0), DomainError);
    CHECK_THROWS_AS(kernel_from_hcheck(h, -1), DomainError);
    CHECK(kernel_from_hcheck(ScalarFunction::zero(), 1.5) == 0);
}

TEST_CASE("kernel decays like a Gaussian") {
    const WindowParams p(0, 2, 1);
    const double r0 = 10 * p.t * std::sqrt(std::log(1e12));
    for (double r = r0; r < r0 + 10; r += 2.5) CHECK(std::abs(K_t(p, r)) <= 1e-12);
}

TEST_CASE("kernel stays under its decay bound") {
    testsupport::Gen gen(79);
    for (int k = 0; k < 300; ++k) {
        const double a = gen.uniform(0, 4), b = a + gen.uniform(0, 4), t = gen.uniform(0.2, 2);
        const WindowParams p(a, b, t);
        const double r = gen.uniform(0.25, 12);
        REQUIRE(std::abs(K_t(p, r)) <= kernel_bound(p, r));
    }
}

TEST_CASE("kernel is linear in the window width near zero width") {
    const double t = 1, a = 1.3;
    for (double r : {1.0, 3.0}) {
        const double k1 = K_t(WindowParams(a, a + 1e-3, t), r), k2 = K_t(WindowParams(a, a + 2e-3, t), r);
        CHECK(std::abs(k2 / k1 - 2) <= 5e-3);
        CHECK(K_t(WindowParams(a, a, t), r) == 0);
    }
}

TEST_CASE("kernel round trip reproduces phi") {
    for (const auto& nf : builtin_bumps()) {
        INFO(nf.name);
        const double sup = sup_abs(nf.f, 0, 10, 50);
        CHECK(kernel_roundtrip_error(nf.f, 0.1, 2.8, 6) <= 1e-6 * (1 + sup));
    }
}

}  // TEST_SUITE
