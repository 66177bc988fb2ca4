#include "dirac/transforms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include <fmt/format.h>

#include "dirac/errors.hpp"
#include "dirac/quadrature.hpp"

namespace dirac {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailRel = 1e-17;
constexpr int kMaxDoublings = 60;

ScalarFunction derivative_function(const ScalarFunction& f) {
    ScalarFunction d;
    d.value = [f](double x) { return f.deriv(x); };
    d.support_end = f.support_end;
    d.envelope = f.derivative_envelope;
    return d;
}

// Smallest probe point y (doubling from 1/2) beyond which |g(y)| stays below
// kTailRel times the largest value seen; two consecutive quiet probes are
// required so an isolated zero of an oscillating g does not end the search.
template <class G, class Env>
double find_tail(G&& g, Env&& env, double scale0, const char* what) {
    double scale = std::abs(scale0);
    double y = 0.5;
    int quiet = 0;
    for (int k = 0; k < kMaxDoublings; ++k, y *= 2) {
        const double v = std::abs(g(y));
        scale = std::max(scale, v);
        const double e = env(y);
        const bool small = v <= kTailRel * scale && e <= kTailRel * std::max(scale, 1e-300);
        quiet = small ? quiet + 1 : 0;
        if (quiet == 2) return y;
    }
    throw NumericError(std::string(what) + ": integrand does not decay (tail search failed)");
}

double sample_scale(const ScalarFunction& f, double lo, double hi) {
    double s = 0;
    for (int i = 0; i <= 16; ++i) s = std::max(s, std::abs(f(lo + (hi - lo) * i / 16.0)));
    return s;
}

}  // namespace

double ScalarFunction::deriv(double x) const {
    if (x >= support_end) return 0.0;
    if (derivative) return derivative(x);
    const double h = kFiniteDifferenceStep;
    return ((*this)(x + h) - (*this)(x - h)) / (2 * h);
}

ScalarFunction ScalarFunction::zero() {
    ScalarFunction f;
    f.value = [](double) { return 0.0; };
    f.derivative = [](double) { return 0.0; };
    f.support_end = 0;
    return f;
}

double apply_A(const ScalarFunction& f, double x) {
    double upper = 0;
    double scale = 0;
    if (f.compactly_supported()) {
        if (x >= f.support_end) return 0.0;
        upper = std::sqrt(f.support_end - x);
        scale = sample_scale(f, x, f.support_end);
    } else {
        auto g = [&](double y) { return f(x + y * y); };
        auto env = [&](double y) { return f.envelope ? f.envelope(x + y * y) : 0.0; };
        upper = find_tail(g, env, f(x), "op_A");
        for (int i = 0; i <= 16; ++i) scale = std::max(scale, std::abs(g(upper * i / 16.0)));
    }
    if (scale == 0) return 0.0;
    quad::Options opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-17 * scale * std::max(upper, 1.0);
    const auto res = quad::adaptive([&](double y) { return f(x + y * y); },
                                    std::vector<double>{0, upper / 4, upper / 2, upper}, opt);
    // The request is tighter than the 1e-10 relative target so that nested
    // uses (B applied to A f) keep headroom; inner quadrature noise can keep
    // the outer rule from meeting it, which is fine while the target holds.
    const double floor = 1e-12 * scale * std::max(upper, 1.0);  // cancellation-limited results
    const bool ok = res.converged || res.abs_error <= std::max(1e-10 * std::abs(res.value), floor);
    if (!ok) {
        throw NumericError(fmt::format("op_A quadrature did not converge at x={:.6e} (estimate {:.6e}, error {:.3e})",
                                       x, res.value, res.abs_error));
    }
    return res.value;
}

double apply_B(const ScalarFunction& f, double x) {
    return -4 / kPi * apply_A(derivative_function(f), x);
}

ScalarFunction op_A(const ScalarFunction& f) {
    ScalarFunction out;
    const ScalarFunction fp = derivative_function(f);
    out.value = [f](double x) { return apply_A(f, x); };
    out.derivative = [fp](double x) { return apply_A(fp, x); };
    out.support_end = f.support_end;
    return out;
}

ScalarFunction op_B(const ScalarFunction& f) {
    ScalarFunction out;
    const ScalarFunction fp = derivative_function(f);
    const ScalarFunction fpp = derivative_function(fp);
    out.value = [fp](double x) { return -4 / kPi * apply_A(fp, x); };
    out.derivative = [fpp](double x) { return -4 / kPi * apply_A(fpp, x); };
    out.support_end = f.support_end;
    return out;
}

ScalarFunction hcheck_from_phi(const ScalarFunction& phi) {
    if (!phi.compactly_supported()) {
        throw DomainError("hcheck_from_phi needs a compactly supported phi");
    }
    ScalarFunction w;
    w.value = [phi](double x) { return phi(x) / std::sqrt(x + 4); };
    w.derivative = [phi](double x) {
        const double s = std::sqrt(x + 4);
        return phi.deriv(x) / s - phi(x) / (2 * s * (x + 4));
    };
    w.support_end = phi.support_end;

    const ScalarFunction aw = op_A(w);
    ScalarFunction h;
    h.value = [aw](double x) {
        const double sh = std::sinh(x / 2);
        return 4 * std::cosh(x / 2) * aw(4 * sh * sh);
    };
    h.derivative = [aw](double x) {
        const double sh = std::sinh(x / 2);
        const double ch = std::cosh(x / 2);
        const double X = 4 * sh * sh;
        // d/dx 4 sinh^2(x/2) = 2 sinh x = 4 sh ch
        return 2 * sh * aw(X) + 4 * ch * aw.deriv(X) * 4 * sh * ch;
    };
    h.support_end = 2 * std::asinh(std::sqrt(phi.support_end) / 2);
    return h;
}

ScalarFunction hcheck_of_window(const WindowParams& p) {
    ScalarFunction h;
    h.value = [p](double u) { return g_t(p, u); };
    h.derivative = [p](double u) { return g_t_prime(p, u); };
    h.envelope = [p](double u) { return g_t_bound(p, std::abs(u)); };
    h.derivative_envelope = [p](double u) { return g_t_prime_bound(p, std::abs(u)); };
    return h;
}

double kernel_tail_end(const ScalarFunction& h, double r) {
    if (h.compactly_supported()) return std::max(r, h.support_end);
    auto G = [&](double d) {
        const double rho = r + d;
        return h.deriv(rho) - 0.5 * h(rho) * std::tanh(rho / 2);
    };
    if (h.envelope && h.derivative_envelope) {
        auto env = [&](double rho) { return h.derivative_envelope(rho) + 0.5 * h.envelope(rho); };
        const double ref = env(r);
        double d = 0.5;
        for (int k = 0; k < kMaxDoublings; ++k, d *= 2) {
            if (env(r + d) <= kTailRel * ref) return r + d;
        }
        throw NumericError("kernel tail: envelope does not decay");
    }
    auto none = [](double) { return 0.0; };
    return r + find_tail(G, none, G(0), "kernel tail");
}

double kernel_from_hcheck(const ScalarFunction& h, double r, const KernelOptions& opt) {
    if (!(r > 0)) throw DomainError("kernel radius must be positive");
    const double rho_end = kernel_tail_end(h, r);
    if (!(rho_end > r)) return 0.0;
    const double prefactor = -std::cosh(r / 2) / (kPi * std::sqrt(2.0));

    auto G = [&](double rho) { return h.deriv(rho) - 0.5 * h(rho) * std::tanh(rho / 2); };

    // rho = r + s^2: cosh rho - cosh r = 2 sinh(r + s^2/2) sinh(s^2/2), and
    // 2s / sqrt(sinh(s^2/2)) = 2 sqrt(2 q / sinh q), q = s^2/2, is regular at 0.
    auto substituted = [&](double s) {
        const double q = 0.5 * s * s;
        const double rho = r + s * s;
        const double q_over_sinh = q < 1e-4 ? 1 - q * q / 6 : q / std::sinh(q);
        const double jac = 2 * std::sqrt(2 * q_over_sinh) / std::sqrt(2 * std::sinh(r + q));
        return G(rho) / std::cosh(rho / 2) * jac;
    };
    auto original = [&](double rho, double xc) {
        const double mid = 0.5 * (r + rho_end);
        const double delta = rho < mid ? -xc : rho - r;
        if (!(delta > 0)) return 0.0;
        const double denom = std::sqrt(2 * std::sinh(0.5 * (rho + r)) * std::sinh(0.5 * delta));
        return G(rho) / (std::cosh(rho / 2) * denom);
    };

    const double s_end = std::sqrt(rho_end - r);
    auto run_gk = [&]() {
        double scale = 0;
        for (int i = 0; i <= 32; ++i) scale = std::max(scale, std::abs(substituted(s_end * i / 32.0)));
        // Integrands this deep in the Gaussian tail only carry subnormal
        // digits; the kernel value is zero to double precision.
        if (!(scale > 1e-280)) return 0.0;
        quad::Options qo;
        qo.rel_tol = std::min(1e-11, opt.rel_tol * 1e-3);
        qo.abs_tol = 1e-15 * scale * s_end;
        qo.max_intervals = 20000;
        std::vector<double> bp;
        for (int i = 0; i <= 8; ++i) bp.push_back(s_end * i / 8.0);
        const auto res = quad::adaptive(substituted, bp, qo);
        // Near a sign change of K the value is cancellation-limited: accept an
        // error at the rounding level of the integrand.
        const double floor = 1e-13 * scale * s_end;
        if (!res.converged && !(res.abs_error <= std::max(qo.rel_tol * std::abs(res.value), floor))) {
            throw NumericError(fmt::format("kernel quadrature did not converge at r={:.17g} (estimate {:.6e}, error {:.3e})",
                                           r, res.value, res.abs_error));
        }
        return res.value;
    };
    auto run_ts = [&]() {
        const auto res = quad::tanh_sinh(original, r, rho_end, std::min(1e-11, opt.rel_tol * 1e-3));
        return res.value;
    };

    double integral = 0;
    if (opt.cross_check) {
        const double v1 = run_gk();
        const double v2 = run_ts();
        double scale = 0;
        for (int i = 0; i <= 32; ++i) scale = std::max(scale, std::abs(substituted(s_end * i / 32.0)));
        const double tol = 10 * (opt.rel_tol * std::max(std::abs(v1), std::abs(v2)) +
                                 1e-15 * scale * s_end);
        if (std::abs(v1 - v2) > tol) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "kernel schemes disagree at r=%.6g: %.17g vs %.17g", r, v1, v2);
            throw NumericError(buf);
        }
        integral = v1;
    } else if (opt.scheme == KernelScheme::tanh_sinh) {
        integral = run_ts();
    } else {
        integral = run_gk();
    }
    return prefactor * integral;
}

namespace {

struct KeyHash {
    std::size_t operator()(const std::array<double, 4>& k) const {
        std::size_t h = 0;
        for (double v : k) {
            h ^= std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(v)) + 0x9e3779b97f4a7c15ULL +
                 (h << 6) + (h >> 2);
        }
        return h;
    }
};

std::shared_mutex memo_mutex;
std::unordered_map<std::array<double, 4>, double, KeyHash> memo;

}  // namespace

double K_t(const WindowParams& p, double r) {
    const std::array<double, 4> key{p.a, p.b, p.t, r};
    {
        std::shared_lock lock(memo_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    const double v = kernel_from_hcheck(hcheck_of_window(p), r);
    std::unique_lock lock(memo_mutex);
    memo.emplace(key, v);
    return v;
}

double kernel_bound(const WindowParams& p, double r) {
    if (!(r > 0)) return std::numeric_limits<double>::infinity();
    return (1 / (p.t * p.t) + (p.b + 1) / r) * (1 + p.t / r) * std::exp(-r * r / (4 * p.t * p.t));
}

}  // namespace dirac
