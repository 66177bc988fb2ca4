#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dirac/testfn.hpp"

namespace dirac {

/// A real function on [0, inf) or R together with what the integral
/// transforms need to truncate it: an optional analytic derivative, a
/// support end beyond which it vanishes, and optional decay envelopes.
struct ScalarFunction {
    using Fn = std::function<double(double)>;

    Fn value;
    Fn derivative;  // empty: central differences with step 1e-5
    double support_end = std::numeric_limits<double>::infinity();
    Fn envelope;             // |f(x)| <= envelope(x) for large x, non-increasing
    Fn derivative_envelope;  // same for |f'|

    double operator()(double x) const { return x >= support_end ? 0.0 : value(x); }
    double deriv(double x) const;
    bool has_derivative() const { return static_cast<bool>(derivative); }
    bool compactly_supported() const { return support_end < std::numeric_limits<double>::infinity(); }

    static ScalarFunction zero();
};

inline constexpr double kFiniteDifferenceStep = 1e-5;

/// (A f)(x) = int_0^inf f(x + y^2) dy. The result carries derivative A(f').
ScalarFunction op_A(const ScalarFunction& f);

/// (B f)(x) = -(4/pi) int_0^inf f'(x + y^2) dy.
ScalarFunction op_B(const ScalarFunction& f);

/// Evaluate A f at one point (relative target 1e-12). Throws NumericError
/// when the quadrature or the tail search fails.
double apply_A(const ScalarFunction& f, double x);
double apply_B(const ScalarFunction& f, double x);

/// From a compactly supported phi on [0, inf): w = phi / sqrt(x + 4) and
///   hcheck(x) = 4 cosh(x/2) (A w)(4 sinh^2(x/2)),
/// with analytic derivative when phi supplies one. Throws DomainError for
/// unbounded support.
ScalarFunction hcheck_from_phi(const ScalarFunction& phi);

/// The even function hcheck = g_t with analytic derivative and Gaussian
/// envelopes.
ScalarFunction hcheck_of_window(const WindowParams& p);

enum class KernelScheme {
    substituted_gauss_kronrod,  // rho = r + s^2, adaptive Gauss–Kronrod
    tanh_sinh,                  // original variable, endpoint-resolving rule
};

struct KernelOptions {
    // Accuracy target. Each scheme requests min(1e-11, rel_tol/1000) from its
    // quadrature; cross-checking fails when the schemes differ by more than
    // 10 * rel_tol.
    double rel_tol = 1e-8;
    bool cross_check = false;  // run both schemes, NumericError when they disagree
    KernelScheme scheme = KernelScheme::substituted_gauss_kronrod;
};

/// Kernel associated with hcheck:
///   K(r) = -cosh(r/2)/(pi sqrt 2) int_r^inf [hcheck'(p) - hcheck(p) tanh(p/2)/2]
///                                    / [cosh(p/2) sqrt(cosh p - cosh r)] dp.
double kernel_from_hcheck(const ScalarFunction& hcheck, double r, const KernelOptions& opt = {});

/// Kernel of the window family, memoised on (a, b, t, r). The memo is safe
/// for concurrent readers and writers.
double K_t(const WindowParams& p, double r);

/// Upper bound on |K_t(r)| from the Gaussian-window decay estimates.
double kernel_bound(const WindowParams& p, double r);

/// Radius beyond which the tail of int_r^inf in the kernel formula is
/// negligible (relative 1e-17 of the integrand envelope at r).
double kernel_tail_end(const ScalarFunction& hcheck, double r);


struct NamedFunction {
    std::string name;
    ScalarFunction f;
};

/// Smooth compactly supported phi used by the kernel round trip: a wide
/// bump on [0, 10], a bump on [2, 8] and a tilted bump on [0, 6].
std::vector<NamedFunction> builtin_bumps();
/// exp(1 - 1/(1 - x^2)) on [0, 1].
NamedFunction narrow_bump();
/// Rapidly decaying functions for the B(A f) = f identity: e^{-x}, e^{-2x},
/// e^{-x^2}, and two bumps.
std::vector<NamedFunction> schwartz_family();

/// Largest |kernel_from_hcheck(hcheck_from_phi(phi), r) - phi(4 sinh^2(r/2))|
/// over `points` equally spaced r in [lo, hi].
double kernel_roundtrip_error(const ScalarFunction& phi, double lo, double hi, int points,
                              const KernelOptions& opt = {});
/// Largest |B(A f)(x) - f(x)| over `points` equally spaced x in [lo, hi].
double ba_roundtrip_error(const ScalarFunction& f, double lo, double hi, int points);
/// Largest |f| over the same kind of grid.
double sup_abs(const ScalarFunction& f, double lo, double hi, int points);

}  // namespace dirac
