#pragma once

// Shared pieces of the serial and OpenMP geometric-term kernels.

#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/fuchsian.hpp"
#include "dirac/kernel_table.hpp"
#include "dirac/trace_terms.hpp"

namespace dirac::detail {

struct GeometricContext {
    DomainGrid grid;
    double requested_radius = 0;
    double radius = 0;        // effective
    double accept_cosh = 0;   // cosh(radius) with a little slack for the walk-frame test
    double radius_q = 0;      // sinh^2(radius / 2)
    double systole = 0;
    double counting_r = 0;
    std::vector<int> spin_signs;
    std::unique_ptr<KernelTable> table;
    bool trivial = false;     // empty window: every kernel value vanishes
};

GeometricContext prepare_geometric(const SurfaceModel& model, const WindowParams& p,
                                   const TraceSettings& settings);

struct NodeSum {
    std::complex<double> value{0, 0};
    double min_q = INFINITY;  // sinh^2(d/2) of the shortest displacement seen
    std::size_t terms = 0;

    double min_displacement() const { return std::isfinite(min_q) ? 2 * std::asinh(std::sqrt(min_q)) : INFINITY; }
};

/// Adds the contribution of one group element (original frame matrix g,
/// character value chi along its word) at node z if d(z, g z) <= radius.
inline void accumulate_element(NodeSum& acc, const HPoint& z, const Mat2& g, int chi,
                               const GeometricContext& ctx) {
    // w = g^{-1} z; d(z, g^{-1} z) = d(z, g z).
    const double zx = z.x(), zy = z.y();
    const double nr = g.d * zx - g.b, ni = g.d * zy;
    const double dr = g.a - g.c * zx, di = -g.c * zy;
    const double den = dr * dr + di * di;
    const double wx = (nr * dr + ni * di) / den;
    const double wy = zy / den;
    const double dx = zx - wx, dy = zy - wy;
    // q = sinh^2(d/2); the exact distance is only needed inside the radius.
    const double q = (dx * dx + dy * dy) / (4 * zy * wy);
    if (!(q <= ctx.radius_q)) return;
    if (q < acc.min_q) acc.min_q = q;
    const double tr = g.a + g.d;
    const double atr = std::abs(tr);
    if (atr <= 2 + kParabolicBand) {
        if (atr < 2 - kParabolicBand) throw ValidationError("group contains an elliptic element");
        return;  // parabolic: accounted for by the cusp term
    }
    const int eps = tr > 0 ? chi : -chi;
    const double k = ctx.table->at_half_sinh(std::sqrt(q));
    // tau(z -> w) = -i (z - conj w) / |z - conj w|
    const double sx = zx - wx, sy = zy + wy;
    const double inv = 1 / std::sqrt(sx * sx + sy * sy);
    acc.value += std::complex<double>(eps * k * sy * inv, -eps * k * sx * inv);
    ++acc.terms;
}

inline Mat2 conjugate_back(const WalkFrame& f, const Mat2& m) {
    if (f.trivial) return m;
    const Mat2 hi{f.h_inv.a, f.h_inv.b, f.h_inv.c, f.h_inv.d};
    const Mat2 h{f.h.a, f.h.b, f.h.c, f.h.d};
    return mul(mul(hi, m), h);
}

GeometricTerm finish_geometric(const SurfaceModel& model, const GeometricContext& ctx,
                               std::span<const NodeSum> sums, double L);

}  // namespace dirac::detail
