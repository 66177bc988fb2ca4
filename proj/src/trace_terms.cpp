#include "dirac/trace_terms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dirac/errors.hpp"
#include "dirac/quadrature.hpp"
#include "dirac/schedules.hpp"
#include "dirac/transforms.hpp"
#include "geometric_common.hpp"

namespace dirac {

namespace {

constexpr double kPi = std::numbers::pi;

// lambda coth(pi lambda), written to stay accurate near 0 (limit 1/pi).
double lambda_coth(double lambda) {
    const double x = std::abs(lambda);
    if (x < 1e-8) return 1 / kPi + kPi * x * x / 3;
    return x + 2 * x / std::expm1(2 * kPi * x);
}

}  // namespace

SurfaceModel SurfaceModel::gamma2(SpinAssignment spin) {
    return with_signature(GroupPresentation::gamma2(), std::move(spin), 0, 3);
}

SurfaceModel SurfaceModel::cyclic(double ell, SpinAssignment spin, const DomainGridOptions& grid) {
    auto group = GroupPresentation::cyclic(ell);
    SurfaceModel m{group, std::move(spin), 0, 0, truncated_domain_area(group, grid)};
    return m;
}

SurfaceModel SurfaceModel::with_signature(GroupPresentation group, SpinAssignment spin, int genus, int cusps) {
    const double area = area_of_signature(genus, cusps);
    return SurfaceModel{std::move(group), std::move(spin), genus, cusps, area};
}

void SurfaceModel::validate() const {
    spin.check_against(group);
    if (!(area > 0) || !std::isfinite(area)) throw ValidationError("surface area must be positive");
    if (group.model() != GroupModel::custom && !is_nontrivial(spin, group).nontrivial) {
        throw ValidationError("spin structure is trivial at a cusp");
    }
}

double main_term(double a, double b) {
    if (!(a >= 0) || !(b >= a) || !std::isfinite(b)) throw DomainError("main term needs 0 <= a <= b");
    if (a == b) return 0;
    // lambda coth(pi lambda) = lambda + 2 lambda / (e^{2 pi lambda} - 1). The
    // first part is exact; the second lives within a few units of 0, where a
    // single panel over [a, b] would miss it for large b.
    const double linear = (b - a) * (b + a) / 2;
    double correction = 0;
    const double end = std::min(b, 8.0);
    if (a < end) {
        std::vector<double> bp{a};
        for (double x : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0}) {
            if (x > a && x < end) bp.push_back(x);
        }
        bp.push_back(end);
        quad::Options opt;
        opt.rel_tol = 1e-14;
        opt.abs_tol = 1e-17;
        auto remainder = [](double l) {
            if (l == 0) return 1 / kPi;
            return 2 * l / std::expm1(2 * kPi * l);
        };
        const auto r = quad::adaptive(remainder, bp, opt);
        if (!r.converged) throw NumericError("main term quadrature did not converge");
        correction = r.value;
    }
    return (linear + correction) / (4 * kPi);
}

double integral_term(const WindowParams& p) {
    if (p.a == p.b) return 0;
    // H_t lambda coth is even; beyond b + 9/t the erfc tail is below 1e-35.
    const double end = p.b + 9 / p.t;
    std::vector<double> bp{0, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0};
    for (double x : {p.a - 3 / p.t, p.a, p.a + 3 / p.t, p.b - 3 / p.t, p.b, p.b + 3 / p.t}) {
        if (x > 0 && x < end) bp.push_back(x);
    }
    std::erase_if(bp, [&](double x) { return x >= end; });
    bp.push_back(end);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    quad::Options opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-300;
    const auto r = quad::adaptive([&](double l) { return H_t(p, l) * lambda_coth(l); }, bp, opt);
    if (!r.converged) throw NumericError("integral term quadrature did not converge");
    return 2 * r.value / (8 * kPi);
}

double cusp_term(const SurfaceModel& model, const WindowParams& p) {
    return -(model.cusps * std::log(2.0)) / (2 * model.area) * g_t(p, 0);
}

double tail_radius(const WindowParams& p, double counting_r, double tol, double scale) {
    if (!(counting_r > 0)) throw DomainError("tail radius needs a positive counting radius");
    // Shell [j, j+1) holds at most 4 e^{2+j} / r^2 hyperbolic elements, each with
    // |K| <= kernel_bound(j); the integral over F and the 1/(2 area) give the 1/2.
    auto shell = [&](int j) {
        const double rho = std::max<double>(j, counting_r);
        const double pre = (1 / (p.t * p.t) + (p.b + 1) / rho) * (1 + p.t / rho);
        return 2 / (counting_r * counting_r) * pre * std::exp(2.0 + j - rho * rho / (4 * p.t * p.t));
    };
    const int jmax = 4000;
    std::vector<double> tail(jmax + 2, 0.0);
    for (int j = jmax; j >= 1; --j) tail[j] = tail[j + 1] + shell(j);
    const double target = tol * scale;
    for (int j = 1; j <= jmax; ++j) {
        if (tail[j] <= target) return j;
    }
    throw NumericError("no truncation radius meets the tail tolerance");
}

namespace detail {

GeometricContext prepare_geometric(const SurfaceModel& model, const WindowParams& p,
                                   const TraceSettings& s) {
    GeometricContext ctx;
    ctx.grid = fundamental_domain_grid(model.group, s.grid);
    ctx.spin_signs = model.spin.signs;
    ctx.systole = s.systole > 0 ? s.systole : systole_estimate(model.group, 8).value;
    ctx.counting_r = std::isfinite(ctx.systole) ? std::min(2.0, ctx.systole / 2) : 2.0;
    if (p.a == p.b) {
        ctx.trivial = true;
        return ctx;
    }
    const double scale = std::abs(integral_term(p) + cusp_term(model, p));
    const double floor_scale = scale > 0 ? scale : 1.0;
    ctx.requested_radius = s.truncation_radius > 0
                               ? s.truncation_radius
                               : tail_radius(p, ctx.counting_r, s.tail_tolerance, floor_scale);
    const double negligible = tail_radius(p, ctx.counting_r, s.negligible_tolerance, floor_scale);
    ctx.radius = std::min(ctx.requested_radius, negligible);
    ctx.accept_cosh = std::cosh(ctx.radius) * (1 + 1e-9);
    ctx.radius_q = std::pow(std::sinh(ctx.radius / 2), 2);
    const double lo = std::isfinite(ctx.systole) ? std::clamp(0.9 * ctx.systole, 0.05, 0.5 * ctx.radius) : 0.05;
    ctx.table = std::make_unique<KernelTable>(p, lo, std::max(ctx.radius, lo + s.kernel_panel),
                                              s.kernel_panel, s.kernel_degree);
    return ctx;
}

GeometricTerm finish_geometric(const SurfaceModel& model, const GeometricContext& ctx,
                               std::span<const NodeSum> sums, double L) {
    GeometricTerm out;
    out.truncation_radius = ctx.requested_radius;
    out.effective_radius = ctx.radius;
    out.systole = ctx.systole;
    out.counting_r = ctx.counting_r;
    out.grid_nodes = static_cast<int>(ctx.grid.nodes.size());
    out.kernel_table_error = ctx.table ? ctx.table->max_check_error() : 0;
    out.min_local_injectivity = INFINITY;
    out.max_local_injectivity = 0;
    std::complex<double> plus{0, 0}, minus{0, 0};
    for (std::size_t i = 0; i < sums.size(); ++i) {
        const auto& node = ctx.grid.nodes[i];
        // Nothing within the radius means the local injectivity radius is at least radius/2.
        const double md = sums[i].min_displacement();
        const double inj = std::isfinite(md) ? md / 2 : ctx.radius / 2;
        out.min_local_injectivity = std::min(out.min_local_injectivity, inj);
        out.max_local_injectivity = std::max(out.max_local_injectivity, inj);
        out.total_weight += node.weight;
        out.terms += sums[i].terms;
        if (inj < L) {
            minus += node.weight * sums[i].value;
            out.thin_weight += node.weight;
        } else {
            plus += node.weight * sums[i].value;
        }
    }
    const double norm = 1 / (2 * model.area);
    out.R_plus = plus * norm;
    out.R_minus = minus * norm;
    out.thin_fraction = out.total_weight > 0 ? out.thin_weight / out.total_weight : 0;
    if (ctx.trivial) out.min_local_injectivity = 0;
    return out;
}

}  // namespace detail

TraceReport smoothed_density(const SurfaceModel& model, const WindowParams& p, double L,
                             const TraceSettings& settings, bool serial) {
    TraceReport rep;
    rep.window = p;
    rep.L = L;
    rep.settings = settings;
    rep.genus = model.genus;
    rep.cusps = model.cusps;
    rep.area = model.area;
    rep.geometric = serial ? geometric_term_serial(model, p, L, settings) : geometric_term(model, p, L, settings);
    rep.I = integral_term(p);
    rep.M = main_term(p.a, p.b);
    rep.C = cusp_term(model, p);
    const auto rk = rep.geometric.R_K();
    rep.density = rep.I + rep.C + rk.real();
    rep.imaginary_residue = std::abs(rk.imag());
    rep.imaginary_residue_ok = rep.imaginary_residue <= std::max(1e-6 * std::abs(rk.real()), 1e-9);

    auto& env = rep.envelopes;
    const double r = rep.geometric.counting_r;
    env.prop6 = prop6_bound(p);
    if (2 * model.genus - 2 + model.cusps > 0) env.prop7 = prop7_bound(model.genus, model.cusps, p);
    env.prop10_at_r = prop10_bound(p, r);
    env.lemma12 = lemma12_bound(p, r, L);
    env.lemma12_applicable = L >= 8 * p.t * p.t * (1 - 1e-12);
    env.lemma13 = lemma13_bound(p, r, L, rep.geometric.thin_fraction);
    if (!rep.imaginary_residue_ok) {
        throw NumericError("imaginary part of the geometric term exceeds the residue tolerance");
    }
    return rep;
}

}  // namespace dirac
