#include "dirac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include <memory>
#include <numbers>

#include "dirac/errors.hpp"
#include "dirac/io.hpp"
#include "dirac/kernel_table.hpp"
#include "dirac/schedules.hpp"
#include "dirac/trace_terms.hpp"
#include "dirac/transforms.hpp"

namespace dirac {

namespace {

using Params = std::vector<std::pair<const char*, double>>;

std::string format_params(const Params& ps) {
    std::string out;
    for (const auto& [k, v] : ps) {
        if (!out.empty()) out += ';';
        out += k;
        out += '=';
        out += io::format_double(v);
    }
    return out;
}

class Collector {
public:
    Collector(VerifyReport& rep, const VerifyOptions& opt) : rep_(rep), opt_(opt) {}

    void add(const std::string& check, const Params& ps, double lhs, double rhs) {
        if (check == opt_.corrupt_check) rhs *= opt_.corrupt_factor;
        VerifyRow row{check, format_params(ps), lhs, rhs, lhs <= rhs};
        ++rep_.configurations[check];
        if (!row.pass) ++rep_.failures[check];
        rep_.rows.push_back(std::move(row));
    }

private:
    VerifyReport& rep_;
    const VerifyOptions& opt_;
};

// Window grid shared by the test-function checks.
const std::vector<WindowParams>& testfn_windows() {
    static const std::vector<WindowParams> w = [] {
        std::vector<WindowParams> out;
        for (double t : {0.5, 1.0, 2.0})
            for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 3.0}, {0.0, 10.0}}) out.emplace_back(a, b, t);
        return out;
    }();
    return w;
}

int per_combo(int samples, std::size_t combos) {
    return static_cast<int>((static_cast<std::size_t>(samples) + combos - 1) / combos);
}

// |h_t - soft indicator| written with erfc so that no two nearly equal
// quantities are subtracted.
double window_deviation(const WindowParams& p, double l) {
    const double t = p.t;
    if (p.a == p.b) return l == p.a ? 0.5 : 0.0;
    if (l < p.a) return 0.5 * (std::erfc(t * (p.a - l)) - std::erfc(t * (p.b - l)));
    if (l > p.b) return 0.5 * (std::erfc(t * (l - p.b)) - std::erfc(t * (l - p.a)));
    if (l == p.a || l == p.b) return 0.5 * std::erfc(t * (p.b - p.a));
    return 0.5 * (std::erfc(t * (l - p.a)) + std::erfc(t * (p.b - l)));
}

void check_lemma2(Collector& out, const VerifyOptions& opt, bool values, bool derivs) {
    const auto& ws = testfn_windows();
    const int n = per_combo(opt.samples, ws.size());
    for (const auto& p : ws) {
        for (int k = 1; k <= n; ++k) {
            const double u = 20.0 * k / n;
            const Params ps{{"a", p.a}, {"b", p.b}, {"t", p.t}, {"u", u}};
            if (values) out.add("lemma2_g", ps, std::abs(g_t(p, u)), g_t_bound(p, u));
            if (derivs) out.add("lemma2_gprime", ps, std::abs(g_t_prime(p, u)), g_t_prime_bound(p, u));
        }
    }
}

void check_lemma2_envelope(Collector& out, const VerifyOptions& opt) {
    const auto& ws = testfn_windows();
    const int n = per_combo(opt.samples, ws.size());
    for (const auto& p : ws) {
        std::vector<double> ls;
        const double lo = -2, hi = p.b + 2;
        for (int k = 0; k < n; ++k) ls.push_back(lo + (hi - lo) * k / (n - 1 > 0 ? n - 1 : 1));
        ls.push_back(p.a);
        ls.push_back(p.b);
        for (double l : ls) {
            out.add("lemma2_envelope", {{"a", p.a}, {"b", p.b}, {"t", p.t}, {"lambda", l}},
                    window_deviation(p, l), h_t_deviation_bound(p, l));
        }
    }
}

WindowParams random_window(std::mt19937_64& rng, double a_max, double w_max, double t_lo, double t_hi) {
    std::uniform_real_distribution<double> ua(0, a_max), uw(0, w_max), ut(std::log(t_lo), std::log(t_hi));
    const double a = ua(rng);
    return {a, a + uw(rng), std::exp(ut(rng))};
}

void check_prop6(Collector& out, const VerifyOptions& opt) {
    std::vector<WindowParams> ws;
    for (double t : {0.5, 1.0, 2.0, 4.0})
        for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 3.0}, {0.0, 10.0}}) ws.emplace_back(a, b, t);
    std::mt19937_64 rng(opt.seed ^ 0x6);
    while (static_cast<int>(ws.size()) < opt.samples) ws.push_back(random_window(rng, 5, 10, 0.25, 8));
    for (const auto& p : ws) {
        const double lhs = std::abs(integral_term(p) - main_term(p.a, p.b));
        out.add("prop6", {{"a", p.a}, {"b", p.b}, {"t", p.t}}, lhs, prop6_bound(p));
    }
}

void check_prop7(Collector& out, const VerifyOptions& opt) {
    std::mt19937_64 rng(opt.seed ^ 0x7);
    std::uniform_int_distribution<int> ug(0, 20), uk(0, 20);
    const auto group = GroupPresentation::gamma2();
    const SpinAssignment spin({-1, -1});
    for (int i = 0; i < opt.samples;) {
        const int g = ug(rng), k = uk(rng);
        if (2 * g - 2 + k <= 0) continue;
        const auto p = random_window(rng, 10, 20, 0.1, 10);
        const auto model = SurfaceModel::with_signature(group, spin, g, k);
        out.add("prop7", {{"g", double(g)}, {"k", double(k)}, {"a", p.a}, {"b", p.b}, {"t", p.t}},
                std::abs(cusp_term(model, p)), prop7_bound(g, k, p));
        ++i;
    }
}

void check_prop10(Collector& out, const VerifyOptions& opt) {
    std::vector<WindowParams> ws;
    for (double t : {0.5, 1.0, 2.0})
        for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 3.0}}) ws.emplace_back(a, b, t);
    const int n = per_combo(opt.samples, ws.size());
    for (const auto& p : ws) {
        for (int k = 0; k < n; ++k) {
            const double rho = 0.25 + (12.0 - 0.25) * k / std::max(1, n - 1);
            out.add("prop10", {{"a", p.a}, {"b", p.b}, {"t", p.t}, {"rho", rho}}, std::abs(K_t(p, rho)),
                    prop10_bound(p, rho));
        }
    }
}

void check_lemma11(Collector& out, const VerifyOptions& opt) {
    constexpr int kRadii = 16;  // j = 0.5, 1, ..., 8
    struct Model {
        const char* name;
        GroupPresentation group;
    };
    const std::vector<Model> models{{"gamma2", GroupPresentation::gamma2()},
                                    {"cyclic1", GroupPresentation::cyclic(1.0)}};
    const int per_model = per_combo(opt.samples, kRadii * models.size());
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        const auto& group = models[mi].group;
        const double systole = systole_estimate(group, 8).value;
        const double r = std::min(2.0, systole / 2);
        DomainGridOptions gopt;
        gopt.resolution = opt.grid_resolution;
        gopt.cusp_cutoff = opt.cusp_cutoff;
        auto grid = fundamental_domain_grid(group, gopt);
        if (grid.nodes.empty()) throw ValidationError("verification grid is empty");
        // Evenly strided nodes; the whole grid when it is small.
        const std::size_t count = std::min<std::size_t>(grid.nodes.size(), per_model);
        const double stride = static_cast<double>(grid.nodes.size()) / count;
        std::vector<HPoint> points;
        for (std::size_t i = 0; i < count; ++i) points.push_back(grid.nodes[std::size_t(i * stride)].z);
        // Top up with the same points shifted if the grid has too few nodes.
        for (std::size_t i = 0; static_cast<int>(points.size()) < per_model; ++i) {
            const HPoint& z = grid.nodes[i % grid.nodes.size()].z;
            points.emplace_back(z.x(), z.y() * (1 + 1e-3 * double(1 + i / grid.nodes.size())));
        }
        for (const auto& z : points) {
            const auto ball = enumerate_ball(group, z, 0.5 * kRadii, 65536);
            if (ball.possibly_incomplete) throw NumericError("counting enumeration possibly incomplete");
            std::vector<double> ds;
            for (const auto& e : ball.elements)
                if (e.cls.kind == ElementClass::hyperbolic) ds.push_back(e.displacement);
            std::sort(ds.begin(), ds.end());
            for (int k = 1; k <= kRadii; ++k) {
                const double j = 0.5 * k;
                const double lhs = double(std::upper_bound(ds.begin(), ds.end(), j) - ds.begin());
                out.add("lemma11",
                        {{"model", double(mi)}, {"x", z.x()}, {"y", z.y()}, {"j", j}, {"r", r}}, lhs,
                        counting_bound(j, r));
            }
        }
    }
}

void check_thin_thick(Collector& out, const VerifyOptions& opt, bool plus, bool minus) {
    constexpr double kRadius = 6;
    const auto group = GroupPresentation::gamma2();
    const SpinAssignment spin({-1, -1});
    DomainGridOptions gopt;
    gopt.resolution = opt.grid_resolution;
    gopt.cusp_cutoff = opt.cusp_cutoff;
    const double area = 2 * std::numbers::pi;
    GeometricSweep sweep(group, spin, area, gopt, kRadius);
    const double r = std::min(2.0, sweep.systole() / 2);

    std::mt19937_64 rng(opt.seed ^ 0x12);
    std::uniform_real_distribution<double> ut(0.05, 0.35), ua(0, 3), uw(0.1, 5), u01(0, 1);
    for (int i = 0; i < opt.samples; ++i) {
        const double t = ut(rng);
        const double a = ua(rng);
        const WindowParams p(a, a + uw(rng), t);
        const double Lmin = 8 * t * t;
        const double L = Lmin + (std::max(Lmin + 0.01, 1.5) - Lmin) * u01(rng);
        // Elements beyond the sweep radius must be negligible for this window.
        if (tail_radius(p, r, 1e-16, 1.0) > kRadius)
            throw NumericError("verification window needs a larger enumeration radius");
        GeometricSweep::Value v;
        try {
            v = sweep.evaluate(p, L);
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) + " (window a=" + io::format_double(p.a) +
                               " b=" + io::format_double(p.b) + " t=" + io::format_double(p.t) + ")");
        }
        const Params ps{{"a", p.a}, {"b", p.b}, {"t", p.t}, {"L", L}, {"r", r}, {"thin", v.thin_fraction}};
        if (plus) out.add("lemma12", ps, std::abs(v.R_plus), lemma12_bound(p, r, L));
        if (minus) out.add("lemma13", ps, std::abs(v.R_minus), lemma13_bound(p, r, L, v.thin_fraction));
    }
}

}  // namespace

int VerifyReport::violations() const {
    int n = 0;
    for (const auto& [k, v] : failures) n += v;
    return n;
}

const std::vector<std::string>& verification_checks() {
    static const std::vector<std::string> ids{"lemma2_g", "lemma2_gprime", "lemma2_envelope",
                                              "prop6",    "prop7",         "prop10",
                                              "lemma11",  "lemma12",       "lemma13"};
    return ids;
}

VerifyReport run_verification(const VerifyOptions& opt) {
    if (opt.samples < 1) throw ValidationError("verification needs at least one configuration per check");
    if (!(opt.corrupt_factor > 0) || !std::isfinite(opt.corrupt_factor))
        throw ValidationError("corrupt factor must be positive");
    const auto& all = verification_checks();
    std::set<std::string> want(opt.checks.begin(), opt.checks.end());
    for (const auto& c : want)
        if (std::find(all.begin(), all.end(), c) == all.end())
            throw ValidationError("unknown verification check: " + c);
    if (!opt.corrupt_check.empty() && std::find(all.begin(), all.end(), opt.corrupt_check) == all.end())
        throw ValidationError("unknown verification check: " + opt.corrupt_check);
    if (want.empty()) want.insert(all.begin(), all.end());
    auto on = [&](const char* c) { return want.count(c) > 0; };

    VerifyReport rep;
    Collector out(rep, opt);
    if (on("lemma2_g") || on("lemma2_gprime")) check_lemma2(out, opt, on("lemma2_g"), on("lemma2_gprime"));
    if (on("lemma2_envelope")) check_lemma2_envelope(out, opt);
    if (on("prop6")) check_prop6(out, opt);
    if (on("prop7")) check_prop7(out, opt);
    if (on("prop10")) check_prop10(out, opt);
    if (on("lemma11")) check_lemma11(out, opt);
    if (on("lemma12") || on("lemma13")) check_thin_thick(out, opt, on("lemma12"), on("lemma13"));
    return rep;
}

std::string verification_csv(const VerifyReport& rep) {
    std::string s = io::csv_line({"check", "params", "lhs", "rhs", "margin", "pass"}) + "\n";
    for (const auto& r : rep.rows) {
        s += io::csv_line({r.check, r.params, io::format_double(r.lhs), io::format_double(r.rhs),
                           io::format_double(r.margin()), r.pass ? "1" : "0"});
        s += '\n';
    }
    return s;
}

// ---------------------------------------------------------------------------

GeometricSweep::GeometricSweep(const GroupPresentation& group, const SpinAssignment& spin, double area,
                               const DomainGridOptions& gopt, double radius)
    : area_(area), radius_(radius), systole_(systole_estimate(group, 8).value), min_hyperbolic_(INFINITY) {
    spin.check_against(group);
    if (!(area > 0)) throw ValidationError("surface area must be positive");
    const auto grid = fundamental_domain_grid(group, gopt);
    if (grid.nodes.empty()) throw ValidationError("verification grid is empty");
    nodes_.resize(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        const auto& gn = grid.nodes[i];
        Node& node = nodes_[i];
        node.weight = gn.weight;
        node.min_displacement = INFINITY;
        const auto ball = enumerate_ball(group, gn.z, radius, 65536);
        if (ball.possibly_incomplete) throw NumericError("sweep enumeration possibly incomplete");
        for (const auto& e : ball.elements) {
            node.min_displacement = std::min(node.min_displacement, e.displacement);
            if (e.cls.kind == ElementClass::elliptic) throw ValidationError("group contains an elliptic element");
            if (e.cls.kind != ElementClass::hyperbolic) continue;
            const HPoint back = apply(e.element.inverse(), gn.z);
            const double eps = epsilon(spin, e.element);
            node.terms.push_back({e.displacement, eps * parallel_transport(gn.z, back)});
            min_hyperbolic_ = std::min(min_hyperbolic_, e.displacement);
        }
    }
}

std::size_t GeometricSweep::terms() const {
    std::size_t n = 0;
    for (const auto& node : nodes_) n += node.terms.size();
    return n;
}

GeometricSweep::Value GeometricSweep::evaluate(const WindowParams& p, double L) const {
    Value v;
    std::unique_ptr<KernelTable> table;
    if (std::isfinite(min_hyperbolic_) && p.b > p.a)
        table = std::make_unique<KernelTable>(p, std::max(0.05, 0.9 * min_hyperbolic_), radius_);
    double thin = 0, total = 0;
    for (const auto& node : nodes_) {
        std::complex<double> s = 0;
        if (table)
            for (const auto& term : node.terms) s += (*table)(term.d) * term.phase;
        const bool is_thin = node.min_displacement / 2 < L;
        (is_thin ? v.R_minus : v.R_plus) += node.weight * s;
        total += node.weight;
        if (is_thin) thin += node.weight;
    }
    v.R_plus /= 2 * area_;
    v.R_minus /= 2 * area_;
    v.thin_fraction = total > 0 ? thin / total : 0;
    return v;
}

}  // namespace dirac
