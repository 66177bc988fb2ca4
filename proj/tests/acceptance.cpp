// Acceptance harness: one PASS/FAIL line per criterion, non-zero exit when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <unistd.h>

#include "dirac/cli.hpp"
#include "dirac/fuchsian.hpp"
#include "dirac/quadrature.hpp"
#include "dirac/schedules.hpp"
#include "dirac/trace_terms.hpp"
#include "dirac/transforms.hpp"
#include "dirac/verify.hpp"

using namespace dirac;

namespace {

constexpr double kPi = std::numbers::pi;
const std::string kData = DIRAC_DATA_DIR;

struct Outcome {
    bool pass;
    std::string detail;
};

// (1/pi) int_0^inf H_t(l) cos(l u) dl by adaptive quadrature.
double g_fourier(const WindowParams& p, double u) {
    quad::Options o;
    o.rel_tol = 1e-13;
    o.abs_tol = 1e-16;
    o.max_intervals = 20000;
    std::vector<double> br{0};
    for (double x : {p.a, p.b}) if (x > 0) br.push_back(x);
    const double hi = p.b + 40 / p.t;
    const int pieces = static_cast<int>(std::ceil(hi * (1 + std::abs(u)) / 4));
    for (int k = 1; k <= pieces; ++k) br.push_back(hi * k / pieces);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return quad::adaptive([&](double l) { return H_t(p, l) * std::cos(l * u); }, br, o).value / kPi;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome roundtrip_kernels() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    std::string detail;
    bool ok = true;
    for (const auto& nf : builtin_bumps()) {
        const double sup = sup_abs(nf.f, 0, 200, 4001);
        const double err = kernel_roundtrip_error(nf.f, 0.25, 5, 96);
        const double thr = 1e-6 * (1 + sup);
        ok = ok && err <= thr;
        worst = std::max(worst, err / thr);
        detail += fmt::format("{}={:.2e} ", nf.name, err);
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 60;
    return {ok, detail + fmt::format("(worst error/threshold {:.3f}, {:.1f} s of 60)", worst, secs)};
}

Outcome ba_identity() {
    // Analytic A e^{-x} = (sqrt(pi)/2) e^{-x}, then numerical B.
    ScalarFunction Aexp;
    Aexp.value = [](double x) { return std::sqrt(kPi) / 2 * std::exp(-x); };
    Aexp.derivative = [](double x) { return -std::sqrt(kPi) / 2 * std::exp(-x); };
    Aexp.envelope = Aexp.value;
    Aexp.derivative_envelope = [](double x) { return std::sqrt(kPi) / 2 * std::exp(-x); };
    double exp_err = 0;
    for (int i = 0; i <= 100; ++i) {
        const double x = 0.1 * i;
        exp_err = std::max(exp_err, std::abs(apply_B(Aexp, x) - std::exp(-x)));
    }
    bool ok = exp_err <= 1e-9;
    std::string detail = fmt::format("exp={:.2e} ", exp_err);
    for (const auto& nf : builtin_bumps()) {
        const double err = ba_roundtrip_error(nf.f, 0, 10, 101);
        ok = ok && err <= 1e-7;
        detail += fmt::format("{}={:.2e} ", nf.name, err);
    }
    return {ok, detail};
}

Outcome g_inverse_fourier() {
    bool ok = true;
    double worst = 0;
    for (const auto& p : {WindowParams(0, 2, 1), WindowParams(1, 3, 0.5), WindowParams(0.5, 6, 2)}) {
        ok = ok && g_t(p, 0) == (p.b - p.a) / kPi;
        for (int i = 0; i <= 200; ++i) {
            const double u = -10 + 0.1 * i;
            worst = std::max(worst, std::abs(g_t(p, u) - g_fourier(p, u)));
        }
    }
    ok = ok && worst <= 1e-9;
    return {ok, fmt::format("max |g_t - quadrature| = {:.2e}", worst)};
}

Outcome inequality_suite() {
    const auto rep = run_verification({});
    bool ok = rep.violations() == 0;
    std::string detail;
    for (const auto& id : verification_checks()) {
        const auto it = rep.configurations.find(id);
        const int n = it == rep.configurations.end() ? 0 : it->second;
        ok = ok && n >= 1000;
        detail += fmt::format("{}:{} ", id, n);
    }
    return {ok, fmt::format("{} violations; {}", rep.violations(), detail)};
}

Outcome weyl_constant() {
    const double c = 1 / (48 * kPi);
    double worst = 0;
    bool ok = true;
    for (int n = 1; n <= 1000; ++n) {
        const double l = 0.1 * n;
        const double d = std::abs(main_term(0, l) - l * l / (8 * kPi));
        worst = std::max(worst, d);
        ok = ok && d <= c + 1e-8;
    }
    const double at10 = main_term(0, 10) - 100 / (8 * kPi);
    ok = ok && std::abs(at10 - c) <= 1e-6;
    return {ok, fmt::format("max offset {:.10f}, offset at 10 {:.10f}, 1/(48 pi) {:.10f}", worst, at10, c)};
}

Outcome lattice_counts() {
    bool ok = true;
    int bad = 0;
    for (int k = 0; k < 50; ++k) {
        const double ell = 0.15 + 0.05 * k, R = 0.5 + 0.37 * k;
        const auto b = enumerate_ball(GroupPresentation::cyclic(ell), HPoint(0, 1), R, 10000);
        if (b.elements.size() != 2 * static_cast<std::size_t>(std::floor(R / ell))) ++bad;
    }
    const auto s = systole_estimate(GroupPresentation::gamma2(), 8);
    const double err = std::abs(s.value - 2 * std::acosh(3.0));
    ok = bad == 0 && err <= 1e-10;
    return {ok, fmt::format("cyclic mismatches {}/50, gamma2 systole {:.15f} (error {:.1e})", bad, s.value, err)};
}

Outcome reference_trace() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto model = SurfaceModel::gamma2(SpinAssignment({-1, -1}));
    const WindowParams p(0, 2, 1);
    const double L = 8 * p.t * p.t;
    TraceSettings base;
    base.grid.resolution = 16;
    const auto ref = smoothed_density(model, p, L, base);
    const auto& g = ref.geometric;
    const double rk_re = g.R_K().real();
    bool ok = ref.imaginary_residue <= std::max(1e-6 * std::abs(rk_re), 1e-9);
    ok = ok && ref.envelopes.lemma12_applicable && std::abs(g.R_plus) <= ref.envelopes.lemma12;
    ok = ok && !g.possibly_incomplete;
    std::string detail = fmt::format("density {:.15f} (R {} used {}) Im {:.1e} |R+| {:.1e} <= {:.1e}; ", ref.density,
                                     g.truncation_radius, g.effective_radius, ref.imaginary_residue,
                                     std::abs(g.R_plus), ref.envelopes.lemma12);
    auto variant = [&](const char* name, TraceSettings s) {
        const auto r = smoothed_density(model, p, L, s);
        const double rel = std::abs(r.density - ref.density) / std::abs(ref.density);
        ok = ok && rel < 1e-6 && !r.geometric.possibly_incomplete;
        detail += fmt::format("{} {:.1e}; ", name, rel);
    };
    auto s = base;
    s.truncation_radius = 2 * g.truncation_radius;
    variant("2xR", s);
    s = base;
    s.max_word_len = 2 * base.max_word_len;
    variant("2xcap", s);
    s = base;
    s.grid.resolution = 2 * base.grid.resolution;
    variant("2xres", s);
    s = base;
    s.grid.cusp_cutoff = 2 * base.grid.cusp_cutoff;
    variant("2xY", s);
    const double secs = seconds_since(t0);
    ok = ok && secs < 600;
    return {ok, detail + fmt::format("{:.0f} s of 600", secs)};
}

Outcome schedules() {
    const auto s = parameter_schedule(std::exp(48.0));
    const double x = std::sqrt(2 * std::numbers::e);
    const double t = 1.7;
    const double eta = eta_schedule(WindowParams(0, x / t, t));
    const bool ok = std::abs(s.t - 1) <= 1e-12 && std::abs(s.L - 8) <= 1e-12 && std::abs(eta - 1 / t) <= 1e-12;
    return {ok, fmt::format("t={:.17g} L={:.17g} eta*t={:.17g}", s.t, s.L, eta * t)};
}

Outcome cli_contract() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / fmt::format("dirac_accept_{}", ::getpid());
    fs::create_directories(dir);
    auto run = [](std::vector<std::string> args) {
        args.insert(args.begin(), "dirac_trace");
        std::ostringstream out, err;
        return dirac::cli::run(args, out, err);
    };
    auto slurp = [](const fs::path& f) {
        std::ifstream in(f, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const std::string g2 = kData + "/gamma2.json", spin = kData + "/spin_gamma2_nontrivial.json";
    std::vector<int> codes;
    for (int k = 0; k < 2; ++k) {
        codes.push_back(run({"verify", "--samples", "200", "--out", (dir / fmt::format("v{}.csv", k)).string()}));
        codes.push_back(run({"terms", "--group", g2, "--spin", spin, "--resolution", "8", "--truncation-radius", "7",
                             "--out", (dir / fmt::format("t{}.json", k)).string()}));
    }
    bool ok = std::all_of(codes.begin(), codes.end(), [](int c) { return c == 0; });
    const bool same_v = slurp(dir / "v0.csv") == slurp(dir / "v1.csv") && !slurp(dir / "v0.csv").empty();
    const bool same_t = slurp(dir / "t0.json") == slurp(dir / "t1.json") && !slurp(dir / "t0.json").empty();
    const int trivial = run({"terms", "--group", g2, "--spin", kData + "/spin_gamma2_trivial.json"});
    const int corrupt = run({"verify", "--check", "prop6", "--corrupt", "prop6", "--samples", "50", "--out",
                             (dir / "bad.csv").string()});
    const int budget = run({"enumerate", "--group", g2, "--R", "12", "--budget", "100"});
    const int bad_flag = run({"verify", "--samples", "0"});
    fs::remove_all(dir);
    ok = ok && same_v && same_t && trivial == 2 && corrupt == 1 && budget == 3 && bad_flag == 2;
    return {ok, fmt::format("identical verify {} terms {}; exits trivial={} corrupt={} budget={} samples0={}", same_v,
                            same_t, trivial, corrupt, budget, bad_flag)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"transform round trip", roundtrip_kernels},
        {"B(A f) = f", ba_identity},
        {"g_t against inverse Fourier quadrature", g_inverse_fourier},
        {"inequality suite", inequality_suite},
        {"Weyl constant", weyl_constant},
        {"lattice enumeration", lattice_counts},
        {"gamma2 reference trace", reference_trace},
        {"schedules", schedules},
        {"CLI determinism and exit codes", cli_contract},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("criterion %zu %s: %s [%.1f s] %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed ? 1 : 0;
}
