#include "dirac/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "dirac/errors.hpp"
#include "dirac/io.hpp"
#include "dirac/schedules.hpp"
#include "dirac/trace_terms.hpp"
#include "dirac/transforms.hpp"
#include "dirac/verify.hpp"

namespace dirac::cli {

namespace {

using io::Json;

struct Failure {
    int code;
    std::string kind;
    std::string message;
};

// Bound or threshold violation detected by a command; not an error.
struct ViolationExit {
    std::string summary;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        out.flush();
    } else {
        io::write_output(path, text);
    }
}

void require_positive(double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) throw ValidationError(std::string(name) + " must be positive");
}

void require_format(const std::string& f) {
    if (f != "json" && f != "csv") throw ValidationError("format must be json or csv");
}

void apply_thread_env() {
    const char* v = std::getenv("DIRAC_THREADS");
    if (!v || !*v) return;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) throw ValidationError("DIRAC_THREADS must be a positive integer");
    omp_set_num_threads(static_cast<int>(n));
}

std::string word_string(const Word& w) {
    std::string s;
    for (Letter l : w) {
        const int g = generator_of(l);
        if (g < 26) {
            s += static_cast<char>((is_inverse(l) ? 'a' : 'A') + g);
        } else {
            s += (is_inverse(l) ? "x" : "X") + std::to_string(g) + ".";
        }
    }
    return s;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// terms

struct TermsConfig {
    std::string group, spin, out = "-", format = "json";
    double a = 0, b = 2, t = 1, L = 0, g = 0, constant = 1;
    int resolution = 16;
    double cusp_cutoff = 12, angle_cutoff = 0.2;
    std::size_t budget = 100'000'000;
    int word_cap = 65536;
    double truncation_radius = 0, tail_tol = 1e-10, negligible_tol = 1e-12, systole = 0;
    bool serial = false;
};

SurfaceModel model_for(const GroupPresentation& group, const SpinAssignment& spin, const DomainGridOptions& grid) {
    switch (group.model()) {
        case GroupModel::gamma2: return SurfaceModel::gamma2(spin);
        case GroupModel::cyclic: return SurfaceModel::cyclic(group.ell(), spin, grid);
        default: throw UnsupportedError("trace evaluation needs a model group (gamma2 or cyclic)");
    }
}

void cmd_terms(const TermsConfig& c, bool t_given, bool L_given, std::ostream& out) {
    require_format(c.format);
    require_positive(c.tail_tol, "tail tolerance");
    require_positive(c.negligible_tol, "negligible tolerance");
    require_positive(c.cusp_cutoff, "cusp cutoff");
    require_positive(c.angle_cutoff, "angle cutoff");
    if (c.truncation_radius < 0) throw ValidationError("truncation radius must be non-negative");
    if (c.budget == 0 || c.word_cap < 1) throw ValidationError("budget and word cap must be positive");

    double t = c.t, L = c.L;
    std::optional<Schedule> sched;
    if (c.g != 0) {
        if (!(c.g >= 2)) throw ValidationError("g must be at least 2");
        sched = parameter_schedule(c.g);
        if (!t_given) t = sched->t;
        if (!L_given) L = sched->L;
    }
    if (!(c.a >= 0 && c.b >= c.a)) throw ValidationError("window needs 0 <= a <= b");
    require_positive(t, "t");
    const WindowParams p(c.a, c.b, t);
    if (!L_given && !sched) L = 8 * t * t;
    require_positive(L, "L");

    const auto group = io::load_group(c.group);
    const auto spin = io::load_spin(c.spin);
    TraceSettings s;
    s.grid.resolution = c.resolution;
    s.grid.cusp_cutoff = c.cusp_cutoff;
    s.grid.angle_cutoff = c.angle_cutoff;
    s.node_budget = c.budget;
    s.max_word_len = c.word_cap;
    s.truncation_radius = c.truncation_radius;
    s.tail_tolerance = c.tail_tol;
    s.negligible_tolerance = c.negligible_tol;
    s.systole = c.systole;
    SurfaceModel model = [&] {
        try {
            return model_for(group, spin, s.grid);
        } catch (const DomainError& e) {
            throw ValidationError(e.what());
        }
    }();
    model.validate();
    const auto rep = smoothed_density(model, p, L, s, c.serial);

    if (c.format == "csv") {
        const auto& g = rep.geometric;
        std::string text = io::csv_line({"a", "b", "t", "L", "I", "M", "C", "re_R_plus", "im_R_plus", "re_R_minus",
                                         "im_R_minus", "density", "thin_fraction", "effective_radius",
                                         "possibly_incomplete"}) +
                           "\n";
        auto f = io::format_double;
        text += io::csv_line({f(p.a), f(p.b), f(p.t), f(L), f(rep.I), f(rep.M), f(rep.C), f(g.R_plus.real()),
                              f(g.R_plus.imag()), f(g.R_minus.real()), f(g.R_minus.imag()), f(rep.density),
                              f(g.thin_fraction), f(g.effective_radius), g.possibly_incomplete ? "1" : "0"}) +
                "\n";
        emit(c.out, text, out);
        return;
    }
    Json j = io::report_to_json(rep, group, spin);
    if (sched) {
        const auto w = theorem1_window(c.g, p, c.constant);
        j["schedule"] = {
            {"g", c.g},
            {"t", sched->t},
            {"L", sched->L},
            {"r", sched->r},
            {"constant", c.constant},
            {"theorem1_lower", w.lower},
            {"theorem1_upper", w.upper},
            {"prop2_upper", upper_bound_prop2(c.g, p, c.constant)},
            {"good_set", good_set_predicate(c.g, rep.geometric.systole, rep.geometric.thin_fraction)},
        };
    }
    emit(c.out, dump(j), out);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
    VerifyOptions opt;
    std::string out = "-", format = "csv";
};

void cmd_verify(const VerifyConfig& c, std::ostream& out, std::ostream& err) {
    require_format(c.format);
    const auto rep = run_verification(c.opt);
    if (c.format == "csv") {
        emit(c.out, verification_csv(rep), out);
    } else {
        Json checks = Json::array();
        for (const auto& [id, n] : rep.configurations) {
            const auto it = rep.failures.find(id);
            checks.push_back({{"id", id}, {"configurations", n}, {"failures", it == rep.failures.end() ? 0 : it->second}});
        }
        Json rows = Json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"check", r.check},
                            {"params", r.params},
                            {"lhs", r.lhs},
                            {"rhs", r.rhs},
                            {"margin", r.margin()},
                            {"pass", r.pass}});
        Json j{{"schema", "dirac-verification"},
               {"schema_version", io::kSchemaVersion},
               {"seed", c.opt.seed},
               {"samples", c.opt.samples},
               {"violations", rep.violations()},
               {"checks", checks},
               {"rows", rows}};
        emit(c.out, dump(j), out);
    }
    if (rep.violations() > 0) {
        for (const auto& r : rep.rows)
            if (!r.pass)
                err << "violation: "
                    << io::csv_line({r.check, r.params, io::format_double(r.lhs), io::format_double(r.rhs),
                                     io::format_double(r.margin())})
                    << "\n";
        throw ViolationExit{std::to_string(rep.violations()) + " inequality violations"};
    }
}

// ---------------------------------------------------------------------------
// roundtrip

struct RoundtripConfig {
    int kernel_points = 96;
    int ba_points = 101;
    std::string out = "-", format = "json";
};

struct RoundtripRow {
    std::string kind, name;
    double sup_error, threshold;
    bool pass;
};

std::vector<RoundtripRow> roundtrip_rows(const RoundtripConfig& c) {
    std::vector<RoundtripRow> rows;
    auto add = [&](std::string kind, std::string name, double e, double thr) {
        rows.push_back({std::move(kind), std::move(name), e, thr, e <= thr});
    };
    // phi -> hcheck -> K on [0.25, 5]
    for (const auto& [name, phi] : builtin_bumps()) {
        const double scale = 1 + sup_abs(phi, 0, phi.support_end, 401);
        add("kernel", name, kernel_roundtrip_error(phi, 0.25, 5, c.kernel_points), 1e-6 * scale);
    }
    {
        const auto nb = narrow_bump();
        add("kernel", nb.name, kernel_roundtrip_error(nb.f, 0.25, 5, c.kernel_points), 1e-5 * 2);
    }
    add("kernel", "zero", kernel_roundtrip_error(ScalarFunction::zero(), 0.25, 5, c.kernel_points), 0);

    // A(e^{-x}) = (sqrt(pi)/2) e^{-x}
    {
        const auto ex = schwartz_family().front().f;
        double e = 0;
        for (int i = 0; i < c.ba_points; ++i) {
            const double x = 10.0 * i / std::max(1, c.ba_points - 1);
            e = std::max(e, std::abs(apply_A(ex, x) - std::sqrt(std::numbers::pi) / 2 * std::exp(-x)));
        }
        add("A", "exp", e, 1e-9);
    }
    // B(A f) = f on [0, 10]
    for (const auto& [name, f] : schwartz_family())
        add("BA", name, ba_roundtrip_error(f, 0, 10, c.ba_points), name == "exp" ? 1e-9 : 1e-7);
    add("BA", "zero", ba_roundtrip_error(ScalarFunction::zero(), 0, 10, c.ba_points), 0);
    return rows;
}

void cmd_roundtrip(const RoundtripConfig& c, std::ostream& out, std::ostream& err) {
    require_format(c.format);
    if (c.kernel_points < 1 || c.ba_points < 1) throw ValidationError("point counts must be positive");
    const auto rows = roundtrip_rows(c);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.pass;
    if (c.format == "csv") {
        std::string text = io::csv_line({"kind", "name", "sup_error", "threshold", "pass"}) + "\n";
        for (const auto& r : rows)
            text += io::csv_line({r.kind, r.name, io::format_double(r.sup_error), io::format_double(r.threshold),
                                  r.pass ? "1" : "0"}) +
                    "\n";
        emit(c.out, text, out);
    } else {
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back({{"kind", r.kind},
                           {"name", r.name},
                           {"sup_error", r.sup_error},
                           {"threshold", r.threshold},
                           {"pass", r.pass}});
        emit(c.out,
             dump(Json{{"schema", "dirac-roundtrip"},
                       {"schema_version", io::kSchemaVersion},
                       {"kernel_points", c.kernel_points},
                       {"ba_points", c.ba_points},
                       {"all_pass", ok},
                       {"rows", arr}}),
             out);
    }
    if (!ok) {
        for (const auto& r : rows)
            if (!r.pass)
                err << "violation: " << r.kind << " " << r.name << " sup error " << io::format_double(r.sup_error)
                    << " > " << io::format_double(r.threshold) << "\n";
        throw ViolationExit{"round trip above threshold"};
    }
}

// ---------------------------------------------------------------------------
// enumerate

struct EnumerateConfig {
    std::string group, spin, out = "-", format = "csv";
    double x = 0, y = 1, R = 7;
    int word_cap = 65536;
    std::size_t budget = 10'000'000;
};

void cmd_enumerate(const EnumerateConfig& c, std::ostream& out) {
    require_format(c.format);
    if (!(c.y > 0) || !std::isfinite(c.x)) throw ValidationError("base point must lie in the upper half-plane");
    if (!(c.R >= 0) || !std::isfinite(c.R)) throw ValidationError("R must be non-negative");
    if (c.word_cap < 1 || c.budget == 0) throw ValidationError("word cap and budget must be positive");
    const auto group = io::load_group(c.group);
    std::optional<SpinAssignment> spin;
    if (!c.spin.empty()) {
        spin = io::load_spin(c.spin);
        spin->check_against(group);
    }
    const HPoint z0(c.x, c.y);
    BallEnumeration ball;
    if (c.R > 0) {
        EnumerationOptions eo;
        eo.node_budget = c.budget;
        ball = enumerate_ball(group, z0, c.R, c.word_cap, eo);
    }
    // Counting-bound summary at j = R.
    const auto sys = systole_estimate(group, 8, c.budget);
    std::size_t hyperbolic = 0;
    for (const auto& e : ball.elements) hyperbolic += e.cls.kind == ElementClass::hyperbolic;
    const bool have_r = sys.found && c.R > 0;
    const double r = have_r ? std::min(2.0, sys.value / 2) : 0;
    const double bound = have_r ? counting_bound(c.R, r) : 0;

    auto eps_of = [&](const EnumeratedElement& e) -> std::optional<int> {
        if (!spin || std::abs(e.element.trace()) < 1e-10) return std::nullopt;
        return epsilon(*spin, e.element);
    };

    if (c.format == "csv") {
        auto f = io::format_double;
        std::string text =
            io::csv_line({"word", "trace", "class", "displacement", "epsilon", "a", "b", "c", "d"}) + "\n";
        for (const auto& e : ball.elements) {
            const auto eps = eps_of(e);
            const auto& m = e.element;
            text += io::csv_line({word_string(*m.word), f(m.trace()), to_string(e.cls.kind), f(e.displacement),
                                  eps ? std::to_string(*eps) : "", f(m.a), f(m.b), f(m.c), f(m.d)}) +
                    "\n";
        }
        text += "# possibly_incomplete=" + std::string(ball.possibly_incomplete ? "1" : "0") + "\n";
        if (have_r) {
            text += "# lemma11 j=" + f(c.R) + " r=" + f(r) + " hyperbolic=" + std::to_string(hyperbolic) +
                    " bound=" + f(bound) + " pass=" + (double(hyperbolic) <= bound ? "1" : "0") + "\n";
        } else {
            text += "# lemma11 skipped\n";
        }
        emit(c.out, text, out);
        return;
    }
    Json elems = Json::array();
    for (const auto& e : ball.elements) {
        const auto eps = eps_of(e);
        const auto& m = e.element;
        Json je{{"word", word_string(*m.word)},
                {"matrix", Json{Json{m.a, m.b}, Json{m.c, m.d}}},
                {"trace", m.trace()},
                {"class", to_string(e.cls.kind)},
                {"displacement", e.displacement}};
        je["epsilon"] = eps ? Json(*eps) : Json(nullptr);
        elems.push_back(je);
    }
    Json lemma = have_r ? Json{{"j", c.R},
                               {"r", r},
                               {"hyperbolic", hyperbolic},
                               {"bound", bound},
                               {"pass", double(hyperbolic) <= bound}}
                        : Json(nullptr);
    emit(c.out,
         dump(Json{{"schema", "dirac-enumeration"},
                   {"schema_version", io::kSchemaVersion},
                   {"group", io::group_to_json(group)},
                   {"base_point", {c.x, c.y}},
                   {"R", c.R},
                   {"max_word_len", c.word_cap},
                   {"possibly_incomplete", ball.possibly_incomplete},
                   {"elements", elems},
                   {"lemma11", lemma}}),
         out);
}

void report_failure(const Failure& f, std::ostream& err) {
    const Json j{{"error", {{"kind", f.kind}, {"message", f.message}}}, {"exit_code", f.code}};
    err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dirac pretrace-formula workbench"};
    app.require_subcommand(1, 1);

    TermsConfig tc;
    auto* terms = app.add_subcommand("terms", "Evaluate I, C, R_K and the smoothed density");
    terms->add_option("--group", tc.group, "Group presentation JSON")->required();
    terms->add_option("--spin", tc.spin, "Spin assignment JSON")->required();
    terms->add_option("--a", tc.a, "Window start");
    terms->add_option("--b", tc.b, "Window end");
    auto* t_opt = terms->add_option("--t", tc.t, "Smoothing parameter");
    auto* L_opt = terms->add_option("--L", tc.L, "Thin/thick threshold (default 8t^2)");
    terms->add_option("--g", tc.g, "Genus for the schedule (t, L from it unless given)");
    terms->add_option("--constant", tc.constant, "O-constant for the remainder windows");
    terms->add_option("--resolution", tc.resolution, "Grid resolution");
    terms->add_option("--cusp-cutoff", tc.cusp_cutoff, "Cusp truncation height");
    terms->add_option("--angle-cutoff", tc.angle_cutoff, "Cyclic demo angular cutoff");
    terms->add_option("--budget", tc.budget, "Node budget per enumeration walk");
    terms->add_option("--word-cap", tc.word_cap, "Maximum word length");
    terms->add_option("--truncation-radius", tc.truncation_radius, "Fixed truncation radius (0: automatic)");
    terms->add_option("--tail-tol", tc.tail_tol, "Relative tail tolerance for the truncation radius");
    terms->add_option("--negligible-tol", tc.negligible_tol, "Tail level beyond which elements are skipped");
    terms->add_option("--systole", tc.systole, "Systole input (0: estimate)");
    terms->add_flag("--serial", tc.serial, "Use the single-threaded reference kernel");
    terms->add_option("--out", tc.out, "Output file ('-' for stdout)");
    terms->add_option("--format", tc.format, "json or csv");

    VerifyConfig vc;
    auto* verify = app.add_subcommand("verify", "Sweep the inequality suite");
    verify->add_option("--samples", vc.opt.samples, "Minimum configurations per check");
    verify->add_option("--seed", vc.opt.seed, "Sampling seed");
    verify->add_option("--check", vc.opt.checks, "Restrict to these checks");
    verify->add_option("--corrupt", vc.opt.corrupt_check, "Test hook: scale this check's bound");
    verify->add_option("--corrupt-factor", vc.opt.corrupt_factor, "Scale used by --corrupt");
    verify->add_option("--resolution", vc.opt.grid_resolution, "Grid resolution for counting checks");
    verify->add_option("--cusp-cutoff", vc.opt.cusp_cutoff, "Cusp truncation height");
    verify->add_option("--out", vc.out, "Output file ('-' for stdout)");
    verify->add_option("--format", vc.format, "csv or json");

    RoundtripConfig rc;
    auto* roundtrip = app.add_subcommand("roundtrip", "Transform round-trip identities");
    roundtrip->add_option("--points", rc.kernel_points, "Kernel grid points on [0.25, 5]");
    roundtrip->add_option("--ba-points", rc.ba_points, "B(A f) grid points on [0, 10]");
    roundtrip->add_option("--out", rc.out, "Output file ('-' for stdout)");
    roundtrip->add_option("--format", rc.format, "json or csv");

    EnumerateConfig ec;
    auto* enumerate = app.add_subcommand("enumerate", "List group elements in a displacement ball");
    enumerate->add_option("--group", ec.group, "Group presentation JSON")->required();
    enumerate->add_option("--spin", ec.spin, "Spin assignment JSON (adds the epsilon column)");
    enumerate->add_option("--x", ec.x, "Base point real part");
    enumerate->add_option("--y", ec.y, "Base point imaginary part");
    enumerate->add_option("--R", ec.R, "Displacement radius");
    enumerate->add_option("--word-cap", ec.word_cap, "Maximum word length");
    enumerate->add_option("--budget", ec.budget, "Node budget");
    enumerate->add_option("--out", ec.out, "Output file ('-' for stdout)");
    enumerate->add_option("--format", ec.format, "csv or json");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        report_failure({kExitValidation, "usage", e.what()}, err);
        return kExitValidation;
    }

    try {
        apply_thread_env();
        if (*terms) cmd_terms(tc, t_opt->count() > 0, L_opt->count() > 0, out);
        if (*verify) cmd_verify(vc, out, err);
        if (*roundtrip) cmd_roundtrip(rc, out, err);
        if (*enumerate) cmd_enumerate(ec, out);
        return kExitOk;
    } catch (const ViolationExit& v) {
        report_failure({kExitViolation, "violation", v.summary}, err);
        return kExitViolation;
    } catch (const ValidationError& e) {
        report_failure({kExitValidation, "validation", e.what()}, err);
        return kExitValidation;
    } catch (const DomainError& e) {
        report_failure({kExitValidation, "domain", e.what()}, err);
        return kExitValidation;
    } catch (const UnsupportedError& e) {
        report_failure({kExitValidation, "unsupported", e.what()}, err);
        return kExitValidation;
    } catch (const ResourceError& e) {
        report_failure({kExitNumeric, "resource", e.what()}, err);
        return kExitNumeric;
    } catch (const NumericError& e) {
        report_failure({kExitNumeric, "numeric", e.what()}, err);
        return kExitNumeric;
    } catch (const std::exception& e) {
        report_failure({kExitNumeric, "internal", e.what()}, err);
        return kExitNumeric;
    }
}

}  // namespace dirac::cli
