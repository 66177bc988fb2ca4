#include "dirac/fuchsian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "dirac/quadrature.hpp"

namespace dirac {

const char* to_string(GroupModel m) {
    switch (m) {
        case GroupModel::cyclic: return "cyclic";
        case GroupModel::gamma2: return "gamma2";
        case GroupModel::custom: return "custom";
    }
    return "?";
}

GroupPresentation::GroupPresentation(GroupModel m, double ell, std::vector<MoebiusElement> gens)
    : model_(m), ell_(ell), generators_(std::move(gens)) {
    if (generators_.empty()) throw ValidationError("group needs at least one generator");
    if (generators_.size() > 16000) throw ValidationError("too many generators");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        auto& g = generators_[i];
        g = MoebiusElement::from_entries(g.a, g.b, g.c, g.d, Word{letter_of(static_cast<int>(i), false)});
        const auto cls = classify(g).kind;
        if (cls == ElementClass::identity) throw ValidationError("generator is +-identity");
        if (cls == ElementClass::elliptic) throw ValidationError("generator is elliptic");
        inverses_.push_back(g.inverse());
    }
}

GroupPresentation GroupPresentation::cyclic(double ell) {
    if (!(ell > 0) || !std::isfinite(ell)) throw DomainError("cyclic model needs ell > 0");
    const double e = std::exp(ell / 2);
    return GroupPresentation(GroupModel::cyclic, ell, {MoebiusElement{e, 0, 0, 1 / e, {}}});
}

GroupPresentation GroupPresentation::gamma2() {
    return GroupPresentation(GroupModel::gamma2, 0,
                             {MoebiusElement{1, 2, 0, 1, {}}, MoebiusElement{1, 0, 2, 1, {}}});
}

GroupPresentation GroupPresentation::custom(std::vector<MoebiusElement> generators) {
    return GroupPresentation(GroupModel::custom, 0, std::move(generators));
}

const MoebiusElement& GroupPresentation::letter(Letter l) const {
    const int g = generator_of(l);
    if (l == 0 || g >= rank()) throw DomainError("letter outside the generator range");
    return is_inverse(l) ? inverses_[g] : generators_[g];
}

MoebiusElement GroupPresentation::evaluate(const Word& w) const {
    MoebiusElement m = MoebiusElement::identity();
    m.word = Word{};
    for (Letter l : w) m = compose(m, letter(l));
    return m;
}

std::optional<double> GroupPresentation::per_letter_growth() const {
    switch (model_) {
        case GroupModel::cyclic: return ell_;
        case GroupModel::gamma2: return 0.25;
        case GroupModel::custom: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// Sign-normalised entries rounded for dedup at ~1e-9.
std::array<double, 4> dedup_key(const MoebiusElement& m) {
    std::array<double, 4> e{m.a, m.b, m.c, m.d};
    double lead = 0;
    for (double v : e) {
        if (std::abs(v) > 1e-9) { lead = v; break; }
    }
    const double s = lead < 0 ? -1 : 1;
    for (double& v : e) {
        v = std::round(s * v * 1e9) * 1e-9;
        if (v == 0) v = 0;  // drop -0
    }
    return e;
}

bool shortlex_less(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
}

}  // namespace

Word free_reduce(Word w) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
        if (!out.empty() && out.back() == -l) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

MoebiusElement sl2z_reduction(const HPoint& z0) {
    MoebiusElement h = MoebiusElement::identity();
    Complex z = z0.complex();
    for (int it = 0; it < 100000; ++it) {
        const double n = std::round(z.real());
        if (n != 0) {
            z -= n;
            h = compose(MoebiusElement{1, -n, 0, 1, {}}, h);
        }
        if (std::norm(z) >= 1 - 1e-15) return h;
        z = -1.0 / z;
        h = compose(MoebiusElement{0, -1, 1, 0, {}}, h);
    }
    throw NumericError("SL(2,Z) reduction did not terminate");
}

SignedWord gamma2_spelling(const MoebiusElement& m) {
    const std::array<double, 4> e{m.a, m.b, m.c, m.d};
    std::array<long long, 4> n{};
    for (int i = 0; i < 4; ++i) {
        if (!(std::abs(e[i]) < 1e15)) throw DomainError("matrix too large to spell");
        n[i] = std::llround(e[i]);
        if (std::abs(e[i] - static_cast<double>(n[i])) > 1e-9 * std::max(1.0, std::abs(e[i]))) {
            throw DomainError("matrix is not integral");
        }
    }
    if ((n[0] - 1) % 2 != 0 || n[1] % 2 != 0 || n[2] % 2 != 0 || (n[3] - 1) % 2 != 0) {
        throw DomainError("matrix is not congruent to the identity mod 2");
    }
    // Follow a generic interior point of the fundamental domain back home; the
    // side pairings are A (Re z = -1 -> 1) and B (|2z+1| = 1 -> |2z-1| = 1).
    const HPoint p(0.1234, 1.3);
    HPoint w = apply(m, p);
    Word undo;  // letters applied, in order
    const auto A = MoebiusElement{1, 2, 0, 1, {}};
    const auto B = MoebiusElement{1, 0, 2, 1, {}};
    for (int it = 0; it < 1000000; ++it) {
        const Complex c = w.complex();
        Letter l = 0;
        if (w.x() > 1) l = -1;
        else if (w.x() < -1) l = 1;
        else if (std::abs(2.0 * c - 1.0) < 1) l = -2;
        else if (std::abs(2.0 * c + 1.0) < 1) l = 2;
        if (l == 0) break;
        const auto& g = (l == 1 || l == -1) ? A : B;
        w = apply(l > 0 ? g : g.inverse(), w);
        undo.push_back(l);
    }
    if (distance(w, p) > 1e-6) throw NumericError("gamma2 spelling did not return to the reference point");
    // W m = +-I with W = undo_n ... undo_1, hence m = +-(undo_1^{-1} ... undo_n^{-1}).
    SignedWord out;
    for (Letter l : undo) out.word.push_back(static_cast<Letter>(-l));
    out.word = free_reduce(std::move(out.word));
    const auto g = GroupPresentation::gamma2().evaluate(out.word);
    out.sign = (g.a * m.a + g.b * m.b + g.c * m.c + g.d * m.d) > 0 ? 1 : -1;
    return out;
}

WalkFrame walk_frame(const GroupPresentation& group, const HPoint& z0) {
    WalkFrame f;
    f.walk_point = z0;
    for (int i = 0; i < group.rank(); ++i) f.conjugated.push_back({1, Word{letter_of(i, false)}});
    if (group.model() != GroupModel::gamma2) return f;
    f.h = sl2z_reduction(z0);
    f.h.word.reset();
    f.h_inv = f.h.inverse();
    f.walk_point = apply(f.h, z0);
    f.trivial = f.h.a == 1 && f.h.b == 0 && f.h.c == 0 && f.h.d == 1;
    if (f.trivial) return f;
    for (int i = 0; i < group.rank(); ++i) {
        MoebiusElement x = group.generators()[i];
        x.word.reset();
        f.conjugated[i] = gamma2_spelling(compose(compose(f.h_inv, x), f.h));
    }
    return f;
}

std::vector<int> WalkFrame::walk_signs(std::span<const int> generator_signs) const {
    std::vector<int> out;
    for (const auto& c : conjugated) {
        int chi = c.sign;
        for (Letter l : c.word) chi *= generator_signs[generator_of(l)];
        out.push_back(chi);
    }
    return out;
}

SignedWord WalkFrame::pull_back(std::span<const Letter> walk_word) const {
    SignedWord out;
    for (Letter l : walk_word) {
        const auto& c = conjugated[generator_of(l)];
        out.sign *= c.sign;
        if (!is_inverse(l)) {
            out.word.insert(out.word.end(), c.word.begin(), c.word.end());
        } else {
            for (auto it = c.word.rbegin(); it != c.word.rend(); ++it) out.word.push_back(static_cast<Letter>(-*it));
        }
    }
    out.word = free_reduce(std::move(out.word));
    return out;
}

BallEnumeration enumerate_ball(const GroupPresentation& group, const HPoint& z0, double R,
                               int max_word_len, const EnumerationOptions& opt) {
    if (!(R >= 0) || !std::isfinite(R)) throw DomainError("enumerate_ball needs finite R >= 0");
    if (max_word_len < 1) throw DomainError("max_word_len must be >= 1");
    if (!(opt.prune_slack >= 0)) throw DomainError("prune slack must be >= 0");

    BallEnumeration out;
    if (auto delta = group.per_letter_growth()) {
        out.completeness_word_len = static_cast<int>(std::ceil(R / *delta)) + 1;
    }
    if (R == 0) return out;

    const double accept_cosh = std::cosh(R) * (1 + 1e-12);
    const double prune_cosh = std::cosh(R + opt.prune_slack);
    std::vector<EnumeratedElement> found;
    const WalkFrame frame = walk_frame(group, z0);
    const auto stats = detail::walk_reduced_words(
        group, frame.walk_point, prune_cosh, max_word_len, opt.node_budget, {},
        [&](const detail::Mat2& m, std::span<const Letter> w, int, double cosh_d) {
            if (cosh_d > accept_cosh) return;
            MoebiusElement e{m.a, m.b, m.c, m.d, Word(w.begin(), w.end())};
            if (!frame.trivial) {
                auto sw = frame.pull_back(w);
                e = compose(compose(frame.h_inv, MoebiusElement{m.a, m.b, m.c, m.d, {}}), frame.h);
                if (sw.sign < 0) e = e.negated();
                e.word = std::move(sw.word);
            }
            const double disp = distance(z0, apply(e, z0));
            if (disp > R) return;
            found.push_back({std::move(e), disp, {}});
        });
    out.nodes_visited = stats.nodes;
    out.word_cap_hit = stats.cap_hit;
    out.possibly_incomplete =
        stats.cap_hit || (out.completeness_word_len > 0 && max_word_len < out.completeness_word_len);

    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        return shortlex_less(*x.element.word, *y.element.word);
    });
    std::map<std::array<double, 4>, bool> seen;
    for (auto& f : found) {
        if (!seen.emplace(dedup_key(f.element), true).second) continue;
        f.cls = classify(f.element);
        if (f.cls.kind == ElementClass::identity) continue;
        out.elements.push_back(std::move(f));
    }
    return out;
}

double counting_bound(double j, double r) {
    if (!(r > 0 && r <= 2)) throw DomainError("counting bound needs r in (0, 2]");
    if (!(j > 0)) throw DomainError("counting bound needs j > 0");
    return 4 * std::exp(1 + j) / (r * r);
}

SystoleEstimate systole_estimate(const GroupPresentation& group, int max_word_len,
                                 std::size_t node_budget) {
    if (max_word_len < 1) throw DomainError("max_word_len must be >= 1");
    SystoleEstimate est{std::numeric_limits<double>::infinity(), {}, false, {}};
    double best_trace = std::numeric_limits<double>::infinity();
    detail::walk_reduced_words(
        group, HPoint(0, 1), std::numeric_limits<double>::infinity(), max_word_len, node_budget, {},
        [&](const detail::Mat2& m, std::span<const Letter> w, int, double) {
            const double tr = std::abs(m.a + m.d);
            if (tr <= 2 + kParabolicBand) return;
            // Strict comparison keeps the first (shortlex-earliest in DFS order) minimiser
            // among equal traces of equal length.
            if (tr < best_trace || (tr == best_trace && w.size() < est.word.size())) {
                best_trace = tr;
                est.word.assign(w.begin(), w.end());
            }
        });
    if (std::isfinite(best_trace)) {
        est.found = true;
        est.value = 2 * std::acosh(best_trace / 2);
    } else {
        est.warning = "no hyperbolic element among words of length <= " + std::to_string(max_word_len);
    }
    return est;
}

// ---------------------------------------------------------------------------

double DomainGrid::total_weight() const {
    double s = 0;
    for (const auto& n : nodes) s += n.weight;
    return s;
}

bool in_gamma2_domain(const HPoint& z, double slack) {
    const Complex c = z.complex();
    return std::abs(z.x()) <= 1 + slack && std::abs(2.0 * c - 1.0) >= 1 - slack &&
           std::abs(2.0 * c + 1.0) >= 1 - slack;
}

namespace {

void check_grid_options(const DomainGridOptions& opt) {
    if (opt.resolution < 8) throw DomainError("grid resolution must be >= 8");
    if (opt.cluster_block < 1) throw DomainError("cluster block must be >= 1");
}

// Base piece: 0 <= x <= 1 above both unit circles centred at 0 and 1, y <= Y.
// In u = 1/y the measure dx dy / y^2 becomes dx du. The other five pieces
// are images under the order-3 rotation z -> 1/(1-z) and the reflection
// z -> -conj(z).
DomainGrid gamma2_grid(const DomainGridOptions& opt) {
    const double Y = opt.cusp_cutoff;
    if (!(Y > 1) || !std::isfinite(Y)) throw DomainError("cusp cutoff must be > 1");
    const int nx = (opt.resolution + 1) / 2;  // per half of [0,1]
    const int nu = opt.resolution;
    const int cb = opt.cluster_block;

    struct Base { double x, u, w; int ix, iu; };
    std::vector<Base> base;
    for (int half = 0; half < 2; ++half) {
        const auto gx = quad::gauss_legendre(nx, 0.5 * half, 0.5 * (half + 1));
        for (int i = 0; i < nx; ++i) {
            const double x = gx.nodes[i];
            const double ylow = std::sqrt(1 - std::min(x * x, (x - 1) * (x - 1)));
            const auto gu = quad::gauss_legendre(nu, 1 / Y, 1 / ylow);
            for (int j = 0; j < nu; ++j) {
                base.push_back({x, gu.nodes[j], gx.weights[i] * gu.weights[j], half * nx + i, j});
            }
        }
    }
    const int bx = (2 * nx + cb - 1) / cb;
    const int bu = (nu + cb - 1) / cb;
    const int per_piece = bx * bu;

    const std::array<MoebiusElement, 3> rot{MoebiusElement{1, 0, 0, 1, {}}, MoebiusElement{0, 1, -1, 1, {}},
                                            MoebiusElement{1, -1, 1, 0, {}}};
    DomainGrid grid;
    grid.nodes.reserve(6 * base.size());
    for (int mirror = 0; mirror < 2; ++mirror) {
        for (int k = 0; k < 3; ++k) {
            const int piece = 3 * mirror + k;
            for (const auto& b : base) {
                HPoint z = apply(rot[k], HPoint(b.x, 1 / b.u));
                if (mirror) z = HPoint(-z.x(), z.y());
                const int cluster = piece * per_piece + (b.ix / cb) * bu + b.iu / cb;
                grid.nodes.push_back({z, b.w, piece, cluster});
            }
        }
    }
    grid.cluster_count = 6 * per_piece;
    return grid;
}

// Annulus 1 <= |z| <= e^ell in s = log|z| and v = cot(arg z); the measure is ds dv.
DomainGrid cyclic_grid(double ell, const DomainGridOptions& opt) {
    if (!(opt.angle_cutoff > 0 && opt.angle_cutoff < std::numbers::pi / 2)) {
        throw DomainError("angle cutoff must lie in (0, pi/2)");
    }
    const double V = 1 / std::tan(opt.angle_cutoff);
    const int n = opt.resolution;
    const int cb = opt.cluster_block;
    const auto gs = quad::gauss_legendre(n, 0, ell);
    const auto gv = quad::gauss_legendre(n, -V, V);
    const int bv = (n + cb - 1) / cb;
    DomainGrid grid;
    grid.nodes.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double rho = std::exp(gs.nodes[i]);
        for (int j = 0; j < n; ++j) {
            const double theta = std::atan2(1.0, gv.nodes[j]);
            grid.nodes.push_back({HPoint(rho * std::cos(theta), rho * std::sin(theta)),
                                  gs.weights[i] * gv.weights[j], 0, (i / cb) * bv + j / cb});
        }
    }
    grid.cluster_count = ((n + cb - 1) / cb) * bv;
    return grid;
}

}  // namespace

DomainGrid fundamental_domain_grid(const GroupPresentation& group, const DomainGridOptions& opt) {
    check_grid_options(opt);
    switch (group.model()) {
        case GroupModel::gamma2: return gamma2_grid(opt);
        case GroupModel::cyclic: return cyclic_grid(group.ell(), opt);
        case GroupModel::custom: break;
    }
    throw UnsupportedError("no fundamental domain available for custom groups");
}

double truncated_domain_area(const GroupPresentation& group, const DomainGridOptions& opt) {
    switch (group.model()) {
        case GroupModel::gamma2:
            // Six pieces, each losing the 1/Y above its horocycle.
            return 2 * std::numbers::pi - 6 / opt.cusp_cutoff;
        case GroupModel::cyclic:
            return 2 * group.ell() / std::tan(opt.angle_cutoff);
        case GroupModel::custom: break;
    }
    throw UnsupportedError("no fundamental domain available for custom groups");
}

}  // namespace dirac
