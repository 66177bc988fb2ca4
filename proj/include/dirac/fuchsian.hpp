#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/hyperbolic.hpp"

namespace dirac {

enum class GroupModel { cyclic, gamma2, custom };

const char* to_string(GroupModel m);

/// Finitely generated free Fuchsian group given by SL(2,R) generator lifts.
class GroupPresentation {
public:
    /// <diag(e^{ell/2}, e^{-ell/2})>, ell > 0.
    static GroupPresentation cyclic(double ell);
    /// Level-2 principal congruence group, free on A = [[1,2],[0,1]], B = [[1,0],[2,1]].
    static GroupPresentation gamma2();
    /// Free group on the given generators. Elliptic or +-identity generators
    /// are rejected.
    static GroupPresentation custom(std::vector<MoebiusElement> generators);

    GroupModel model() const { return model_; }
    double ell() const { return ell_; }
    int rank() const { return static_cast<int>(generators_.size()); }
    const std::vector<MoebiusElement>& generators() const { return generators_; }

    /// Matrix of a single signed letter.
    const MoebiusElement& letter(Letter l) const;

    /// Element spelled by a word (identity for the empty word), word attached.
    MoebiusElement evaluate(const Word& w) const;

    /// Per-letter displacement growth used for the completeness flag:
    /// ell for cyclic, 0.25 for gamma2, none for custom.
    std::optional<double> per_letter_growth() const;

private:
    GroupPresentation(GroupModel m, double ell, std::vector<MoebiusElement> gens);

    GroupModel model_;
    double ell_ = 0;
    std::vector<MoebiusElement> generators_;
    std::vector<MoebiusElement> inverses_;
};

struct EnumeratedElement {
    MoebiusElement element;  // carries the word
    double displacement;     // d(z0, element z0)
    Classification cls;
};

struct EnumerationOptions {
    std::size_t node_budget = 10'000'000;
    // Branches whose displacement exceeds R + prune_slack are cut. A reduced
    // word can come back inside the ball after leaving it, so the slack has
    // to cover that excursion.
    double prune_slack = 1.5;
};

struct BallEnumeration {
    std::vector<EnumeratedElement> elements;
    bool possibly_incomplete = false;
    bool word_cap_hit = false;         // some branch inside the prune radius hit max_word_len
    int completeness_word_len = 0;     // ceil(R/delta)+1 for model groups, 0 if unknown
    std::size_t nodes_visited = 0;
};

/// Non-identity elements with d(z0, g z0) <= R among reduced words of length
/// <= max_word_len, deduplicated in PSL(2,R), sorted by word. Throws
/// ResourceError when the node budget is exhausted.
BallEnumeration enumerate_ball(const GroupPresentation& group, const HPoint& z0, double R,
                               int max_word_len, const EnumerationOptions& opt = {});

/// 4 e^{1+j} / r^2, the hyperbolic-element count bound at radius j for
/// systole > 2r. Requires 0 < r <= 2 and j > 0.
double counting_bound(double j, double r);

struct SystoleEstimate {
    double value;        // +inf when no hyperbolic element was found
    Word word;           // a minimiser
    bool found = false;
    std::string warning;
};

/// Minimum translation length over hyperbolic words of length <= max_word_len.
/// An upper bound on the true systole in general.
SystoleEstimate systole_estimate(const GroupPresentation& group, int max_word_len,
                                 std::size_t node_budget = 10'000'000);

// ---------------------------------------------------------------------------
// Fundamental-domain quadrature

struct GridNode {
    HPoint z;
    double weight;
    int piece;    // tile of the domain the node came from
    int cluster;  // nodes sharing a cluster are close and enumerated together
};

struct DomainGridOptions {
    int resolution = 16;
    double cusp_cutoff = 12;     // gamma2: Im z <= Y and horoballs of diameter 1/Y removed
    double angle_cutoff = 0.2;   // cyclic demo: |cot(arg z)| <= cot(angle_cutoff)
    int cluster_block = 4;       // nodes per cluster side (in index space)
};

struct DomainGrid {
    std::vector<GridNode> nodes;
    int cluster_count = 0;
    double total_weight() const;
};

/// Tensor Gauss–Legendre nodes covering a fundamental domain with the
/// hyperbolic measure dx dy / y^2. gamma2: the region |Re z| <= 1,
/// |2z - 1| >= 1, |2z + 1| >= 1, truncated at every cusp. cyclic: the annulus
/// 1 <= |z| <= e^ell restricted to an angular sector (demo mode, the true
/// quotient has infinite area). Custom groups are unsupported.
DomainGrid fundamental_domain_grid(const GroupPresentation& group, const DomainGridOptions& opt = {});

/// Closed-form area of the truncated region that fundamental_domain_grid
/// integrates over.
double truncated_domain_area(const GroupPresentation& group, const DomainGridOptions& opt = {});

/// Membership in the standard gamma2 domain (three inequalities, 1e-12 slack).
bool in_gamma2_domain(const HPoint& z, double slack = 1e-12);

// ---------------------------------------------------------------------------
// Enumeration frames.
//
// Displacement pruning over generator words is only reliable when the base
// point sits where every short displacement is realised by a short word. For
// gamma2 the base point z0 is first moved by h in SL(2,Z) (which normalises
// the group) into |Re z| <= 1/2, |z| >= 1; elements g' at h z0 correspond to
// g = h^{-1} g' h at z0 with the same displacement and trace.

struct SignedWord {
    int sign = 1;  // element = sign * evaluate(word) as SL(2,R) matrices
    Word word;
};

struct WalkFrame {
    MoebiusElement h;      // moves z0 to the walk point
    MoebiusElement h_inv;
    HPoint walk_point{0, 1};
    std::vector<SignedWord> conjugated;  // h^{-1} X_i h for each generator X_i
    bool trivial = true;

    /// Per-generator character values for the walk: chi(h^{-1} X_i h) where
    /// chi is the product of generator signs with chi(-I) = -1.
    std::vector<int> walk_signs(std::span<const int> generator_signs) const;
    /// Word of h^{-1} g h given the word of g at the walk point (freely reduced).
    SignedWord pull_back(std::span<const Letter> walk_word) const;
};

WalkFrame walk_frame(const GroupPresentation& group, const HPoint& z0);

/// Element h of SL(2,Z) with h z in |Re| <= 1/2, |z| >= 1.
MoebiusElement sl2z_reduction(const HPoint& z);

/// Spelling of an element of the gamma2 group (up to sign) in A, B, found by
/// walking a reference point back into the fundamental domain. Throws
/// DomainError when the matrix is not in the group.
SignedWord gamma2_spelling(const MoebiusElement& m);

/// Free reduction (cancel adjacent x x^{-1}).
Word free_reduce(Word w);

// ---------------------------------------------------------------------------
// Low-level walker shared by enumeration and the trace kernels.

namespace detail {

struct Mat2 {
    double a, b, c, d;
};

inline Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

inline void renormalize(Mat2& m) {
    const double det = m.a * m.d - m.b * m.c;
    if (std::abs(det - 1) > 1e-13) {
        const double s = 1 / std::sqrt(det);
        m.a *= s; m.b *= s; m.c *= s; m.d *= s;
    }
}

struct WalkStats {
    std::size_t nodes = 0;
    bool cap_hit = false;
};

/// Depth-first walk over reduced words. At base point z0, cosh of the
/// displacement of every visited element is computed in the frame where z0
/// is i (2 cosh d = squared Frobenius norm). Branches with cosh d above
/// prune_cosh are cut. visit(M, word, chi, cosh_d) sees the SL(2,R) matrix,
/// the word, and the product of letter signs along the word.
template <class Visitor>
WalkStats walk_reduced_words(const GroupPresentation& group, const HPoint& z0, double prune_cosh,
                             int max_len, std::size_t budget, std::span<const int> signs,
                             Visitor&& visit) {
    const int n = group.rank();
    const int alphabet = 2 * n;
    // n0 maps i to z0; conjugated letters n0^{-1} X n0.
    const double sy = std::sqrt(z0.y());
    const Mat2 n0{sy, z0.x() / sy, 0, 1 / sy};
    const Mat2 n0inv{1 / sy, -z0.x() / sy, 0, sy};
    std::vector<Mat2> letters(alphabet), conj(alphabet);
    std::vector<Letter> codes(alphabet);
    std::vector<int> letter_sign(alphabet);
    for (int k = 0; k < alphabet; ++k) {
        const Letter l = letter_of(k / 2, k % 2 == 1);
        const auto& m = group.letter(l);
        codes[k] = l;
        letters[k] = {m.a, m.b, m.c, m.d};
        conj[k] = mul(mul(n0inv, letters[k]), n0);
        letter_sign[k] = signs.empty() ? 1 : signs[k / 2];
    }
    auto inverse_index = [](int k) { return k ^ 1; };

    struct Frame {
        Mat2 m, mc;
        int chi;
        int last;
        int next;
    };
    std::vector<Frame> stack;
    std::vector<Letter> word;
    stack.push_back({{1, 0, 0, 1}, {1, 0, 0, 1}, 1, -1, 0});
    WalkStats stats;
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next >= alphabet) {
            stack.pop_back();
            if (!word.empty()) word.pop_back();
            continue;
        }
        const int k = top.next++;
        if (top.last >= 0 && k == inverse_index(top.last)) continue;
        if (++stats.nodes > budget) {
            throw ResourceError("enumeration node budget exhausted (" + std::to_string(budget) + ")");
        }
        Mat2 mc = mul(top.mc, conj[k]);
        const double cosh_d = 0.5 * (mc.a * mc.a + mc.b * mc.b + mc.c * mc.c + mc.d * mc.d);
        if (cosh_d > prune_cosh) continue;
        Mat2 m = mul(top.m, letters[k]);
        renormalize(m);
        renormalize(mc);
        const int chi = top.chi * letter_sign[k];
        word.push_back(codes[k]);
        visit(static_cast<const Mat2&>(m), std::span<const Letter>(word), chi, cosh_d);
        if (static_cast<int>(word.size()) >= max_len) {
            stats.cap_hit = true;
            word.pop_back();
            continue;
        }
        stack.push_back({m, mc, chi, k, 0});
    }
    return stats;
}

}  // namespace detail

}  // namespace dirac
