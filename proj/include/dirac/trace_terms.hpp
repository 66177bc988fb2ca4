#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dirac/fuchsian.hpp"
#include "dirac/spin.hpp"
#include "dirac/testfn.hpp"

namespace dirac {

/// Surface Gamma\H with a spin structure and the Gauss–Bonnet data used to
/// normalise the trace terms.
struct SurfaceModel {
    GroupPresentation group;
    SpinAssignment spin;
    int genus = 0;
    int cusps = 0;
    double area = 0;

    /// gamma2 quotient: signature (0, 3), area 2 pi.
    static SurfaceModel gamma2(SpinAssignment spin);
    /// Cyclic demo: no cusps, area taken from the truncated annulus grid
    /// (the true quotient has infinite area).
    static SurfaceModel cyclic(double ell, SpinAssignment spin, const DomainGridOptions& grid = {});
    /// Any model with an explicit signature; area = 2 pi (2g - 2 + k).
    static SurfaceModel with_signature(GroupPresentation group, SpinAssignment spin, int genus, int cusps);

    /// ValidationError unless the spin has one sign per generator, is
    /// nontrivial at every cusp, and the area is positive.
    void validate() const;
};

/// (1/4pi) int_a^b lambda coth(pi lambda) dlambda.
double main_term(double a, double b);

/// (1/8pi) int_R H_t(lambda) lambda coth(pi lambda) dlambda.
double integral_term(const WindowParams& p);

/// -(k log 2) / (2 area) g_t(0).
double cusp_term(const SurfaceModel& model, const WindowParams& p);

struct TraceSettings {
    DomainGridOptions grid{16, 12.0, 0.2, 4};
    // 0 selects the radius where the kernel-envelope tail, weighted by the
    // hyperbolic counting bound, drops below tail_tolerance * |I + C|.
    double truncation_radius = 0;
    double tail_tolerance = 1e-10;
    // Elements beyond the radius where the same tail estimate falls below
    // negligible_tolerance * |I + C| are skipped even if truncation_radius is
    // larger; the radius actually used is reported.
    double negligible_tolerance = 1e-12;
    int max_word_len = 65536;
    std::size_t node_budget = 100'000'000;  // per enumeration walk
    double prune_slack = 1.5;
    bool cluster_nodes = true;
    double kernel_panel = 0.25;
    int kernel_degree = 16;
    // Systole lower bound input for the counting estimates; 0 means
    // systole_estimate over words of length <= 8.
    double systole = 0;
};

struct GeometricTerm {
    std::complex<double> R_plus;   // thick nodes (local injectivity radius >= L)
    std::complex<double> R_minus;  // thin nodes
    double thin_weight = 0;
    double total_weight = 0;
    double thin_fraction = 0;      // thin_weight / total_weight
    double truncation_radius = 0;  // requested
    double effective_radius = 0;   // used
    double systole = 0;
    double counting_r = 0;         // min(2, systole / 2)
    bool possibly_incomplete = false;
    std::size_t walk_nodes = 0;
    std::size_t terms = 0;         // hyperbolic (node, element) pairs summed
    double min_local_injectivity = 0;
    double max_local_injectivity = 0;
    double kernel_table_error = 0;
    int grid_nodes = 0;
    std::vector<std::string> warnings;

    std::complex<double> R_K() const { return R_plus + R_minus; }
};

/// Radius beyond which the tail estimate drops below tol * scale.
double tail_radius(const WindowParams& p, double counting_r, double tol, double scale);

/// Geometric term over the fundamental-domain grid, parallel over node
/// clusters. Deterministic: node sums are reduced in a fixed order.
GeometricTerm geometric_term(const SurfaceModel& model, const WindowParams& p, double L,
                             const TraceSettings& settings = {});

/// Reference implementation: one enumeration per node, single thread.
GeometricTerm geometric_term_serial(const SurfaceModel& model, const WindowParams& p, double L,
                                    const TraceSettings& settings = {});

struct Envelopes {
    double prop6 = 0;           // |I - M| bound
    double prop7 = 0;           // |C| bound
    double prop10_at_r = 0;     // kernel bound at the counting radius
    double lemma12 = 0;         // |R_plus| bound
    bool lemma12_applicable = false;  // L >= 8 t^2
    double lemma13 = 0;         // |R_minus| bound with the measured thin fraction
};

struct TraceReport {
    WindowParams window{0, 1, 1};
    double L = 0;
    double I = 0;
    double M = 0;
    double C = 0;
    GeometricTerm geometric;
    double density = 0;  // I + C + Re R_K
    double imaginary_residue = 0;
    bool imaginary_residue_ok = false;
    Envelopes envelopes;
    TraceSettings settings;
    int genus = 0;
    int cusps = 0;
    double area = 0;
};

/// Assembles I + C + R_K. NumericError if the imaginary residue invariant fails.
TraceReport smoothed_density(const SurfaceModel& model, const WindowParams& p, double L,
                             const TraceSettings& settings = {}, bool serial = false);

}  // namespace dirac
