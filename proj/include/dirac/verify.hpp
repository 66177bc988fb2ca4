#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dirac/fuchsian.hpp"
#include "dirac/spin.hpp"
#include "dirac/testfn.hpp"

namespace dirac {

/// One evaluated inequality lhs <= rhs.
struct VerifyRow {
    std::string check;
    std::string params;  // "key=value;..." with 17-digit values
    double lhs = 0;
    double rhs = 0;
    bool pass = false;
    double margin() const { return rhs - lhs; }
};

struct VerifyOptions {
    // Minimum number of configurations per check. Grid-based checks round
    // up to the next full grid.
    int samples = 1000;
    std::uint64_t seed = 20240601;
    std::vector<std::string> checks;  // empty: all
    // Test hook: multiply the right-hand side of this check by corrupt_factor.
    std::string corrupt_check;
    double corrupt_factor = 1e-3;
    // Grid used for the counting and thin/thick checks.
    int grid_resolution = 8;
    double cusp_cutoff = 12;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    std::map<std::string, int> configurations;
    std::map<std::string, int> failures;
    int violations() const;
};

/// lemma2_g, lemma2_gprime, lemma2_envelope, prop6, prop7, prop10,
/// lemma11, lemma12, lemma13.
const std::vector<std::string>& verification_checks();

/// ValidationError for samples < 1, unknown check ids or a bad corrupt
/// factor; numeric and resource failures propagate.
VerifyReport run_verification(const VerifyOptions& opt = {});

/// check,params,lhs,rhs,margin,pass with a header line.
std::string verification_csv(const VerifyReport& rep);

/// Geometric term of a fixed surface for many windows: per-node hyperbolic
/// elements within a radius are enumerated once (through the public
/// enumeration, spin and transport routines), then every (window, L) is a
/// weighted sum against a fresh kernel table.
class GeometricSweep {
public:
    GeometricSweep(const GroupPresentation& group, const SpinAssignment& spin, double area,
                   const DomainGridOptions& grid, double radius);

    struct Value {
        std::complex<double> R_plus, R_minus;
        double thin_fraction = 0;
    };
    /// Elements beyond radius() are ignored; the caller keeps the kernel
    /// tail negligible there.
    Value evaluate(const WindowParams& p, double L) const;

    double radius() const { return radius_; }
    double systole() const { return systole_; }
    double min_hyperbolic_displacement() const { return min_hyperbolic_; }
    std::size_t terms() const;

private:
    struct Term {
        double d;
        std::complex<double> phase;  // epsilon * transport
    };
    struct Node {
        double weight;
        double min_displacement;
        std::vector<Term> terms;
    };
    std::vector<Node> nodes_;
    double area_;
    double radius_;
    double systole_;
    double min_hyperbolic_;
};

}  // namespace dirac
