#pragma once

#include <vector>

#include "dirac/testfn.hpp"

namespace dirac {

/// Piecewise Chebyshev interpolant of K_t on [lo, hi], built once and then
/// read concurrently. Outside the table range it falls back to K_t.
///
/// Panels are uniform in the distance r, but each panel is interpolated in
/// s = sinh(r/2), so callers holding sinh^2(r/2) can skip the inverse
/// hyperbolic function.
class KernelTable {
public:
    KernelTable(const WindowParams& p, double lo, double hi, double panel_width = 0.25, int degree = 16);

    double operator()(double r) const;
    /// Same value, addressed by s = sinh(r/2).
    double at_half_sinh(double s) const;

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    /// Largest |interpolant - K_t| seen at the off-node check points.
    double max_check_error() const { return max_check_error_; }

private:
    double eval_panel(int panel, double s) const;

    WindowParams p_;
    double lo_, hi_, width_;
    int degree_;
    int panels_;
    std::vector<double> s_edges_;  // sinh(r/2) at panel edges, panels_+1 entries
    std::vector<double> coeffs_;   // panels_ x (degree_+1)
    double max_check_error_ = 0;
};

}  // namespace dirac
