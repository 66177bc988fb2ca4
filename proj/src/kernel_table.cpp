#include "dirac/kernel_table.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "dirac/errors.hpp"
#include "dirac/transforms.hpp"

namespace dirac {

KernelTable::KernelTable(const WindowParams& p, double lo, double hi, double panel_width, int degree)
    : p_(p), lo_(lo), hi_(hi), degree_(degree) {
    if (!(lo > 0) || !(hi > lo) || !(panel_width > 0) || degree < 2) {
        throw DomainError("kernel table needs 0 < lo < hi, positive panel width, degree >= 2");
    }
    panels_ = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width)));
    width_ = (hi - lo) / panels_;
    const int n = degree_ + 1;
    coeffs_.assign(static_cast<std::size_t>(panels_) * n, 0.0);
    for (int i = 0; i <= panels_; ++i) s_edges_.push_back(std::sinh(0.5 * (lo_ + i * width_)));

    std::vector<double> cosines(n);
    for (int k = 0; k < n; ++k) cosines[k] = std::cos(std::numbers::pi * (k + 0.5) / n);

    // Values at first-kind Chebyshev points in s, all panels.
    std::vector<double> values(coeffs_.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < panels_ * n; ++i) {
        const int panel = i / n, k = i % n;
        const double s0 = s_edges_[panel], s1 = s_edges_[panel + 1];
        const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * cosines[k];
        try {
            values[i] = K_t(p_, 2 * std::asinh(s));
        } catch (...) {
#pragma omp critical(dirac_kernel_table)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (int panel = 0; panel < panels_; ++panel) {
        for (int j = 0; j < n; ++j) {
            double acc = 0;
            for (int k = 0; k < n; ++k) {
                acc += values[panel * n + k] * std::cos(std::numbers::pi * j * (k + 0.5) / n);
            }
            coeffs_[panel * n + j] = (j == 0 ? 1.0 : 2.0) * acc / n;
        }
    }

    // Spot check between nodes: one point per panel.
    std::vector<double> errs(panels_);
#pragma omp parallel for schedule(dynamic)
    for (int panel = 0; panel < panels_; ++panel) {
        const double r = lo_ + (panel + 0.37) * width_;
        try {
            errs[panel] = std::abs((*this)(r) - K_t(p_, r));
        } catch (...) {
#pragma omp critical(dirac_kernel_table)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    max_check_error_ = *std::max_element(errs.begin(), errs.end());
}

double KernelTable::eval_panel(int panel, double s) const {
    const double s0 = s_edges_[panel], s1 = s_edges_[panel + 1];
    const double x = (2 * s - s0 - s1) / (s1 - s0);
    const double* c = coeffs_.data() + static_cast<std::size_t>(panel) * (degree_ + 1);
    // Clenshaw recurrence.
    double b1 = 0, b2 = 0;
    for (int j = degree_; j >= 1; --j) {
        const double b0 = 2 * x * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

double KernelTable::operator()(double r) const {
    if (r < lo_ || r > hi_) return K_t(p_, r);
    const int panel = std::min(panels_ - 1, static_cast<int>((r - lo_) / width_));
    return eval_panel(panel, std::sinh(0.5 * r));
}

double KernelTable::at_half_sinh(double s) const {
    if (s < s_edges_.front() || s > s_edges_.back()) return K_t(p_, 2 * std::asinh(s));
    const auto it = std::upper_bound(s_edges_.begin(), s_edges_.end(), s);
    const int panel = std::clamp(static_cast<int>(it - s_edges_.begin()) - 1, 0, panels_ - 1);
    return eval_panel(panel, s);
}

}  // namespace dirac
