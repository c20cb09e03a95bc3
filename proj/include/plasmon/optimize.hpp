#pragma once

#include <functional>

namespace plasmon {

struct MinimumResult {
    double x = 0.0;
    double value = 0.0;
    bool interior = false;  // the coarse-grid minimum was not at an end point
};

/// Golden-section search on [a, b] down to an interval width tol.
MinimumResult golden_section(const std::function<double(double)>& f, double a, double b, double tol);

/// Coarse scan on `grid` points, then golden-section refinement around the smallest sample.
MinimumResult bracket_and_minimize(const std::function<double(double)>& f, double lo, double hi, int grid,
                                   double tol);

}  // namespace plasmon
