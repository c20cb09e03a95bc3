#pragma once

#include <vector>

namespace plasmon {

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussLegendre gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
GaussLegendre gauss_legendre(int n, double a, double b);

}  // namespace plasmon
