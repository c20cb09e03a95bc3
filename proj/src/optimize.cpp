#include "plasmon/optimize.hpp"

#include <cmath>
#include <vector>

#include "plasmon/types.hpp"

namespace plasmon {

MinimumResult golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x), true};
}

MinimumResult bracket_and_minimize(const std::function<double(double)>& f, double lo, double hi, int grid,
                                   double tol) {
    if (!(hi > lo) || grid < 3) throw Error(ErrorKind::domain, "minimize: invalid bracket");
    std::vector<double> xs(grid), fs(grid);
    int best = 0;
    for (int i = 0; i < grid; ++i) {
        xs[i] = lo + (hi - lo) * i / (grid - 1);
        fs[i] = f(xs[i]);
        if (fs[i] < fs[best]) best = i;
    }
    if (best == 0 || best == grid - 1) return {xs[best], fs[best], false};
    return golden_section(f, xs[best - 1], xs[best + 1], tol);
}

}  // namespace plasmon
