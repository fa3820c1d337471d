#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace shelflab {

// Standard normal CDF through the platform's complementary error function
// (the published SPECFUN-lineage rational approximation). The 1e-10 absolute
// accuracy contract is pinned by a quadrature oracle in the test suite.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Kolmogorov distance between a step CDF and the standard normal. jumps is
// the sorted sequence of (z, F(z+)) pairs of the step function; both one-sided
// limits are evaluated at every jump. Between jumps the difference is
// monotone, so the supremum is attained at a jump.
inline double kd_step_vs_normal(const std::vector<std::pair<double, double>>& jumps) {
    double kd = 0.0;
    double before = 0.0;
    for (const auto& [z, after] : jumps) {
        const double phi = normal_cdf(z);
        kd = std::max(kd, std::abs(before - phi));
        kd = std::max(kd, std::abs(after - phi));
        before = after;
    }
    return kd;
}

}  // namespace shelflab
