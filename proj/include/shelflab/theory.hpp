#pragma once

#include <cstdint>
#include <utility>

#include "shelflab/rational.hpp"
#include "shelflab/shuffle.hpp"

namespace shelflab::theory {

// Closed-form moments of the inversion count. The printed covariance and
// total variance are carried verbatim alongside a sign-corrected covariance
// and the total recomposed from components; the enumeration oracle
// adjudicates between them, this module does not.
struct InversionMomentReport {
    Rational mean;
    Rational var_A;              // pair-order component
    Rational var_C;              // equal-even-pair component
    Rational cov_printed;        // -n(n-1)(1-2m)/(32m^2), as printed
    Rational cov_corrected;      // -n(n-1)(2m-1)/(32m^2)
    Rational var_total_printed;  // n(n-1)(2m^2 n+4n+5m^2+18m-17)/(72m^2)
    Rational var_total_from_components;  // var_A + 2 cov_corrected + var_C
};

// n(n-1)/4, independent of the shelf count.
Rational mean_inversions(std::uint64_t n);

InversionMomentReport inversion_moments(std::uint64_t n, std::uint32_t m);

// (m^2+2)/(36 m^2); at least 1/36 for every m.
Rational zeta1_sq(std::uint32_t m);

// sqrt(n) * (value - C(n,2)/2) / (2 sqrt(zeta1_sq(m)) C(n,2)). Requires n >= 2.
double standardize_inversions(double value, std::uint64_t n, std::uint32_t m);

// Kolmogorov-distance bound for an order-r U-statistic with unit-variance
// normalization: 6.1*third_moment/(sqrt(n) zeta1^3)
//              + (1+sqrt(2))(r-1)*sigma/(sqrt(r(n-r+1)) zeta1).
double chen_shao_bound(std::uint64_t n, std::uint32_t r, double zeta1, double sigma,
                       double third_moment);

// The bound instantiated for standardized inversions: r = 2, sigma = 1/2,
// zeta1 from zeta1_sq(m), and the third moment either the 15.625 cap or the
// exact rational value.
double inversion_kd_bound(std::uint64_t n, std::uint32_t m, bool exact_third_moment = false);

// Upper bound for |h1|^3: (5/2)^3.
double h1_third_moment_cap();

// Shelf-count-independent constant C with d_K <= C / sqrt(n):
// 6.1 * 15.625 * 6^3 + 3(1 + sqrt(2)).
double kd_bound_constant();

// Smallest n at which kd_bound_constant()/sqrt(n) drops below 1.
std::uint64_t kd_bound_trivial_n_threshold();

// mean (n-1)/2 and variance (n+1)/12 + (n-2)/(6m^2), both exact.
std::pair<Rational, Rational> descent_moments(std::uint64_t n, std::uint32_t m);

// (value - n/2) / sqrt(n/4).
double standardize_descents(double value, std::uint64_t n);

// (4m-1) / sqrt(n), the coupling error after standardization.
double descent_slutsky_error(std::uint64_t n, std::uint32_t m);

// (m^2+2)/(3m^2): the limiting variance the descent CLT asserts. Exposed for
// audit comparison only; the coupling-implied candidate is
// limit_var_descents_coupling() = 1 and reports carry residuals against both.
Rational limit_var_descents_claimed(std::uint32_t m);
Rational limit_var_descents_coupling();

// (n+1)n(n-1)/12: the claimed inversion variance of a uniformly random
// unimodal permutation (the m = 1 case). Checked against the oracle, never
// trusted.
Rational unimodal_inversion_variance_claimed(std::uint64_t n);

// Total probability of the even piles; 1/2 in the uniform case.
Rational even_pile_probability(const ShuffleSpec& spec);

// Exact moments of h1 under X uniform on [1,2m], U uniform on (0,1),
// by per-letter integration of a linear function of u.
Rational h1_mean(std::uint32_t m);              // identically 0
Rational h1_second_moment(std::uint32_t m);     // equals zeta1_sq(m)
Rational h1_abs_third_moment(std::uint32_t m);  // exact counterpart of the 15.625 cap

}  // namespace shelflab::theory
