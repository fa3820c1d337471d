#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shelflab/rational.hpp"
#include "shelflab/statistics.hpp"

namespace shelflab::oracle {

struct EnumerationOptions {
    std::uint64_t budget = 1'000'000;  // maximum number of words to visit
    unsigned threads = 1;
};

// Thrown when (2m)^n exceeds the enumeration budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(BigInt state_count, std::uint64_t budget);
    const BigInt& state_count() const { return state_count_; }
    std::uint64_t budget() const { return budget_; }

private:
    BigInt state_count_;
    std::uint64_t budget_;
};

// Exact distribution of a statistic over all (2m)^n words. Entries of counts
// are integer masses over the common denominator `total`: for the uniform
// shuffle each word contributes 1 and total = (2m)^n; for a biased shuffle
// each word contributes the numerator of its exact probability over
// total = D^n, with D the common denominator of the pile probabilities.
struct ExactDistribution {
    std::uint64_t n = 0;
    std::uint32_t m = 0;
    StatisticKind statistic = StatisticKind::inversions;
    bool biased = false;
    std::map<std::int64_t, BigInt> counts;
    BigInt total;
};

// Number of words a full enumeration must visit: (2m)^n.
BigInt word_state_count(const ShuffleSpec& spec);

// Visits every word once in odometer order (letters read as digits, the last
// position moving fastest), computes the statistic through the statistics
// module, and tallies exact masses. The pathwise identities
// pair_sum = inversions(permutation) and d = E + C, |d - B| <= 4m - 1 are
// asserted inline for every word visited.
ExactDistribution enumerate_distribution(const ShuffleSpec& spec, StatisticKind statistic,
                                         const EnumerationOptions& options = {});

// Exact mean and variance of the distribution.
std::pair<Rational, Rational> exact_moments(const ExactDistribution& dist);

// sup_z |F(z) - Phi((z - mu)/sigma)| over the jump points of the step CDF,
// evaluating both one-sided limits at each support point.
double exact_kd_to_normal(const ExactDistribution& dist, double mu, double sigma);

// Joint exact moments of the inversion components (A = pair-order count,
// C = equal-even-pair count) plus descent moments, from a single exhaustive
// pass. Covariance comes from E[AC] - E[A]E[C].
struct ComponentMoments {
    Rational mean_A, var_A;
    Rational mean_C, var_C;
    Rational cov_AC;
    Rational mean_I, var_I;
    Rational mean_d, var_d;
    std::int64_t coupling_max_abs_dev = 0;  // max |d - B| observed
};

ComponentMoments enumerate_component_moments(const ShuffleSpec& spec,
                                             const EnumerationOptions& options = {});

// One line of an audit: a closed-form claim against the oracle value.
// Differences are exact; a nonzero difference is a finding, not a failure.
struct AuditComparison {
    std::string quantity;  // what is being compared, e.g. "inversion_var_total"
    std::string claim;     // which formula supplied the claimed value
    bool printed_formula;  // findings on these trip --strict
    Rational claimed;
    Rational oracle;
    Rational difference;  // claimed - oracle
    bool match;
};

struct PointAudit {
    std::uint64_t n = 0;
    std::uint32_t m = 0;
    BigInt states;
    ComponentMoments oracle;
    std::vector<AuditComparison> comparisons;
};

struct AuditReport {
    std::vector<PointAudit> points;
    std::vector<std::string> skipped;  // budget refusals, reported per point
    std::size_t finding_count() const;
    bool has_printed_finding() const;
};

AuditReport audit_formulas(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& grid,
                           const EnumerationOptions& options = {});

}  // namespace shelflab::oracle
