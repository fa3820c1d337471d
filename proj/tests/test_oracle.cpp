#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shelflab/oracle.hpp"
#include "shelflab/normal.hpp"
#include "shelflab/theory.hpp"

#include <cmath>

using namespace shelflab;
using namespace shelflab::oracle;

namespace {

BigInt count_at(const ExactDistribution& d, std::int64_t value) {
    auto it = d.counts.find(value);
    return it == d.counts.end() ? BigInt() : it->second;
}

}  // namespace

TEST_CASE("state counts and the budget gate") {
    CHECK(word_state_count(ShuffleSpec(2, 1)) == BigInt(4));
    CHECK(word_state_count(ShuffleSpec(20, 5)).to_string() == "100000000000000000000");

    try {
        enumerate_distribution(ShuffleSpec(20, 5), StatisticKind::inversions, {1000000, 1});
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.state_count().to_string() == "100000000000000000000");
        CHECK(e.budget() == 1000000);
        CHECK(std::string(e.what()).find("100000000000000000000") != std::string::npos);
    }
}

TEST_CASE("hand-enumerated small distributions") {
    auto inv21 = enumerate_distribution(ShuffleSpec(2, 1), StatisticKind::inversions);
    CHECK(inv21.counts.size() == 2);
    CHECK(count_at(inv21, 0) == BigInt(2));
    CHECK(count_at(inv21, 1) == BigInt(2));
    CHECK(inv21.total == BigInt(4));
    auto [mean21, var21] = exact_moments(inv21);
    CHECK(mean21 == Rational(1, 2));
    CHECK(var21 == Rational(1, 4));

    auto desc31 = enumerate_distribution(ShuffleSpec(3, 1), StatisticKind::descents);
    CHECK(count_at(desc31, 0) == BigInt(2));
    CHECK(count_at(desc31, 1) == BigInt(4));
    CHECK(count_at(desc31, 2) == BigInt(2));
    CHECK(desc31.total == BigInt(8));

    auto inv31 = enumerate_distribution(ShuffleSpec(3, 1), StatisticKind::inversions);
    for (std::int64_t v = 0; v <= 3; ++v) CHECK(count_at(inv31, v) == BigInt(2));
    auto [mean31, var31] = exact_moments(inv31);
    CHECK(mean31 == Rational(3, 2));
    CHECK(var31 == Rational(5, 4));

    // single card: every word gives the empty statistic
    auto inv1m = enumerate_distribution(ShuffleSpec(1, 3), StatisticKind::inversions);
    CHECK(inv1m.counts.size() == 1);
    CHECK(count_at(inv1m, 0) == BigInt(6));

    // even_cards at (4,1) is Binomial(4, 1/2)
    auto evens = enumerate_distribution(ShuffleSpec(4, 1), StatisticKind::even_cards);
    CHECK(count_at(evens, 0) == BigInt(1));
    CHECK(count_at(evens, 1) == BigInt(4));
    CHECK(count_at(evens, 2) == BigInt(6));
    CHECK(count_at(evens, 3) == BigInt(4));
    CHECK(count_at(evens, 4) == BigInt(1));
}

TEST_CASE("counts always sum to (2m)^n and stay within range bounds") {
    for (std::uint32_t m = 1; m <= 3; ++m) {
        for (std::uint64_t n = 1; n <= 5; ++n) {
            auto dist = enumerate_distribution(ShuffleSpec(n, m), StatisticKind::inversions);
            BigInt sum;
            for (const auto& [value, count] : dist.counts) {
                sum += count;
                CHECK(value >= 0);
                CHECK(value <= static_cast<std::int64_t>(n * (n - 1) / 2));
            }
            CHECK(sum == dist.total);
            CHECK(dist.total == word_state_count(ShuffleSpec(n, m)));
        }
    }
}

TEST_CASE("pair_sum and inversions have identical exact distributions") {
    auto a = enumerate_distribution(ShuffleSpec(5, 2), StatisticKind::inversions);
    auto b = enumerate_distribution(ShuffleSpec(5, 2), StatisticKind::pair_sum);
    CHECK(a.counts == b.counts);
}

TEST_CASE("enumeration is independent of the thread count") {
    auto serial = enumerate_distribution(ShuffleSpec(6, 2), StatisticKind::descents, {1000000, 1});
    auto parallel = enumerate_distribution(ShuffleSpec(6, 2), StatisticKind::descents, {1000000, 3});
    CHECK(serial.counts == parallel.counts);
    CHECK(serial.total == parallel.total);

    auto cm1 = enumerate_component_moments(ShuffleSpec(6, 2), {1000000, 1});
    auto cm4 = enumerate_component_moments(ShuffleSpec(6, 2), {1000000, 4});
    CHECK(cm1.var_I == cm4.var_I);
    CHECK(cm1.cov_AC == cm4.cov_AC);
    CHECK(cm1.coupling_max_abs_dev == cm4.coupling_max_abs_dev);
}

TEST_CASE("biased enumeration tallies exact masses") {
    ShuffleSpec spec(2, 1, {Rational(1, 4), Rational(3, 4)});
    auto dist = enumerate_distribution(spec, StatisticKind::inversions);
    CHECK(dist.biased);
    CHECK(dist.total == BigInt(16));
    CHECK(count_at(dist, 0) == BigInt(4));   // words (1,1), (1,2): 1/16 + 3/16
    CHECK(count_at(dist, 1) == BigInt(12));  // words (2,1), (2,2): 3/16 + 9/16
    auto [mean, var] = exact_moments(dist);
    CHECK(mean == Rational(3, 4));
    CHECK(var == Rational(3, 16));

    // all mass on pile 1: the identity permutation almost surely
    ShuffleSpec point(3, 1, {Rational(1), Rational(0)});
    auto pd = enumerate_distribution(point, StatisticKind::inversions);
    CHECK(pd.counts.size() == 1);
    CHECK(count_at(pd, 0) == pd.total);
}

TEST_CASE("exact Kolmogorov distance to the normal") {
    // point mass: the step jumps from 0 to 1 at the mean
    auto point = enumerate_distribution(ShuffleSpec(1, 2), StatisticKind::inversions);
    CHECK(exact_kd_to_normal(point, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-9));

    // symmetric two-point mass at mu +- sigma: sup is Phi(1) - 1/2
    ExactDistribution two;
    two.n = 1;
    two.m = 1;
    two.counts[-1] = BigInt(1);
    two.counts[1] = BigInt(1);
    two.total = BigInt(2);
    CHECK(exact_kd_to_normal(two, 0.0, 1.0) ==
          doctest::Approx(normal_cdf(1.0) - 0.5).epsilon(1e-12));

    // standardized (2,1) inversions is the same two-point configuration
    auto inv21 = enumerate_distribution(ShuffleSpec(2, 1), StatisticKind::inversions);
    CHECK(exact_kd_to_normal(inv21, 0.5, 0.5) ==
          doctest::Approx(normal_cdf(1.0) - 0.5).epsilon(1e-12));

    CHECK_THROWS_AS(exact_kd_to_normal(two, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("component moments match the closed forms at (2,1)") {
    auto cm = enumerate_component_moments(ShuffleSpec(2, 1));
    CHECK(cm.var_A == Rational(3, 16));
    CHECK(cm.var_C == Rational(3, 16));
    CHECK(cm.cov_AC == Rational(-1, 16));
    CHECK(cm.mean_I == Rational(1, 2));
    CHECK(cm.var_I == Rational(1, 4));
    CHECK(cm.mean_d == Rational(1, 2));
    CHECK(cm.var_d == Rational(1, 4));
    CHECK(cm.coupling_max_abs_dev <= 3);

    CHECK_THROWS_AS(
        enumerate_component_moments(ShuffleSpec(2, 1, {Rational(1, 4), Rational(3, 4)})),
        std::invalid_argument);
}

TEST_CASE("audit flags the printed-total and unimodal discrepancies") {
    auto report = audit_formulas({{2, 1}, {3, 1}});
    REQUIRE(report.points.size() == 2);
    CHECK(report.has_printed_finding());

    auto find = [](const PointAudit& p, const std::string& claim) {
        for (const auto& c : p.comparisons) {
            if (c.claim == claim) return c;
        }
        FAIL("missing comparison ", claim);
        return p.comparisons.front();
    };

    const auto& p21 = report.points[0];
    CHECK(find(p21, "var_total_printed").claimed == Rational(1, 2));
    CHECK(find(p21, "var_total_printed").oracle == Rational(1, 4));
    CHECK(find(p21, "var_total_printed").difference == Rational(1, 4));
    CHECK(!find(p21, "var_total_printed").match);
    CHECK(find(p21, "var_A").match);
    CHECK(find(p21, "var_C").match);
    CHECK(find(p21, "var_total_from_components").match);
    CHECK(find(p21, "cov_corrected").match);
    CHECK(!find(p21, "cov_printed").match);

    const auto& p31 = report.points[1];
    CHECK(find(p31, "unimodal_variance_claimed").claimed == Rational(2));
    CHECK(find(p31, "unimodal_variance_claimed").oracle == Rational(5, 4));
    CHECK(!find(p31, "unimodal_variance_claimed").match);
    CHECK(find(p31, "descent_var_m1").match);
    CHECK(find(p31, "descent_var_formula").match);
}

TEST_CASE("audit skips points beyond the budget") {
    auto report = audit_formulas({{2, 1}, {50, 3}}, {1000, 1});
    CHECK(report.points.size() == 1);
    CHECK(report.skipped.size() == 1);
    CHECK(report.skipped[0].find("n=50 m=3") != std::string::npos);
}

TEST_CASE("descent variance matches (n-1)/4 at m=1 through n=8") {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> grid;
    for (std::uint64_t n = 1; n <= 8; ++n) grid.emplace_back(n, 1);
    auto report = audit_formulas(grid);
    for (const auto& p : report.points) {
        for (const auto& c : p.comparisons) {
            if (c.claim == "descent_var_m1") CHECK(c.match);
            if (c.claim == "descent_mean") CHECK(c.match);
            if (c.claim == "mean_inversions") CHECK(c.match);
        }
    }
}
