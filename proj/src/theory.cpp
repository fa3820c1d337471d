#include "shelflab/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace shelflab::theory {

namespace {

const BigInt kOne(std::int64_t{1});
const BigInt kTwo(std::int64_t{2});

BigInt bi(std::int64_t v) { return BigInt(v); }

void require_n_m(std::uint64_t n, std::uint32_t m) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (m < 1) throw std::invalid_argument("m must be at least 1");
}

// Per-letter coefficients of h1 as a linear function of u: h1(x, u) = a + b*u.
struct H1Line {
    Rational a;
    Rational b;
};

H1Line h1_line(std::uint32_t m, std::uint32_t x) {
    const std::int64_t two_m = 2 * static_cast<std::int64_t>(m);
    Rational a = Rational(static_cast<std::int64_t>(x) - 1, two_m) +
                 Rational(x % 2 == 0 ? 1 : 0, two_m) - Rational(1, 2);
    Rational b(two_m + 1 - 2 * static_cast<std::int64_t>(x), two_m);
    return {a, b};
}

// sign(t) * t^4, the antiderivative kernel for integrating |linear|^3.
Rational signed_fourth_power(const Rational& t) {
    Rational t4 = t * t * t * t;
    return t.is_negative() ? -t4 : t4;
}

}  // namespace

Rational mean_inversions(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    return Rational(BigInt(n) * BigInt(n - 1), bi(4));
}

InversionMomentReport inversion_moments(std::uint64_t n, std::uint32_t m) {
    require_n_m(n, m);
    const BigInt bn(n);
    const BigInt bm(static_cast<std::uint64_t>(m));
    const BigInt nn1 = bn * BigInt(n - 1);
    const BigInt m_sq = bm * bm;
    const BigInt four_m_sq = bi(4) * m_sq;  // (2m)^2

    InversionMomentReport r;
    r.mean = mean_inversions(n);
    r.var_A = Rational(nn1 * (bi(2) * bn + bi(5)), bi(72)) *
              Rational(four_m_sq - kOne, four_m_sq);
    r.var_C = Rational(nn1 * (bi(2) * bn + bi(4) * bm - bi(5)), bi(32) * m_sq);
    r.cov_printed = -Rational(nn1 * (kOne - kTwo * bm), bi(32) * m_sq);
    r.cov_corrected = -Rational(nn1 * (kTwo * bm - kOne), bi(32) * m_sq);
    r.var_total_printed =
        Rational(nn1 * (kTwo * m_sq * bn + bi(4) * bn + bi(5) * m_sq + bi(18) * bm - bi(17)),
                 bi(72) * m_sq);
    r.var_total_from_components = r.var_A + Rational(2) * r.cov_corrected + r.var_C;
    return r;
}

Rational zeta1_sq(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    const BigInt m_sq = BigInt(static_cast<std::uint64_t>(m)) * BigInt(static_cast<std::uint64_t>(m));
    return Rational(m_sq + kTwo, bi(36) * m_sq);
}

double standardize_inversions(double value, std::uint64_t n, std::uint32_t m) {
    require_n_m(n, m);
    if (n < 2) throw std::invalid_argument("standardize_inversions: n must be at least 2");
    const double binom = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double scale = 2.0 * std::sqrt(zeta1_sq(m).to_double()) * binom;
    return std::sqrt(static_cast<double>(n)) * (value - binom / 2.0) / scale;
}

double chen_shao_bound(std::uint64_t n, std::uint32_t r, double zeta1, double sigma,
                       double third_moment) {
    if (r < 2 || n <= r) throw std::invalid_argument("chen_shao_bound: need n > r >= 2");
    if (!(zeta1 > 0.0)) throw std::invalid_argument("chen_shao_bound: zeta1 must be positive");
    if (sigma < 0.0 || third_moment < 0.0) {
        throw std::invalid_argument("chen_shao_bound: moments must be nonnegative");
    }
    const double nd = static_cast<double>(n);
    const double first = 6.1 * third_moment / (std::sqrt(nd) * zeta1 * zeta1 * zeta1);
    const double second = (1.0 + std::sqrt(2.0)) * (r - 1) * sigma /
                          (std::sqrt(static_cast<double>(r) * (nd - r + 1)) * zeta1);
    return first + second;
}

double inversion_kd_bound(std::uint64_t n, std::uint32_t m, bool exact_third_moment) {
    const double zeta1 = std::sqrt(zeta1_sq(m).to_double());
    const double third = exact_third_moment ? h1_abs_third_moment(m).to_double()
                                            : h1_third_moment_cap();
    return chen_shao_bound(n, 2, zeta1, 0.5, third);
}

double h1_third_moment_cap() { return 15.625; }

double kd_bound_constant() {
    return 6.1 * 15.625 * 216.0 + 3.0 * (1.0 + std::sqrt(2.0));
}

std::uint64_t kd_bound_trivial_n_threshold() {
    const double c = kd_bound_constant();
    return static_cast<std::uint64_t>(std::floor(c * c)) + 1;
}

std::pair<Rational, Rational> descent_moments(std::uint64_t n, std::uint32_t m) {
    require_n_m(n, m);
    const BigInt bn(n);
    const BigInt m_sq = BigInt(static_cast<std::uint64_t>(m)) * BigInt(static_cast<std::uint64_t>(m));
    Rational mean(bn - kOne, kTwo);
    Rational var = Rational(bn + kOne, bi(12)) + Rational(bn - kTwo, bi(6) * m_sq);
    return {mean, var};
}

double standardize_descents(double value, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    const double nd = static_cast<double>(n);
    return (value - nd / 2.0) / std::sqrt(nd / 4.0);
}

double descent_slutsky_error(std::uint64_t n, std::uint32_t m) {
    require_n_m(n, m);
    return (4.0 * m - 1.0) / std::sqrt(static_cast<double>(n));
}

Rational limit_var_descents_claimed(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    const BigInt m_sq = BigInt(static_cast<std::uint64_t>(m)) * BigInt(static_cast<std::uint64_t>(m));
    return Rational(m_sq + kTwo, bi(3) * m_sq);
}

Rational limit_var_descents_coupling() { return Rational(1); }

Rational unimodal_inversion_variance_claimed(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    return Rational(BigInt(n + 1) * BigInt(n) * BigInt(n - 1), bi(12));
}

Rational even_pile_probability(const ShuffleSpec& spec) {
    Rational sum;
    for (std::uint32_t k = 2; k <= spec.pile_count(); k += 2) {
        sum += spec.pile_prob(k);
    }
    return sum;
}

Rational h1_mean(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    Rational sum;
    for (std::uint32_t x = 1; x <= 2 * m; ++x) {
        auto [a, b] = h1_line(m, x);
        sum += a + b / Rational(2);
    }
    return sum / Rational(2 * static_cast<std::int64_t>(m));
}

Rational h1_second_moment(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    Rational sum;
    for (std::uint32_t x = 1; x <= 2 * m; ++x) {
        auto [a, b] = h1_line(m, x);
        // integral of (a+bu)^2 over (0,1) = a^2 + ab + b^2/3
        sum += a * a + a * b + b * b / Rational(3);
    }
    return sum / Rational(2 * static_cast<std::int64_t>(m));
}

Rational h1_abs_third_moment(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    Rational sum;
    for (std::uint32_t x = 1; x <= 2 * m; ++x) {
        auto [a, b] = h1_line(m, x);
        // integral of |a+bu|^3 over (0,1) = (s(a+b) - s(a)) / (4b) with
        // s(t) = sign(t) t^4; b is never zero because 2m+1 is odd.
        sum += (signed_fourth_power(a + b) - signed_fourth_power(a)) / (Rational(4) * b);
    }
    return sum / Rational(2 * static_cast<std::int64_t>(m));
}

}  // namespace shelflab::theory
