#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shelflab/bigint.hpp"
#include "shelflab/rational.hpp"
#include "shelflab/rng.hpp"

#include <string>

using shelflab::BigInt;
using shelflab::Rational;
using shelflab::SplitMix64;

namespace {

// Random magnitudes up to `limbs` 32-bit limbs, with all-ones limbs mixed in
// to stress carries and the Knuth-D correction path.
BigInt random_bigint(SplitMix64& rng, int limbs) {
    BigInt out(std::int64_t{0});
    for (int i = 0; i < limbs; ++i) {
        std::uint64_t r = rng.next();
        std::uint32_t limb = (r & 3) == 0 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(r >> 32);
        out = (out << 32) + BigInt(static_cast<std::uint64_t>(limb));
    }
    if (rng.next() & 1) out = -out;
    return out;
}

}  // namespace

TEST_CASE("construction and decimal round trips") {
    CHECK(BigInt().to_string() == "0");
    CHECK(BigInt(std::int64_t{-1}).to_string() == "-1");
    CHECK(BigInt(std::int64_t{INT64_MIN}).to_string() == "-9223372036854775808");
    CHECK(BigInt(std::uint64_t{18446744073709551615ull}).to_string() == "18446744073709551615");
    CHECK(BigInt::from_string("123456789012345678901234567890").to_string() ==
          "123456789012345678901234567890");
    CHECK(BigInt::from_string("-42").to_string() == "-42");
    CHECK(BigInt::from_string("-0").to_string() == "0");
    CHECK_THROWS_AS(BigInt::from_string("12x"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_string(""), std::invalid_argument);

    SplitMix64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        BigInt a = random_bigint(rng, 1 + static_cast<int>(rng.next() % 7));
        CHECK(BigInt::from_string(a.to_string()) == a);
    }
}

TEST_CASE("arithmetic identities") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        BigInt a = random_bigint(rng, 1 + static_cast<int>(rng.next() % 6));
        BigInt b = random_bigint(rng, 1 + static_cast<int>(rng.next() % 6));
        BigInt c = random_bigint(rng, 1 + static_cast<int>(rng.next() % 4));
        CHECK(a + b == b + a);
        CHECK(a + b - b == a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
    CHECK(BigInt::pow(BigInt(2), 64).to_string() == "18446744073709551616");
    CHECK(BigInt::pow(BigInt(10), 30).to_string() == std::string("1") + std::string(30, '0'));
    CHECK((BigInt(1) << 96) == BigInt::pow(BigInt(2), 96));
}

TEST_CASE("divmod satisfies a = q*b + r with |r| < |b| and sign(r) = sign(a)") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 2000; ++trial) {
        BigInt a = random_bigint(rng, 1 + static_cast<int>(rng.next() % 8));
        BigInt b = random_bigint(rng, 1 + static_cast<int>(rng.next() % 5));
        if (b.is_zero()) continue;
        auto [q, r] = BigInt::divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero()) CHECK(r.signum() == a.signum());
    }
    CHECK_THROWS_AS(BigInt::divmod(BigInt(1), BigInt()), std::domain_error);
    // single-limb divisor fast path
    auto [q, r] = BigInt::divmod(BigInt::from_string("1000000000000000000000"), BigInt(7));
    CHECK(q * BigInt(7) + r == BigInt::from_string("1000000000000000000000"));
}

TEST_CASE("gcd") {
    CHECK(BigInt::gcd(BigInt(0), BigInt(0)) == BigInt(0));
    CHECK(BigInt::gcd(BigInt(0), BigInt(-6)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        BigInt a = random_bigint(rng, 1 + static_cast<int>(rng.next() % 4));
        BigInt b = random_bigint(rng, 1 + static_cast<int>(rng.next() % 4));
        if (a.is_zero() || b.is_zero()) continue;
        BigInt g = BigInt::gcd(a, b);
        CHECK(BigInt::divmod(a, g).second.is_zero());
        CHECK(BigInt::divmod(b, g).second.is_zero());
    }
}

TEST_CASE("conversions") {
    CHECK(BigInt(std::uint64_t{1} << 63).to_uint64() == (std::uint64_t{1} << 63));
    CHECK(BigInt(std::int64_t{-5}).to_int64() == -5);
    CHECK(BigInt(std::int64_t{INT64_MIN}).to_int64() == INT64_MIN);
    CHECK_THROWS_AS((BigInt(1) << 64).to_uint64(), std::overflow_error);
    unsigned __int128 big = (static_cast<unsigned __int128>(1) << 64);
    CHECK(BigInt(big).to_uint128() == big);
    CHECK(BigInt(std::int64_t{1000000007}).to_double() == doctest::Approx(1000000007.0));
    CHECK((BigInt(1) << 100).to_double() == doctest::Approx(1.2676506002282294e30));
}

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4).to_string() == "1/2");
    CHECK(Rational(-2, 4).to_string() == "-1/2");
    CHECK(Rational(2, -4).to_string() == "-1/2");
    CHECK(Rational(0, 5).to_string() == "0/1");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);

    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
    CHECK(Rational(3, 4) / Rational(9, 2) == Rational(1, 6));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0, 1), std::domain_error);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(1, 3));

    SplitMix64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto r = [&] {
            std::int64_t num = static_cast<std::int64_t>(rng.next() % 2001) - 1000;
            std::int64_t den = static_cast<std::int64_t>(rng.next() % 1000) + 1;
            return Rational(num, den);
        };
        Rational a = r(), b = r(), c = r();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("rational strings") {
    CHECK(Rational::from_string("3/6") == Rational(1, 2));
    CHECK(Rational::from_string("-7") == Rational(-7));
    CHECK(Rational::from_string("33/1").to_string() == "33/1");
    CHECK_THROWS_AS(Rational::from_string("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1/2/3"), std::invalid_argument);

    CHECK(Rational(33).to_decimal_string() == "33");
    CHECK(Rational(1, 2).to_decimal_string() == "0.5");
    CHECK(Rational(1, 12).to_decimal_string() == "0.083333333333");
    CHECK(Rational(-1, 4).to_decimal_string() == "-0.25");
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}
