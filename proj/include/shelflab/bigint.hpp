#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shelflab {

// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
// Magnitudes in this project stay small (a few hundred bits), so the
// schoolbook algorithms are entirely adequate.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);
    BigInt(std::uint64_t v);
    BigInt(int v) : BigInt(static_cast<std::int64_t>(v)) {}
    BigInt(unsigned __int128 v);
    BigInt(__int128 v);

    static BigInt from_string(std::string_view decimal);
    static BigInt pow(const BigInt& base, std::uint64_t exp);
    static BigInt gcd(BigInt a, BigInt b);

    // Truncated division: quotient rounds toward zero, remainder takes the
    // sign of the dividend. Throws std::domain_error on zero divisor.
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int signum() const { return sign_; }

    BigInt abs() const;
    BigInt operator-() const;

    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);
    BigInt& operator/=(const BigInt& o);
    BigInt& operator%=(const BigInt& o);

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
    friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
    friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }

    BigInt& operator<<=(unsigned bits);
    friend BigInt operator<<(BigInt a, unsigned bits) { return a <<= bits; }

    bool operator==(const BigInt& o) const = default;
    std::strong_ordering operator<=>(const BigInt& o) const;

    std::string to_string() const;
    double to_double() const;

    bool fits_uint64() const;
    std::uint64_t to_uint64() const;  // throws if out of range
    bool fits_uint128() const;
    unsigned __int128 to_uint128() const;  // throws if out of range
    bool fits_int64() const;
    std::int64_t to_int64() const;  // throws if out of range

private:
    // sign_ in {-1, 0, +1}; limbs_ little-endian, no leading zero, empty iff zero.
    int sign_ = 0;
    std::vector<std::uint32_t> limbs_;

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static void divmod_mag(const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r);
};

inline BigInt abs(const BigInt& x) { return x.abs(); }

}  // namespace shelflab
