#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "shelflab/bigint.hpp"

namespace shelflab {

// Exact rational number, always reduced, denominator always positive.
// The carrier for every closed-form value this project evaluates.
class Rational {
public:
    Rational() : num_(0), den_(std::int64_t{1}) {}
    Rational(std::int64_t v) : num_(v), den_(std::int64_t{1}) {}
    Rational(int v) : Rational(static_cast<std::int64_t>(v)) {}
    Rational(BigInt v) : num_(std::move(v)), den_(std::int64_t{1}) {}
    Rational(BigInt num, BigInt den);
    Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}

    // Accepts "p/q" or a bare integer "p". Rejects anything else, including
    // decimal notation.
    static Rational from_string(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_ == BigInt(std::int64_t{1}); }

    Rational operator-() const;
    Rational abs() const { return is_negative() ? -*this : *this; }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    std::string to_string() const;  // "p/q", always with the denominator
    std::string to_decimal_string(unsigned digits = 12) const;
    double to_double() const;

private:
    BigInt num_;
    BigInt den_;
    void normalize();
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace shelflab
