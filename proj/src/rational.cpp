#include "shelflab/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace shelflab {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(std::int64_t{1});
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(std::int64_t{1})) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(BigInt::from_string(s));
    }
    std::string_view p = s.substr(0, slash);
    std::string_view q = s.substr(slash + 1);
    return Rational(BigInt::from_string(p), BigInt::from_string(q));
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_.is_zero()) throw std::domain_error("Rational: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    return num_ * o.den_ <=> o.num_ * den_;
}

std::string Rational::to_string() const { return num_.to_string() + "/" + den_.to_string(); }

std::string Rational::to_decimal_string(unsigned digits) const {
    BigInt scale = BigInt::pow(BigInt(std::int64_t{10}), digits);
    auto dm = BigInt::divmod(num_.abs() * scale, den_);
    // round half away from zero
    if ((dm.second * BigInt(std::int64_t{2})) >= den_) dm.first += BigInt(std::int64_t{1});
    std::string s = dm.first.to_string();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - digits);
    std::string frac = s.substr(s.size() - digits);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    if (is_negative() && out != "0") out.insert(0, 1, '-');
    return out;
}

double Rational::to_double() const { return num_.to_double() / den_.to_double(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace shelflab
