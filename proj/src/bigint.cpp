#include "shelflab/bigint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace shelflab {

namespace {
constexpr std::uint64_t kLimbBase = 1ull << 32;
constexpr std::uint32_t kLimbMask = 0xFFFFFFFFu;
}  // namespace

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // careful with INT64_MIN
    std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    limbs_.push_back(static_cast<std::uint32_t>(mag & kLimbMask));
    if (mag >> 32) limbs_.push_back(static_cast<std::uint32_t>(mag >> 32));
}

BigInt::BigInt(std::uint64_t v) {
    if (v == 0) return;
    sign_ = 1;
    limbs_.push_back(static_cast<std::uint32_t>(v & kLimbMask));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

BigInt::BigInt(unsigned __int128 v) {
    if (v == 0) return;
    sign_ = 1;
    while (v != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(v & kLimbMask));
        v >>= 32;
    }
}

BigInt::BigInt(__int128 v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned __int128 mag =
        v < 0 ? ~static_cast<unsigned __int128>(v) + 1 : static_cast<unsigned __int128>(v);
    while (mag != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(mag & kLimbMask));
        mag >>= 32;
    }
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> out;
    out.reserve(big.size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
        out.push_back(static_cast<std::uint32_t>(s & kLimbMask));
        carry = s >> 32;
    }
    if (carry) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        if (d < 0) {
            d += static_cast<std::int64_t>(kLimbBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<std::uint32_t>(d));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = out[i + j] + ai * b[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur & kLimbMask);
            carry = cur >> 32;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur & kLimbMask);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Knuth algorithm D on base-2^32 limbs. u and v are magnitudes, v nonzero.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v,
                        std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    q.clear();
    r.clear();
    if (cmp_mag(u, v) < 0) {
        r = u;
        return;
    }
    if (v.size() == 1) {
        std::uint64_t d = v[0];
        q.assign(u.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = u.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | u[i];
            q[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<std::uint32_t>(rem));
        return;
    }

    const int shift = std::countl_zero(v.back());
    const std::size_t n = v.size();
    std::vector<std::uint32_t> vn(n);
    for (std::size_t i = n; i-- > 0;) {
        std::uint64_t hi = static_cast<std::uint64_t>(v[i]) << shift;
        if (shift && i > 0) hi |= v[i - 1] >> (32 - shift);
        vn[i] = static_cast<std::uint32_t>(hi & kLimbMask);
    }
    std::vector<std::uint32_t> un(u.size() + 1, 0);
    for (std::size_t i = u.size(); i-- > 0;) {
        std::uint64_t hi = static_cast<std::uint64_t>(u[i]) << shift;
        if (shift && i > 0) hi |= u[i - 1] >> (32 - shift);
        un[i] = static_cast<std::uint32_t>(hi & kLimbMask);
    }
    if (shift) un[u.size()] = static_cast<std::uint32_t>(u.back() >> (32 - shift));

    const std::size_t m = u.size() - n;
    q.assign(m + 1, 0);
    const std::uint64_t vtop = vn[n - 1];
    const std::uint64_t vnext = vn[n - 2];

    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = (static_cast<std::uint64_t>(un[j + n]) << 32) | un[j + n - 1];
        std::uint64_t qhat = num / vtop;
        std::uint64_t rhat = num % vtop;
        while (qhat >= kLimbBase ||
               qhat * vnext > ((rhat << 32) | un[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat >= kLimbBase) break;
        }
        // multiply-subtract qhat * vn from un[j .. j+n]
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qhat * vn[i] + carry;
            carry = p >> 32;
            std::int64_t t = static_cast<std::int64_t>(un[i + j]) -
                             static_cast<std::int64_t>(p & kLimbMask) - borrow;
            if (t < 0) {
                t += static_cast<std::int64_t>(kLimbBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            un[i + j] = static_cast<std::uint32_t>(t);
        }
        std::int64_t t = static_cast<std::int64_t>(un[j + n]) - static_cast<std::int64_t>(carry) -
                         borrow;
        if (t < 0) {
            // qhat was one too large: add v back once
            --qhat;
            std::uint64_t c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s = static_cast<std::uint64_t>(un[i + j]) + vn[i] + c;
                un[i + j] = static_cast<std::uint32_t>(s & kLimbMask);
                c = s >> 32;
            }
            t += static_cast<std::int64_t>(c);
        }
        un[j + n] = static_cast<std::uint32_t>(t);
        q[j] = static_cast<std::uint32_t>(qhat);
    }

    while (!q.empty() && q.back() == 0) q.pop_back();
    r.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t val = un[i] >> shift;
        if (shift && i + 1 < un.size()) {
            val |= (static_cast<std::uint64_t>(un[i + 1]) << (32 - shift)) & kLimbMask;
        }
        r[i] = static_cast<std::uint32_t>(val);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

std::pair<BigInt, BigInt> BigInt::divmod(const BigInt& a, const BigInt& b) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    std::pair<BigInt, BigInt> out;
    if (a.sign_ == 0) return out;
    divmod_mag(a.limbs_, b.limbs_, out.first.limbs_, out.second.limbs_);
    out.first.sign_ = out.first.limbs_.empty() ? 0 : a.sign_ * b.sign_;
    out.second.sign_ = out.second.limbs_.empty() ? 0 : a.sign_;
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    if (out.sign_ < 0) out.sign_ = 1;
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) return *this = o;
    if (sign_ == o.sign_) {
        limbs_ = add_mag(limbs_, o.limbs_);
        return *this;
    }
    int c = cmp_mag(limbs_, o.limbs_);
    if (c == 0) {
        sign_ = 0;
        limbs_.clear();
    } else if (c > 0) {
        limbs_ = sub_mag(limbs_, o.limbs_);
    } else {
        limbs_ = sub_mag(o.limbs_, limbs_);
        sign_ = o.sign_;
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) { return *this += -o; }

BigInt& BigInt::operator*=(const BigInt& o) {
    sign_ *= o.sign_;
    limbs_ = mul_mag(limbs_, o.limbs_);
    if (limbs_.empty()) sign_ = 0;
    return *this;
}

BigInt& BigInt::operator/=(const BigInt& o) { return *this = divmod(*this, o).first; }
BigInt& BigInt::operator%=(const BigInt& o) { return *this = divmod(*this, o).second; }

BigInt& BigInt::operator<<=(unsigned bits) {
    if (sign_ == 0 || bits == 0) return *this;
    const unsigned limb_shift = bits / 32;
    const unsigned bit_shift = bits % 32;
    std::vector<std::uint32_t> out(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
        out[i + limb_shift] |= static_cast<std::uint32_t>(v & kLimbMask);
        out[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
    }
    limbs_ = std::move(out);
    trim();
    return *this;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ <=> o.sign_;
    int c = cmp_mag(limbs_, o.limbs_) * sign_;
    return c <=> 0;
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt out;
    static constexpr std::uint64_t pow10[10] = {1,      10,      100,      1000,      10000,
                                                100000, 1000000, 10000000, 100000000, 1000000000};
    while (pos < s.size()) {
        std::size_t take = std::min<std::size_t>(9, s.size() - pos);
        std::uint32_t chunk = 0;
        for (std::size_t i = 0; i < take; ++i) {
            char c = s[pos + i];
            if (c < '0' || c > '9') throw std::invalid_argument("BigInt: invalid digit");
            chunk = chunk * 10 + static_cast<std::uint32_t>(c - '0');
        }
        out *= BigInt(pow10[take]);
        out += BigInt(static_cast<std::uint64_t>(chunk));
        pos += take;
    }
    if (neg && out.sign_ != 0) out.sign_ = -1;
    return out;
}

BigInt BigInt::pow(const BigInt& base, std::uint64_t exp) {
    BigInt result(std::int64_t{1});
    BigInt b = base;
    while (exp) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return result;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> mag = limbs_;
    std::string digits;
    while (!mag.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = mag.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | mag[i];
            mag[i] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!mag.empty() && mag.back() == 0) mag.pop_back();
        for (int i = 0; i < 9; ++i) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

double BigInt::to_double() const {
    double v = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        v = v * 4294967296.0 + static_cast<double>(limbs_[i]);
    }
    return sign_ < 0 ? -v : v;
}

bool BigInt::fits_uint64() const { return sign_ >= 0 && limbs_.size() <= 2; }

std::uint64_t BigInt::to_uint64() const {
    if (!fits_uint64()) throw std::overflow_error("BigInt: does not fit uint64");
    std::uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

bool BigInt::fits_uint128() const { return sign_ >= 0 && limbs_.size() <= 4; }

unsigned __int128 BigInt::to_uint128() const {
    if (!fits_uint128()) throw std::overflow_error("BigInt: does not fit uint128");
    unsigned __int128 v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        v = (v << 32) | limbs_[i];
    }
    return v;
}

bool BigInt::fits_int64() const {
    if (limbs_.size() > 2) return false;
    if (limbs_.size() < 2) return true;
    std::uint64_t mag = (static_cast<std::uint64_t>(limbs_[1]) << 32) | limbs_[0];
    return sign_ >= 0 ? mag <= static_cast<std::uint64_t>(INT64_MAX)
                      : mag <= static_cast<std::uint64_t>(INT64_MAX) + 1;
}

std::int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
    std::uint64_t mag = 0;
    if (limbs_.size() > 1) mag = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) mag |= limbs_[0];
    if (sign_ < 0) return -static_cast<std::int64_t>(mag - 1) - 1;
    return static_cast<std::int64_t>(mag);
}

}  // namespace shelflab
