#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlocal {

// Exact dyadic rational num / 2^denom_exp with an arbitrary-precision numerator.
// Canonical form: the fraction is fully reduced, i.e. num is odd unless
// denom_exp == 0, and zero is stored as 0 / 2^0.  Canonical representations are
// unique, so equality is field-wise.
class Dyadic {
  public:
    Dyadic() : num_(0), exp_(0) {}
    Dyadic(long v) : num_(v), exp_(0) {}  // NOLINT: implicit integer conversion intended
    Dyadic(mpz_class num, unsigned denom_exp) : num_(std::move(num)), exp_(denom_exp) {
        normalize();
    }

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(1); }
    static Dyadic one_half() { return Dyadic(1, 1); }
    // 1 / 2^k
    static Dyadic pow2(unsigned k) { return Dyadic(1, k); }

    const mpz_class& num() const { return num_; }
    unsigned denom_exp() const { return exp_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return sgn(num_); }

    Dyadic operator-() const {
        Dyadic r;
        r.num_ = -num_;
        r.exp_ = exp_;
        return r;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        unsigned e = std::max(a.exp_, b.exp_);
        mpz_class n = (a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_));
        return Dyadic(std::move(n), e);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
    }

    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    // Exact division by 2^k.
    Dyadic shifted_down(unsigned k) const { return Dyadic(num_, exp_ + k); }

    Dyadic abs() const {
        Dyadic r = *this;
        r.num_ = ::abs(r.num_);
        return r;
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        unsigned e = std::max(a.exp_, b.exp_);
        mpz_class lhs = a.num_ << (e - a.exp_);
        mpz_class rhs = b.num_ << (e - b.exp_);
        return lhs < rhs;
    }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

    // Serialized as "num/2^e", e.g. "3/2^2".
    std::string to_string() const { return num_.get_str() + "/2^" + std::to_string(exp_); }

    static Dyadic parse(const std::string& s) {
        auto pos = s.find("/2^");
        if (pos == std::string::npos) throw std::invalid_argument("bad dyadic: " + s);
        mpz_class n(s.substr(0, pos));
        unsigned long e = std::stoul(s.substr(pos + 3));
        return Dyadic(std::move(n), static_cast<unsigned>(e));
    }

    double to_double() const { return mpz_get_d(num_.get_mpz_t()) * std::ldexp(1.0, -static_cast<int>(exp_)); }

  private:
    void normalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        if (exp_ == 0) return;
        mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
        mp_bitcnt_t k = std::min<mp_bitcnt_t>(tz, exp_);
        if (k > 0) {
            num_ >>= k;
            exp_ -= static_cast<unsigned>(k);
        }
    }

    mpz_class num_;
    unsigned exp_;
};

// Power tower of 2: tow(0) = 1, tow(x) = 2^tow(x-1).  Values beyond x = 5 do
// not fit in memory, so we refuse them.
inline mpz_class tow(unsigned x) {
    if (x > 5) throw std::invalid_argument("tow(" + std::to_string(x) + ") does not fit in memory");
    mpz_class v = 1;
    for (unsigned i = 0; i < x; ++i) {
        unsigned long e = mpz_get_ui(v.get_mpz_t());
        v = 1;
        v <<= e;
    }
    return v;
}

}  // namespace qlocal
