#pragma once

#include <array>
#include <string>

#include "dist.hpp"

namespace qlocal {

// Exact complex value (re + im*i) / sqrt(2)^sqrt2_exp with Gaussian-integer
// numerator, the ring the statevector amplitudes and potential-function
// expectations live in.  Canonical form divides out factors of 2 (two sqrt(2)
// steps at a time), which makes representations unique: values with odd
// exponent are irrational multiples, so exponents of different parity never
// collide except at zero.
struct GaussSqrt2 {
    mpz_class re = 0, im = 0;
    unsigned sqrt2_exp = 0;

    GaussSqrt2() = default;
    GaussSqrt2(mpz_class r, mpz_class i, unsigned e) : re(std::move(r)), im(std::move(i)), sqrt2_exp(e) {
        canonicalize();
    }

    static GaussSqrt2 i_power(int k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return GaussSqrt2(1, 0, 0);
            case 1: return GaussSqrt2(0, 1, 0);
            case 2: return GaussSqrt2(-1, 0, 0);
            default: return GaussSqrt2(0, -1, 0);
        }
    }

    static GaussSqrt2 from_dyadic(const Dyadic& d) { return GaussSqrt2(d.num(), 0, 2 * d.denom_exp()); }

    bool is_zero() const { return re == 0 && im == 0; }

    Dyadic modulus_squared() const {
        if (sqrt2_exp % 2 != 0) {
            // |(a+bi)/sqrt(2)^s|^2 = (a^2+b^2)/2^s; odd s still yields an
            // exact dyadic after scaling numerator and denominator by sqrt(2).
            return Dyadic(2 * (re * re + im * im), sqrt2_exp + 1);
        }
        return Dyadic(re * re + im * im, sqrt2_exp);
    }

    friend GaussSqrt2 operator+(const GaussSqrt2& a, const GaussSqrt2& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if ((a.sqrt2_exp % 2) != (b.sqrt2_exp % 2))
            throw std::invalid_argument("cannot add values with sqrt(2) exponents of different parity");
        unsigned e = std::max(a.sqrt2_exp, b.sqrt2_exp);
        auto lift = [&](const GaussSqrt2& v) {
            unsigned shift = (e - v.sqrt2_exp) / 2;
            return std::make_pair(v.re << shift, v.im << shift);
        };
        auto [ar, ai] = lift(a);
        auto [br, bi] = lift(b);
        return GaussSqrt2(ar + br, ai + bi, e);
    }

    friend GaussSqrt2 operator*(const GaussSqrt2& a, const GaussSqrt2& b) {
        return GaussSqrt2(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re,
                          a.sqrt2_exp + b.sqrt2_exp);
    }

    friend bool operator==(const GaussSqrt2& a, const GaussSqrt2& b) {
        return a.re == b.re && a.im == b.im && a.sqrt2_exp == b.sqrt2_exp;
    }

    std::string to_string() const {
        return "(" + re.get_str() + (im >= 0 ? "+" : "") + im.get_str() + "i)/sqrt2^" +
               std::to_string(sqrt2_exp);
    }

  private:
    void canonicalize() {
        if (re == 0 && im == 0) {
            sqrt2_exp = 0;
            return;
        }
        while (sqrt2_exp >= 2 && mpz_even_p(re.get_mpz_t()) && mpz_even_p(im.get_mpz_t())) {
            re >>= 1;
            im >>= 1;
            sqrt2_exp -= 2;
        }
    }
};

// h(x, y) = i^(|x| + 2|y|).
inline GaussSqrt2 potential_h(const BitString& x, const BitString& y) {
    return GaussSqrt2::i_power(static_cast<int>((x.popcount() + 2 * y.popcount()) % 4));
}

// Exact E[h] with the first n coordinates as x.
inline GaussSqrt2 expected_h(const ExactDist& dist, int n) {
    if (n < 0 || static_cast<size_t>(n) > dist.len())
        throw std::invalid_argument("split size out of range");
    unsigned e = 0;
    for (const auto& [key, mass] : dist.pmf()) e = std::max(e, mass.denom_exp());
    mpz_class rsum = 0, isum = 0;
    for (const auto& [key, mass] : dist.pmf()) {
        size_t xw = 0, yw = 0;
        for (size_t i = 0; i < key.size(); ++i) {
            if (!key.get(i)) continue;
            if (i < static_cast<size_t>(n))
                ++xw;
            else
                ++yw;
        }
        mpz_class scaled = mass.num() << (e - mass.denom_exp());
        switch ((xw + 2 * yw) % 4) {
            case 0: rsum += scaled; break;
            case 1: isum += scaled; break;
            case 2: rsum -= scaled; break;
            default: isum -= scaled; break;
        }
    }
    return GaussSqrt2(std::move(rsum), std::move(isum), 2 * e);
}

struct DecayReport {
    Dyadic eta;             // 1 - max_a Pr[A = a mod 4]
    Dyadic e_mod_squared;   // |E[i^A]|^2
    Dyadic bound_squared;   // (1 - eta/4)^2
    bool holds = false;

    double lhs() const { return std::sqrt(e_mod_squared.to_double()); }
    double rhs() const { return 1.0 - eta.to_double() / 4.0; }
};

// |E[i^A]| <= 1 - eta/4 for a mod-4 distribution, decided by comparing
// squared magnitudes in exact arithmetic.
inline DecayReport decay_bound_check(const std::array<Dyadic, 4>& p) {
    Dyadic total;
    for (const auto& v : p) {
        if (v.sign() < 0) throw std::invalid_argument("negative mass");
        total += v;
    }
    if (total != Dyadic::one()) throw std::invalid_argument("mod-4 masses must sum to 1");
    Dyadic pmax = p[0];
    for (int a = 1; a < 4; ++a)
        if (pmax < p[a]) pmax = p[a];
    DecayReport r;
    r.eta = Dyadic::one() - pmax;
    Dyadic realpart = p[0] - p[2];
    Dyadic imagpart = p[1] - p[3];
    r.e_mod_squared = realpart * realpart + imagpart * imagpart;
    Dyadic bound = Dyadic::one() - r.eta.shifted_down(2);
    r.bound_squared = bound * bound;
    r.holds = r.e_mod_squared <= r.bound_squared;
    return r;
}

}  // namespace qlocal
