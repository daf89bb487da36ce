// Exact arithmetic foundations: arbitrary-precision integers (GMP), high
// precision reals (MPFR, 80 significant decimal digits), binomial helpers and
// exact dyadic rationals. No floating point is used anywhere in the exact
// pipelines; Real enters only for asymptotic diagnostics.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/math/constants/constants.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thompson {

using BigInt = boost::multiprecision::mpz_int;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>>;

inline Real to_real(const BigInt& x) { return Real(x); }

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

inline Real real_sqrt3() { return sqrt(Real(3)); }

/// Growth constant of the reduced-pair count, 8 + 4*sqrt(3).
inline Real growth_mu() { return 8 + 4 * real_sqrt3(); }

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.backend().data(), n, k);
    return r;
}

/// C(n, k) for big n, small k.
inline BigInt binomial_big(const BigInt& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("binomial_big: negative n");
    if (BigInt(k) > n) return 0;
    BigInt num = 1;
    for (unsigned t = 0; t < k; ++t) num *= n - t;
    BigInt fac = 1;
    for (unsigned t = 2; t <= k; ++t) fac *= t;
    BigInt q, r;
    divide_qr(num, fac, q, r);
    if (r != 0) throw std::logic_error("binomial_big: non-exact division");
    return q;
}

/// Number of multisets of size k drawn from a pool of n distinct objects.
inline BigInt multichoose(const BigInt& n, unsigned k) {
    if (n == 0) return k == 0 ? 1 : 0;
    return binomial_big(n + k - 1, k);
}

/// Exact division that fails hard on a nonzero remainder.
inline BigInt divide_exact(const BigInt& a, const BigInt& b, const char* what) {
    BigInt q, r;
    divide_qr(a, b, q, r);
    if (r != 0) throw std::logic_error(std::string("non-exact division in ") + what);
    return q;
}

/// Dyadic rational num / 2^exp, stored normalized (num odd, or zero with exp 0).
struct Dyadic {
    BigInt num;
    int exp = 0;

    Dyadic() : num(0) {}
    Dyadic(BigInt n, int e) : num(std::move(n)), exp(e) { normalize(); }
    static Dyadic from_int(long v) { return Dyadic(BigInt(v), 0); }

    void normalize() {
        if (exp < 0) {
            num <<= -exp;
            exp = 0;
        }
        if (num == 0) {
            exp = 0;
            return;
        }
        while (exp > 0 && (num & 1) == 0) {
            num >>= 1;
            --exp;
        }
    }

    bool is_zero() const { return num == 0; }

    Dyadic operator+(const Dyadic& o) const {
        int e = std::max(exp, o.exp);
        return Dyadic((num << (e - exp)) + (o.num << (e - o.exp)), e);
    }
    Dyadic operator-(const Dyadic& o) const {
        int e = std::max(exp, o.exp);
        return Dyadic((num << (e - exp)) - (o.num << (e - o.exp)), e);
    }
    Dyadic operator-() const { return Dyadic(-num, exp); }
    Dyadic operator*(const Dyadic& o) const { return Dyadic(num * o.num, exp + o.exp); }

    /// Multiply by 2^k (k may be negative).
    Dyadic times_pow2(int k) const { return Dyadic(num, exp - k); }

    int compare(const Dyadic& o) const {
        int e = std::max(exp, o.exp);
        BigInt a = num << (e - exp), b = o.num << (e - o.exp);
        return a < b ? -1 : (a == b ? 0 : 1);
    }
    bool operator==(const Dyadic& o) const { return num == o.num && exp == o.exp; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const { return compare(o) < 0; }
    bool operator<=(const Dyadic& o) const { return compare(o) <= 0; }
    bool operator>(const Dyadic& o) const { return compare(o) > 0; }
    bool operator>=(const Dyadic& o) const { return compare(o) >= 0; }

    double to_double() const { return num.convert_to<double>() / std::ldexp(1.0, exp); }

    std::string str() const {
        if (exp == 0) return num.str();
        return num.str() + "/2^" + std::to_string(exp);
    }
};

} // namespace thompson
