/* Exact dyadic (m * 2^e) and rational arithmetic kernel, plus fixed-point
 * interval operations with outward rounding.  Everything here is exact or
 * one-directional: no silent precision loss anywhere.
 */
#ifndef BITROOT_DYADIC_HPP
#define BITROOT_DYADIC_HPP

#include <gmpxx.h>

#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace bitroot {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sgn(const Integer& z) { return mpz_sgn(z.get_mpz_t()); }
inline int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

/* 2^e as an exact rational, e may be negative. */
inline Rational pow2_rational(long e) {
    Rational r(1);
    if (e >= 0) {
        mpz_ui_pow_ui(mpq_numref(r.get_mpq_t()), 2u, static_cast<unsigned long>(e));
    } else {
        mpz_ui_pow_ui(mpq_denref(r.get_mpq_t()), 2u, static_cast<unsigned long>(-e));
    }
    return r;
}

/* Dyadic number mant * 2^exp.  Canonical form: mant odd, or mant == 0 and
 * exp == 0.  All arithmetic is exact. */
struct Dyadic {
    Integer mant;
    long exp = 0;

    Dyadic() : mant(0) {}
    Dyadic(long v) : mant(v) { normalize(); }
    Dyadic(Integer m, long e) : mant(std::move(m)), exp(e) { normalize(); }

    void normalize() {
        if (sgn(mant) == 0) {
            exp = 0;
            return;
        }
        unsigned long tz = mpz_scan1(mant.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_tdiv_q_2exp(mant.get_mpz_t(), mant.get_mpz_t(), tz);
            exp += static_cast<long>(tz);
        }
    }

    bool is_zero() const { return sgn(mant) == 0; }
    int sign() const { return sgn(mant); }

    Rational to_rational() const {
        Rational r(mant);
        Rational p = pow2_rational(exp);
        Rational out = r * p;
        return out;
    }

    double to_double() const { return to_rational().get_d(); }

    std::string str() const {
        if (exp == 0) return mant.get_str();
        return mant.get_str() + "*2^" + std::to_string(exp);
    }
};

inline Dyadic operator-(const Dyadic& a) {
    Dyadic r;
    r.mant = -a.mant;
    r.exp = a.exp;
    return r;
}

inline Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.exp, b.exp);
    Integer ma = a.mant, mb = b.mant;
    if (a.exp > e) mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<unsigned long>(a.exp - e));
    if (b.exp > e) mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<unsigned long>(b.exp - e));
    return Dyadic(ma + mb, e);
}

inline Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

inline Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    Integer m = a.mant * b.mant;
    return Dyadic(std::move(m), a.exp + b.exp);
}

inline Dyadic& operator+=(Dyadic& a, const Dyadic& b) { a = a + b; return a; }
inline Dyadic& operator-=(Dyadic& a, const Dyadic& b) { a = a - b; return a; }
inline Dyadic& operator*=(Dyadic& a, const Dyadic& b) { a = a * b; return a; }

/* Exact three-way comparison.  Fast path decides by magnitude ranges before
 * materializing aligned mantissas. */
inline int cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // |x| lies in [2^(exp+bits-1), 2^(exp+bits)).
    long ha = a.exp + static_cast<long>(mpz_sizeinbase(a.mant.get_mpz_t(), 2));
    long hb = b.exp + static_cast<long>(mpz_sizeinbase(b.mant.get_mpz_t(), 2));
    if (ha != hb) {
        int mag = ha < hb ? -1 : 1;   // compares |a| vs |b|
        return sa > 0 ? mag : -mag;
    }
    Dyadic d = a - b;
    return d.sign();
}

inline bool operator==(const Dyadic& a, const Dyadic& b) { return cmp(a, b) == 0; }
inline bool operator!=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) != 0; }
inline bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
inline bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
inline bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
inline bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

inline Dyadic abs(const Dyadic& a) { return a.sign() < 0 ? -a : a; }

inline Dyadic pow2_dyadic(long e) { return Dyadic(Integer(1), e); }

/* Truncation toward zero to the grid 2^-rho:
 *   round(x) = sign(x) * floor(|x| * 2^rho) * 2^-rho.
 * Exact when x is already representable on the grid. */
inline Dyadic dyadic_round(const Dyadic& x, long rho) {
    if (x.is_zero() || x.exp >= -rho) return x;
    unsigned long shift = static_cast<unsigned long>(-rho - x.exp);
    Integer q;
    mpz_tdiv_q_2exp(q.get_mpz_t(), x.mant.get_mpz_t(), shift);  // truncates toward zero
    return Dyadic(std::move(q), -rho);
}

/* Truncation toward zero of a rational to the grid 2^-rho. */
inline Dyadic rational_trunc(const Rational& x, long rho) {
    if (sgn(x) == 0) return Dyadic();
    Integer num = x.get_num(), den = x.get_den();
    if (rho >= 0) {
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(rho));
    } else {
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-rho));
    }
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Dyadic(std::move(q), -rho);
}

/* Round toward -inf / +inf to the grid 2^-rho. */
inline Dyadic dyadic_floor_grid(const Dyadic& x, long rho) {
    if (x.is_zero() || x.exp >= -rho) return x;
    unsigned long shift = static_cast<unsigned long>(-rho - x.exp);
    Integer q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), x.mant.get_mpz_t(), shift);
    return Dyadic(std::move(q), -rho);
}

inline Dyadic dyadic_ceil_grid(const Dyadic& x, long rho) {
    if (x.is_zero() || x.exp >= -rho) return x;
    unsigned long shift = static_cast<unsigned long>(-rho - x.exp);
    Integer q;
    mpz_cdiv_q_2exp(q.get_mpz_t(), x.mant.get_mpz_t(), shift);
    return Dyadic(std::move(q), -rho);
}

inline Dyadic rational_floor_grid(const Rational& x, long rho) {
    Integer num = x.get_num(), den = x.get_den();
    if (rho >= 0) {
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(rho));
    } else {
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-rho));
    }
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Dyadic(std::move(q), -rho);
}

inline Dyadic rational_ceil_grid(const Rational& x, long rho) {
    Integer num = x.get_num(), den = x.get_den();
    if (rho >= 0) {
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(rho));
    } else {
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-rho));
    }
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Dyadic(std::move(q), -rho);
}

/* ceil(log2(q)) for q > 0: the least t with q <= 2^t. */
inline long ceil_log2(const Rational& q) {
    if (sgn(q) <= 0) throw std::invalid_argument("ceil_log2: argument must be positive");
    long bn = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
    long bd = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    // q in [2^(bn-bd-1), 2^(bn-bd+1)), so the answer is one of bn-bd, bn-bd+1.
    long t = bn - bd;
    Rational p = pow2_rational(t);
    if (q <= p) {
        Rational below = pow2_rational(t - 1);
        return q <= below ? t - 1 : t;
    }
    return t + 1;
}

/* floor(log2(q)) for q > 0: the greatest t with 2^t <= q. */
inline long floor_log2(const Rational& q) {
    long c = ceil_log2(q);
    Rational p = pow2_rational(c);
    return q == p ? c : c - 1;
}

/* Closed dyadic interval [lo, hi].  The arithmetic below models fixed-point
 * interval arithmetic: after each basic operation the endpoints are rounded
 * outward to the grid 2^-rho, so enclosure is preserved while mantissas stay
 * bounded. */
struct DyadicInterval {
    Dyadic lo, hi;

    DyadicInterval() = default;
    DyadicInterval(Dyadic v) : lo(v), hi(std::move(v)) {}
    DyadicInterval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
        assert(!(hi < lo));
    }

    Dyadic width() const { return hi - lo; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    bool strictly_positive() const { return lo.sign() > 0; }
    bool strictly_negative() const { return hi.sign() < 0; }
    bool contains(const Dyadic& x) const { return !(x < lo) && !(hi < x); }
};

inline DyadicInterval outward(const Dyadic& lo, const Dyadic& hi, long rho) {
    return DyadicInterval(dyadic_floor_grid(lo, rho), dyadic_ceil_grid(hi, rho));
}

inline DyadicInterval interval_from_rational(const Rational& lo, const Rational& hi, long rho) {
    return DyadicInterval(rational_floor_grid(lo, rho), rational_ceil_grid(hi, rho));
}

inline DyadicInterval interval_add(const DyadicInterval& a, const DyadicInterval& b, long rho) {
    return outward(a.lo + b.lo, a.hi + b.hi, rho);
}

inline DyadicInterval interval_neg(const DyadicInterval& a) {
    return DyadicInterval(-a.hi, -a.lo);
}

inline DyadicInterval interval_sub(const DyadicInterval& a, const DyadicInterval& b, long rho) {
    return interval_add(a, interval_neg(b), rho);
}

inline DyadicInterval interval_mul(const DyadicInterval& a, const DyadicInterval& b, long rho) {
    Dyadic p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Dyadic lo = p1, hi = p1;
    for (const Dyadic* p : {&p2, &p3, &p4}) {
        if (*p < lo) lo = *p;
        if (hi < *p) hi = *p;
    }
    return outward(lo, hi, rho);
}

/* Horner evaluation of a polynomial with interval coefficients (constant term
 * first) at a dyadic point, every operation outward-rounded to 2^-rho.  The
 * result encloses p(x) for every real polynomial p whose coefficients lie in
 * the given intervals. */
inline DyadicInterval interval_eval_poly(const std::vector<DyadicInterval>& coeff,
                                         const Dyadic& x, long rho) {
    if (coeff.empty()) return DyadicInterval(Dyadic());
    DyadicInterval xi(x);
    DyadicInterval acc = coeff.back();
    for (size_t k = coeff.size() - 1; k-- > 0;) {
        acc = interval_mul(acc, xi, rho);
        acc = interval_add(acc, coeff[k], rho);
    }
    return acc;
}

}  // namespace bitroot

#endif
