/* Dense univariate polynomial transforms used by the subdivision algorithms.
 *
 * Polynomials are coefficient vectors, constant term first, and carry a fixed
 * nominal degree (vector length - 1): approximation can make leading
 * coefficients vanish, and all interval transforms keep operating at the
 * nominal degree so the (1+x)^n reversal factor stays aligned.
 *
 * Dyadic polynomials cross subdivision levels (after explicit rounding);
 * rational polynomials are exact throwaway values inside one node.
 */
#ifndef BITROOT_POLYOPS_HPP
#define BITROOT_POLYOPS_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "bitroot/dyadic.hpp"

namespace bitroot {

struct DyadicPoly {
    std::vector<Dyadic> c;  // c[k] multiplies x^k; size = nominal degree + 1

    DyadicPoly() = default;
    explicit DyadicPoly(size_t nominal_degree) : c(nominal_degree + 1) {}

    long nominal_degree() const { return static_cast<long>(c.size()) - 1; }
    // Highest index with a nonzero coefficient, or -1 for the zero polynomial.
    long true_degree() const {
        for (size_t k = c.size(); k-- > 0;)
            if (!c[k].is_zero()) return static_cast<long>(k);
        return -1;
    }
};

struct RationalPoly {
    std::vector<Rational> c;

    RationalPoly() = default;
    explicit RationalPoly(size_t nominal_degree) : c(nominal_degree + 1) {}

    long nominal_degree() const { return static_cast<long>(c.size()) - 1; }
    long true_degree() const {
        for (size_t k = c.size(); k-- > 0;)
            if (sgn(c[k]) != 0) return static_cast<long>(k);
        return -1;
    }
};

inline RationalPoly to_rational_poly(const DyadicPoly& p) {
    RationalPoly q;
    q.c.reserve(p.c.size());
    for (const Dyadic& d : p.c) q.c.push_back(d.to_rational());
    return q;
}

template <class Poly>
Poly derivative(const Poly& p) {
    Poly d;
    if (p.c.size() <= 1) {
        d.c.resize(1);
        return d;
    }
    d.c.reserve(p.c.size() - 1);
    for (size_t k = 1; k < p.c.size(); ++k) {
        auto t = p.c[k];
        t *= static_cast<long>(k);
        d.c.push_back(t);
    }
    return d;
}

inline Dyadic& operator*=(Dyadic& a, long s) { a = a * Dyadic(s); return a; }

inline Rational eval(const RationalPoly& p, const Rational& x) {
    Rational acc = 0;
    for (size_t k = p.c.size(); k-- > 0;) {
        acc *= x;
        acc += p.c[k];
    }
    return acc;
}

inline Dyadic eval(const DyadicPoly& p, const Dyadic& x) {
    Dyadic acc;
    for (size_t k = p.c.size(); k-- > 0;) {
        acc *= x;
        acc += p.c[k];
    }
    return acc;
}

inline Rational eval(const DyadicPoly& p, const Rational& x) {
    Rational acc = 0;
    for (size_t k = p.c.size(); k-- > 0;) {
        acc *= x;
        acc += p.c[k].to_rational();
    }
    return acc;
}

/* p(x/2): divides c[k] by 2^k, exact for both coefficient types. */
inline DyadicPoly scale_half(const DyadicPoly& p) {
    DyadicPoly q = p;
    for (size_t k = 1; k < q.c.size(); ++k)
        if (!q.c[k].is_zero()) q.c[k].exp -= static_cast<long>(k);
    return q;
}

inline RationalPoly scale_half(const RationalPoly& p) {
    RationalPoly q = p;
    Rational f = 1;
    const Rational half(1, 2);
    for (size_t k = 1; k < q.c.size(); ++k) {
        f *= half;
        q.c[k] *= f;
    }
    return q;
}

/* In-place p(x + t) by synthetic Horner passes; O(n^2) ring operations. */
template <class Poly, class T>
void shift_by_inplace(Poly& p, const T& t) {
    if (p.c.size() <= 1) return;
    size_t n = p.c.size() - 1;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = n - 1; j + 1 > i; --j) {
            auto prod = p.c[j + 1];
            prod *= t;
            p.c[j] += prod;
            if (j == i) break;
        }
    }
}

template <class Poly>
Poly taylor_shift_1(const Poly& p) {
    Poly q = p;
    if (q.c.size() <= 1) return q;
    size_t n = q.c.size() - 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = n - 1; ; --j) {
            q.c[j] += q.c[j + 1];
            if (j == i) break;
        }
    return q;
}

/* p((1+x)/2) — the right-child transform. */
inline DyadicPoly shift_half_scale_half(const DyadicPoly& p) {
    return taylor_shift_1(scale_half(p));
}

inline RationalPoly shift_half_scale_half(const RationalPoly& p) {
    return taylor_shift_1(scale_half(p));
}

/* p(x - 1/2) — moves the origin to the left endpoint of (-1/2, 1/2). */
inline DyadicPoly shift_minus_half(const DyadicPoly& p) {
    DyadicPoly q = p;
    shift_by_inplace(q, Dyadic(Integer(-1), -1));
    return q;
}

inline RationalPoly shift_minus_half(const RationalPoly& p) {
    RationalPoly q = p;
    shift_by_inplace(q, Rational(-1, 2));
    return q;
}

inline DyadicPoly round_poly(const DyadicPoly& p, long rho) {
    DyadicPoly q = p;
    for (Dyadic& d : q.c) d = dyadic_round(d, rho);
    return q;
}

inline RationalPoly shift_by(const RationalPoly& p, const Rational& t) {
    RationalPoly q = p;
    shift_by_inplace(q, t);
    return q;
}

/* p(s*x): multiplies c[k] by s^k. */
inline RationalPoly scale_by(const RationalPoly& p, const Rational& s) {
    RationalPoly q = p;
    Rational f = 1;
    for (size_t k = 1; k < q.c.size(); ++k) {
        f *= s;
        q.c[k] *= f;
    }
    return q;
}

/* The I -> I+ coefficient map at nominal degree n:
 *   p(-1/(4n) + (1 + 1/(2n)) x),
 * exact over the rationals.  n must match the subdivision degree, not the
 * (possibly dropped) true degree of p. */
inline RationalPoly extend_plus(const DyadicPoly& p, long n) {
    assert(n >= 1);
    RationalPoly q = to_rational_poly(p);
    shift_by_inplace(q, Rational(-1, 4 * n));
    return scale_by(q, Rational(2 * n + 1, 2 * n));
}

inline RationalPoly extend_plus(const RationalPoly& p, long n) {
    assert(n >= 1);
    RationalPoly q = shift_by(p, Rational(-1, 4 * n));
    return scale_by(q, Rational(2 * n + 1, 2 * n));
}

/* (1+x)^n p(1/(1+x)) for deg p <= n: pad to length n+1, reverse, shift by 1.
 * Maps the open interval (0,1) to (0,inf), so sign variations of the result
 * bound the number of roots of p in (0,1). */
inline RationalPoly reverse_shift(const RationalPoly& p, long n) {
    RationalPoly q;
    q.c.assign(static_cast<size_t>(n) + 1, Rational(0));
    for (size_t k = 0; k < p.c.size() && k <= static_cast<size_t>(n); ++k)
        q.c[static_cast<size_t>(n) - k] = p.c[k];
    return taylor_shift_1(q);
}

/* Sign variations in a coefficient sequence, zeros skipped. */
inline long sign_var(const std::vector<Rational>& c) {
    long v = 0;
    int prev = 0;
    for (const Rational& x : c) {
        int s = sgn(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

inline long sign_var(const RationalPoly& p) { return sign_var(p.c); }

/* One-sidedness of a coefficient sequence against a soft threshold eps > 0:
 *   AllAboveNegEps  — every c_i > -eps
 *   AllBelowPosEps  — every c_i < +eps
 *   Mixed           — some c_i <= -eps and some c_j >= +eps
 * When both one-sided conditions hold (all |c_i| < eps) the first wins. */
enum class SignClass { AllAboveNegEps, AllBelowPosEps, Mixed };

inline SignClass threshold_sign_class(const std::vector<Rational>& c, const Rational& eps) {
    assert(sgn(eps) > 0);
    bool above = true, below = true;
    Rational neg_eps = -eps;
    for (const Rational& x : c) {
        if (!(x > neg_eps)) above = false;
        if (!(x < eps)) below = false;
        if (!above && !below) return SignClass::Mixed;
    }
    return above ? SignClass::AllAboveNegEps : SignClass::AllBelowPosEps;
}

/* t_K^p(m, r) = |p(m)| - K * sum_{k>=1} |p^(k)(m)/k!| r^k.
 * A positive value certifies that the closed disc of radius r around m is
 * root-free (and more, depending on K). */
inline Rational t_test_value(const RationalPoly& p, const Rational& m, const Rational& r,
                             const Rational& K) {
    const RationalPoly* q = &p;
    RationalPoly shifted;
    if (sgn(m) != 0) {
        shifted = shift_by(p, m);
        q = &shifted;
    }
    Rational t = abs(q->c.empty() ? Rational(0) : q->c[0]);
    Rational rk = 1;
    Rational tail = 0;
    for (size_t k = 1; k < q->c.size(); ++k) {
        rk *= r;
        tail += abs(q->c[k]) * rk;
    }
    t -= K * tail;
    return t;
}

inline Rational t_test_value(const DyadicPoly& p, const Rational& m, const Rational& r,
                             const Rational& K) {
    return t_test_value(to_rational_poly(p), m, r, K);
}

}  // namespace bitroot

#endif
