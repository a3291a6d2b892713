#include "bitroot/dyadic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bitroot;

namespace {

Rational rq(long n, long d) { Rational q(n, d); q.canonicalize(); return q; }

TEST(Dyadic, CanonicalForm) {
    Dyadic a(4);
    EXPECT_EQ(a.mant, 1);
    EXPECT_EQ(a.exp, 2);
    Dyadic z(0);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.exp, 0);
    Dyadic b(Integer(12), -2);  // 3
    EXPECT_EQ(b.mant, 3);
    EXPECT_EQ(b.exp, 0);
    EXPECT_EQ(b.to_rational(), Rational(3));
}

TEST(Dyadic, ArithmeticMatchesRationals) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> m(-2000, 2000), e(-12, 12);
    for (int it = 0; it < 500; ++it) {
        Dyadic a(Integer(m(rng)), e(rng)), b(Integer(m(rng)), e(rng));
        EXPECT_EQ((a + b).to_rational(), a.to_rational() + b.to_rational());
        EXPECT_EQ((a - b).to_rational(), a.to_rational() - b.to_rational());
        EXPECT_EQ((a * b).to_rational(), a.to_rational() * b.to_rational());
        int c = cmp(a, b);
        int cr = ::cmp(a.to_rational(), b.to_rational());
        EXPECT_EQ(c < 0, cr < 0);
        EXPECT_EQ(c == 0, cr == 0);
    }
}

TEST(Dyadic, CompareFarExponents) {
    Dyadic big(Integer(3), 200), small(Integer(5), -200);
    EXPECT_GT(big, small);
    EXPECT_LT(-big, small);
    EXPECT_LT(small, Dyadic(1));
}

TEST(Dyadic, RoundIsTruncationTowardZero) {
    // pi/8 carried as the 20-bit dyadic 411775/2^20; rounding to 9 bits
    // truncates 411775/2048 = 201.06... down to 201/512.
    Dyadic pi8(Integer(411775), -20);
    Dyadic r = dyadic_round(pi8, 9);
    EXPECT_EQ(r.mant, 201);
    EXPECT_EQ(r.exp, -9);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> m(-100000, 100000), e(-40, 4), rho(0, 24);
    for (int it = 0; it < 1000; ++it) {
        Dyadic x(Integer(m(rng)), e(rng));
        long p = rho(rng);
        Dyadic r2 = dyadic_round(x, p);
        EXPECT_GE(r2.exp, std::min(-p, 0l));
        Rational err = abs(x.to_rational() - r2.to_rational());
        EXPECT_LT(err, pow2_rational(-p));
        EXPECT_LE(abs(r2.to_rational()), abs(x.to_rational()));
        Dyadic rneg = dyadic_round(-x, p);
        EXPECT_EQ(rneg.to_rational(), -r2.to_rational());
        // idempotent on representable values
        EXPECT_EQ(dyadic_round(r2, p).to_rational(), r2.to_rational());
    }
}

TEST(Dyadic, RationalTruncation) {
    Dyadic a = rational_trunc(rq(12256, 65589), 6);
    EXPECT_EQ(a.to_rational(), rq(11, 64));
    EXPECT_TRUE(rational_trunc(rq(12256, 65589), 2).is_zero());
    EXPECT_TRUE(rational_trunc(rq(1, 243), 6).is_zero());
    Dyadic b = rational_trunc(rq(-9, 16), 2);
    EXPECT_EQ(b.to_rational(), rq(-1, 2));
    // exact dyadic rationals pass through
    EXPECT_EQ(rational_trunc(rq(-9, 16), 6).to_rational(), rq(-9, 16));
}

TEST(Dyadic, DirectedGridRounding) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> m(-5000, 5000), e(-20, 2), rho(0, 12);
    for (int it = 0; it < 500; ++it) {
        Dyadic x(Integer(m(rng)), e(rng));
        long p = rho(rng);
        Dyadic lo = dyadic_floor_grid(x, p), hi = dyadic_ceil_grid(x, p);
        EXPECT_LE(lo, x);
        EXPECT_LE(x, hi);
        EXPECT_LE(hi.to_rational() - lo.to_rational(), pow2_rational(-p));
        Rational num = m(rng) == 0 ? Rational(1) : rq(m(rng), 5000);
        Dyadic rl = rational_floor_grid(num, p), rh = rational_ceil_grid(num, p);
        EXPECT_LE(rl.to_rational(), num);
        EXPECT_LE(num, rh.to_rational());
    }
}

TEST(Dyadic, Log2Bounds) {
    EXPECT_EQ(ceil_log2(Rational(1)), 0);
    EXPECT_EQ(floor_log2(Rational(1)), 0);
    EXPECT_EQ(ceil_log2(Rational(4)), 2);
    EXPECT_EQ(ceil_log2(Rational(5)), 3);
    EXPECT_EQ(floor_log2(Rational(5)), 2);
    EXPECT_EQ(ceil_log2(rq(1, 3)), -1);
    EXPECT_EQ(floor_log2(rq(1, 3)), -2);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> m(1, 1 << 20), d(1, 1 << 20);
    for (int it = 0; it < 500; ++it) {
        Rational q = rq(m(rng), d(rng));
        long c = ceil_log2(q), f = floor_log2(q);
        EXPECT_LE(q, pow2_rational(c));
        EXPECT_GT(q, pow2_rational(c - 1));
        EXPECT_GE(q, pow2_rational(f));
        EXPECT_LT(q, pow2_rational(f + 1));
    }
}

TEST(Interval, OpsEnclose) {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<long> m(-300, 300), e(-8, 4), rho(2, 30);
    for (int it = 0; it < 500; ++it) {
        Dyadic a1(Integer(m(rng)), e(rng)), a2(Integer(m(rng)), e(rng));
        Dyadic b1(Integer(m(rng)), e(rng)), b2(Integer(m(rng)), e(rng));
        if (a2 < a1) std::swap(a1, a2);
        if (b2 < b1) std::swap(b1, b2);
        DyadicInterval A(a1, a2), B(b1, b2);
        long p = rho(rng);
        // pick interior points and check closure under the rounded ops
        Dyadic xa = dyadic_round(a1 + Dyadic(Integer(1), -9) * (a2 - a1), 12);
        if (!A.contains(xa)) xa = a1;
        Dyadic xb = b1;
        DyadicInterval s = interval_add(A, B, p);
        EXPECT_TRUE(s.contains(dyadic_round(xa + xb, 60)));
        DyadicInterval pr = interval_mul(A, B, p);
        EXPECT_TRUE(pr.contains(xa * xb));
        DyadicInterval d = interval_sub(A, B, p);
        EXPECT_TRUE(d.contains(xa - xb));
    }
}

TEST(Interval, EvalPolyEnclosesAndStaysTight) {
    // p(x) = x^2 - 1 at x = 2 with rho = 20: encloses 3, width <= 2^-16.
    std::vector<DyadicInterval> coeff = {DyadicInterval(Dyadic(-1)), DyadicInterval(Dyadic(0)),
                                         DyadicInterval(Dyadic(1))};
    DyadicInterval v = interval_eval_poly(coeff, Dyadic(2), 20);
    EXPECT_TRUE(v.contains(Dyadic(3)));
    EXPECT_LE(v.width().to_rational(), pow2_rational(-16));

    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> m(-50, 50), deg(1, 10), rho(8, 40);
    for (int it = 0; it < 200; ++it) {
        size_t n = static_cast<size_t>(deg(rng));
        std::vector<DyadicInterval> c;
        std::vector<Rational> mid;
        for (size_t k = 0; k <= n; ++k) {
            Dyadic lo(Integer(m(rng)), -3), w(Integer(std::abs(m(rng))), -6);
            c.emplace_back(lo, lo + w);
            mid.push_back(lo.to_rational() + w.to_rational() / 2);
        }
        Dyadic x(Integer(m(rng)), -4);
        long p = rho(rng);
        DyadicInterval out = interval_eval_poly(c, x, p);
        Rational exact = 0;
        for (size_t k = mid.size(); k-- > 0;) exact = exact * x.to_rational() + mid[k];
        EXPECT_LE(out.lo.to_rational(), exact);
        EXPECT_GE(out.hi.to_rational(), exact);
    }
}

}  // namespace
