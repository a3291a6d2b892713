#include "bitroot/oracle.hpp"

#include <gtest/gtest.h>

#include "bitroot/rootbound.hpp"

namespace bitroot {
namespace {

RationalPoly make(std::vector<Rational> cs) {
    RationalPoly p;
    p.c = std::move(cs);
    return p;
}

TEST(Generators, MignotteExpansions) {
    RationalPoly a = mignotte(4, 4);  // x^4 - 32 x^2 + 16 x - 2
    ASSERT_EQ(a.nominal_degree(), 4);
    EXPECT_EQ(a.c[0], Rational(-2));
    EXPECT_EQ(a.c[1], Rational(16));
    EXPECT_EQ(a.c[2], Rational(-32));
    EXPECT_EQ(a.c[3], Rational(0));
    EXPECT_EQ(a.c[4], Rational(1));

    RationalPoly b = mignotte(4, 2);  // x^4 - 8 x^2 + 8 x - 2
    EXPECT_EQ(b.c[0], Rational(-2));
    EXPECT_EQ(b.c[1], Rational(8));
    EXPECT_EQ(b.c[2], Rational(-8));

    RationalPoly c = mignotte(6, 8);  // x^6 - 128 x^2 + 32 x - 2
    ASSERT_EQ(c.nominal_degree(), 6);
    EXPECT_EQ(c.c[0], Rational(-2));
    EXPECT_EQ(c.c[1], Rational(32));
    EXPECT_EQ(c.c[2], Rational(-128));
    EXPECT_EQ(c.c[3], Rational(0));
    EXPECT_EQ(c.c[4], Rational(0));
    EXPECT_EQ(c.c[5], Rational(0));
    EXPECT_EQ(c.c[6], Rational(1));
}

TEST(Generators, MignotteSignsAndRootLocations) {
    RationalPoly p = mignotte(4, 4);
    EXPECT_EQ(eval(p, Rational(0)), Rational(-2));
    EXPECT_EQ(eval(p, Rational(1, 4)), Rational(1, 256));
    EXPECT_EQ(eval(p, Rational(1)), Rational(-17));
    EXPECT_EQ(eval(p, Rational(6)), Rational(238));
    EXPECT_EQ(eval(p, Rational(-5)), Rational(-257));
    EXPECT_EQ(eval(p, Rational(-6)), Rational(46));
    // hence one root in each of these intervals, four in total
    EXPECT_EQ(sturm_count(p, Rational(0), Rational(1, 4)), 1);
    EXPECT_EQ(sturm_count(p, Rational(1, 4), Rational(1)), 1);
    EXPECT_EQ(sturm_count(p, Rational(5), Rational(6)), 1);
    EXPECT_EQ(sturm_count(p, Rational(-6), Rational(-5)), 1);
    EXPECT_EQ(sturm_count(p, Rational(-8), Rational(8)), 4);
}

TEST(Generators, ReproducibleAndSquarefree) {
    RationalPoly a = random_squarefree(6, 8, 123);
    RationalPoly b = random_squarefree(6, 8, 123);
    RationalPoly c = random_squarefree(6, 8, 124);
    ASSERT_EQ(a.c.size(), b.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) EXPECT_EQ(a.c[i], b.c[i]);
    bool differ = false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != c.c[i]) differ = true;
    EXPECT_TRUE(differ);
    for (int t = 0; t < 50; ++t) {
        long n = 2 + t % 7, tau = 1 + t % 9;
        RationalPoly p = random_squarefree(n, tau, 500 + static_cast<std::uint64_t>(t));
        ASSERT_EQ(p.nominal_degree(), n);
        EXPECT_NE(sgn(p.c.back()), 0);
        Rational bound = pow2_rational(tau);
        for (const auto& co : p.c) {
            EXPECT_LT(abs(co), bound);
            EXPECT_EQ(co.get_den(), 1);
        }
        EXPECT_TRUE(is_squarefree(p));
    }
}

TEST(Sturm, CountsOnKnownPolynomials) {
    RationalPoly q = make({Rational(2), Rational(-3), Rational(1)});  // (x-1)(x-2)
    EXPECT_EQ(sturm_count(q, Rational(0), Rational(3)), 2);
    EXPECT_EQ(sturm_count(q, Rational(0), Rational(3, 2)), 1);
    EXPECT_EQ(sturm_count(q, Rational(5, 2), Rational(4)), 0);
    RationalPoly c = make({Rational(1), Rational(0), Rational(1)});  // x^2+1
    EXPECT_EQ(sturm_count(c, Rational(-2), Rational(2)), 0);
    EXPECT_THROW(sturm_count(q, Rational(1), Rational(3)), endpoint_root_error);
    EXPECT_THROW(sturm_count(q, Rational(0), Rational(2)), endpoint_root_error);
}

TEST(Sturm, IsolateProducesDisjointSingleRootIntervals) {
    RationalPoly p = mignotte(4, 4);
    auto iso = sturm_isolate(p);
    ASSERT_EQ(iso.size(), 4u);
    for (size_t i = 0; i + 1 < iso.size(); ++i) EXPECT_LE(iso[i].second, iso[i + 1].first);
    for (const auto& [a, b] : iso) EXPECT_EQ(sturm_count(p, a, b), 1);
}

TEST(Sturm, RefineShrinksAndKeepsRoot) {
    RationalPoly p = mignotte(4, 4);
    auto iso = sturm_isolate(p);
    // the smallest positive root is approximately 0.239832
    auto it = std::find_if(iso.begin(), iso.end(),
                           [](const auto& j) { return sgn(j.first) >= 0; });
    ASSERT_NE(it, iso.end());
    auto [lo, hi] = sturm_refine(p, it->first, it->second, pow2_rational(-24));
    EXPECT_LT(hi - lo, pow2_rational(-24));
    EXPECT_EQ(sgn(eval(p, lo)) * sgn(eval(p, hi)), -1);
    EXPECT_GT(lo, Rational(2397, 10000));
    EXPECT_LT(hi, Rational(2399, 10000));
}

TEST(BisectionBaseline, SmallExamples) {
    // roots +-1/4
    VcaRun two = vca_exact(make({Rational(-1, 16), Rational(0), Rational(1)}));
    ASSERT_EQ(two.intervals.size(), 2u);
    EXPECT_EQ(two.intervals[0], std::make_pair(Rational(-1, 2), Rational(0)));
    EXPECT_EQ(two.intervals[1], std::make_pair(Rational(0), Rational(1, 2)));
    EXPECT_EQ(two.tree_size, 3);
    EXPECT_EQ(two.tree_depth, 1);

    // no real roots
    VcaRun none = vca_exact(make({Rational(1, 16), Rational(0), Rational(1)}));
    EXPECT_TRUE(none.intervals.empty());

    // roots 0, +-1/4; the subdivision point 0 is hit exactly
    VcaRun three = vca_exact(make({Rational(0), Rational(-1, 16), Rational(0), Rational(1)}));
    ASSERT_EQ(three.intervals.size(), 3u);
    EXPECT_EQ(three.intervals[1], std::make_pair(Rational(0), Rational(0)));
    EXPECT_EQ(three.intervals[0], std::make_pair(Rational(-1, 2), Rational(0)));
    EXPECT_EQ(three.intervals[2], std::make_pair(Rational(0), Rational(1, 2)));
}

TEST(ModifiedBaseline, SmallExamples) {
    RationalPoly f = make({Rational(-1, 16), Rational(0), Rational(1)});
    DcmRun run = dcm_exact(f);
    ASSERT_EQ(run.intervals.size(), 2u);
    EXPECT_EQ(run.intervals[0], std::make_pair(Rational(-41, 128), Rational(-31, 128)));
    EXPECT_EQ(run.intervals[1], std::make_pair(Rational(55, 256), Rational(65, 256)));
    EXPECT_EQ(run.tree_size, 25);
    EXPECT_EQ(run.tree_depth, 5);
    EXPECT_EQ(run.bisected.size(), 12u);
    // every bisected node's parent is bisected too (the set forms a tree)
    for (const auto& [d, i] : run.bisected) {
        if (d > 0) {
            EXPECT_TRUE(run.bisected.count({d - 1, i / 2}));
        }
    }

    EXPECT_TRUE(dcm_exact(make({Rational(1, 16), Rational(0), Rational(1)})).intervals.empty());

    DcmRun three = dcm_exact(make({Rational(0), Rational(-1, 16), Rational(0), Rational(1)}));
    ASSERT_EQ(three.intervals.size(), 3u);
    EXPECT_EQ(three.intervals[0], std::make_pair(Rational(-205, 768), Rational(-191, 768)));
    EXPECT_EQ(three.intervals[1], std::make_pair(Rational(-13, 384), Rational(1, 384)));
    EXPECT_EQ(three.intervals[2], std::make_pair(Rational(179, 768), Rational(193, 768)));
}

TEST(ModifiedBaseline, AgreesWithSturmAndBisectionOnRandomInstances) {
    for (int trial = 0; trial < 200; ++trial) {
        long n = 2 + trial % 7;
        long tau = 3 + trial % 6;
        RationalPoly F = random_squarefree(n, tau, 1000 + static_cast<std::uint64_t>(trial));
        CoefficientOracle oracle = oracle_from_rationals(F.c);
        long gamma = compute_gamma(oracle, tau_bound(oracle));
        RationalPoly f = scaled_from_rational(F, gamma);

        Rational R = cauchy_radius(F);
        long total = sturm_count(F, -R, R);
        ASSERT_EQ(sturm_count(f, Rational(-1, 2), Rational(1, 2)), total)
            << "rescaling must keep every real root inside the unit half-interval";

        VcaRun vr = vca_exact(f);
        EXPECT_EQ(static_cast<long>(vr.intervals.size()), total);
        std::set<Rational> points;
        for (const auto& [a, b] : vr.intervals)
            if (a == b) {
                EXPECT_EQ(sgn(eval(f, a)), 0);
                points.insert(a);
            }
        for (auto [a, b] : vr.intervals) {
            if (a == b) continue;
            Rational eps = (b - a) / pow2_rational(40);
            if (points.count(a)) a += eps;
            if (points.count(b)) b -= eps;
            EXPECT_EQ(sturm_count(f, a, b), 1);
        }

        DcmRun dr = dcm_exact(f);
        ASSERT_EQ(static_cast<long>(dr.intervals.size()), total);
        for (size_t i = 0; i + 1 < dr.intervals.size(); ++i)
            EXPECT_LE(dr.intervals[i].second, dr.intervals[i + 1].first);
        for (const auto& [a, b] : dr.intervals) EXPECT_EQ(sturm_count(f, a, b), 1);
    }
}

TEST(ClusterReport, BracketsKnownValues) {
    // roots +-1/4: separation 1/2, both real, |p'| = 1/2 at each root
    SeparationReport r = separation_report(make({Rational(-1, 16), Rational(0), Rational(1)}));
    ASSERT_EQ(r.degree, 2);
    ASSERT_EQ(r.roots.size(), 2u);
    for (const auto& cl : r.roots) {
        EXPECT_TRUE(cl.real);
        EXPECT_LE(cl.deriv_lo, Rational(1, 2));
        EXPECT_GE(cl.deriv_hi, Rational(1, 2));
        EXPECT_LE(cl.sep_lo, Rational(1, 2));
        EXPECT_GE(cl.sep_hi, Rational(1, 2));
    }
    EXPECT_LE(r.sigma_lo, Rational(1, 2));
    EXPECT_GE(r.sigma_hi, Rational(1, 2));
    EXPECT_GT(r.sigma_lo, Rational(1, 4));
    EXPECT_LE(r.sum_neg_log_sep_lo, 2.0);
    EXPECT_GE(r.sum_neg_log_sep_hi, 2.0);
    EXPECT_LE(r.log_max_modulus_lo, -2.0);
    EXPECT_GE(r.log_max_modulus_hi, -2.0);
    // mu = 2^-15, so the required precision indices are 15 / 50 / 32
    EXPECT_LE(r.mu_lo, Rational(1, 32768));
    EXPECT_GE(r.mu_hi, Rational(1, 32768));
    EXPECT_LE(r.rho_lo, 15);
    EXPECT_GE(r.rho_hi, 15);
    EXPECT_LE(r.rho_first_pass_lo, 50);
    EXPECT_GE(r.rho_first_pass_hi, 50);
    EXPECT_LE(r.rho_floor_lo, 32);
    EXPECT_GE(r.rho_floor_hi, 32);

    // roots +-i/4: a conjugate pair, no real roots
    SeparationReport c = separation_report(make({Rational(1, 16), Rational(0), Rational(1)}));
    ASSERT_EQ(c.roots.size(), 2u);
    for (const auto& cl : c.roots) EXPECT_FALSE(cl.real);
    EXPECT_LE(c.sigma_lo, Rational(1, 2));
    EXPECT_GE(c.sigma_hi, Rational(1, 2));

    // (x - 1/8)(x - 1/8 - 2^-12)(x + 1/4): the minimal separation is 2^-12,
    // and the report brackets it within a factor of two
    Rational r1(1, 8), r2 = Rational(1, 8) + Rational(1, 4096), r3(-1, 4);
    RationalPoly cub =
        make({-r1 * r2 * r3, r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3), Rational(1)});
    SeparationReport s = separation_report(cub);
    ASSERT_EQ(s.roots.size(), 3u);
    EXPECT_LE(s.sigma_lo, Rational(1, 4096));
    EXPECT_GE(s.sigma_hi, Rational(1, 4096));
    EXPECT_GT(s.sigma_lo, Rational(1, 8192));
    EXPECT_LT(s.sigma_hi, Rational(1, 2048));
}

TEST(ClusterReport, BoxesMatchSturmOnStressExample) {
    RationalPoly p = mignotte(4, 4);
    SeparationReport rep = separation_report(p);
    ASSERT_EQ(rep.roots.size(), 4u);
    long real_clusters = 0;
    for (const auto& cl : rep.roots) real_clusters += cl.real ? 1 : 0;
    EXPECT_EQ(real_clusters, 4);
    auto iso = sturm_isolate(p);
    ASSERT_EQ(iso.size(), 4u);
    // each refined root lies in exactly one cluster box
    for (const auto& j : iso) {
        auto [lo, hi] = sturm_refine(p, j.first, j.second, pow2_rational(-30));
        long hits = 0;
        for (const auto& cl : rep.roots)
            if (cl.re_lo <= lo && hi <= cl.re_hi) ++hits;
        EXPECT_EQ(hits, 1);
    }
    // the two close roots are about 0.023 apart; sigma brackets that gap
    auto [a_lo, a_hi] = sturm_refine(p, iso[1].first, iso[1].second, pow2_rational(-30));
    auto [b_lo, b_hi] = sturm_refine(p, iso[2].first, iso[2].second, pow2_rational(-30));
    EXPECT_LE(rep.sigma_lo, b_hi - a_lo);
    EXPECT_GE(rep.sigma_hi, b_lo - a_hi);
}

TEST(ClusterReport, CertifiedOnRandomInstances) {
    for (int trial = 0; trial < 30; ++trial) {
        long n = 3 + trial % 4;
        long tau = 3 + trial % 4;
        RationalPoly p = random_squarefree(n, tau, 3000 + static_cast<std::uint64_t>(trial));
        SeparationReport rep = separation_report(p);
        ASSERT_EQ(static_cast<long>(rep.roots.size()), n);
        Rational R = cauchy_radius(p);
        long real_total = sturm_count(p, -R, R);
        long real_clusters = 0;
        for (const auto& cl : rep.roots) {
            EXPECT_GT(cl.sep_lo, 0);
            EXPECT_LE(cl.sep_lo, cl.sep_hi);
            EXPECT_GT(cl.deriv_lo, 0);
            if (cl.real) {
                ++real_clusters;
                EXPECT_EQ(sturm_count(p, cl.re_lo, cl.re_hi), 1);
            }
        }
        EXPECT_EQ(real_clusters, real_total);
        // non-real clusters appear in conjugate pairs
        for (const auto& cl : rep.roots) {
            if (cl.real) continue;
            bool mirrored = false;
            for (const auto& other : rep.roots)
                if (other.re_lo == cl.re_lo && other.re_hi == cl.re_hi &&
                    other.im_lo == -cl.im_hi && other.im_hi == -cl.im_lo)
                    mirrored = true;
            EXPECT_TRUE(mirrored);
        }
        EXPECT_GT(rep.mu_lo, 0);
        EXPECT_LE(rep.mu_lo, rep.mu_hi);
        EXPECT_LE(rep.rho_lo, rep.rho_hi);
        EXPECT_LE(rep.rho_first_pass_lo, rep.rho_first_pass_hi);
        EXPECT_LE(rep.rho_floor_lo, rep.rho_floor_hi);
    }
}

TEST(ClusterReport, SmallPerturbationsKeepRootsNearby) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> dk(-(1L << 20), 1L << 20);
    for (int trial = 0; trial < 40; ++trial) {
        long n = 3 + trial % 4;
        RationalPoly p = random_squarefree(n, 4, 7000 + static_cast<std::uint64_t>(trial));
        SeparationReport rep = separation_report(p);
        Rational mu = rep.mu_lo;  // certified admissible perturbation radius
        RationalPoly q = p;
        for (auto& co : q.c) co += mu * dk(rng) / (1L << 20);
        Rational R = cauchy_radius(p) + 1;
        ASSERT_EQ(sturm_count(q, -R, R), sturm_count(p, -R, R))
            << "a perturbation within the admissible radius must not change the real root count";
        Rational t(64 * n * n);
        for (const auto& cl : rep.roots) {
            if (!cl.real) continue;
            Rational slack = cl.sep_hi / (t * n);
            EXPECT_GE(sturm_count(q, cl.re_lo - slack, cl.re_hi + slack), 1)
                << "each real root must have a counterpart within its separation-scaled ball";
        }
    }
}

TEST(ClusterReport, InclusionPredicateSucceedsBelowSeparationRadius) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dm(-128, 128);
    for (int trial = 0; trial < 20; ++trial) {
        long n = 3 + trial % 4;
        RationalPoly p = random_squarefree(n, 4, 11000 + static_cast<std::uint64_t>(trial));
        SeparationReport rep = separation_report(p);
        Rational r = rep.sigma_lo / (4 * n * n);
        RationalPoly dp = derivative(p);
        for (int k = 0; k < 10; ++k) {
            Rational m = Rational(dm(rng)) / 64;
            bool value_test = t_test_value(p, m, r, Rational(3, 2)) > 0;
            bool slope_test = t_test_value(dp, m, r, Rational(3, 2)) > 0;
            EXPECT_TRUE(value_test || slope_test)
                << "discs below the separation radius must pass one of the two tests";
        }
    }
}

TEST(Scaling, ExactRescalingMatchesStreamPipeline) {
    for (int trial = 0; trial < 40; ++trial) {
        long n = 2 + trial % 5;
        RationalPoly F = random_squarefree(n, 6, 17000 + static_cast<std::uint64_t>(trial));
        CoefficientOracle oracle = oracle_from_rationals(F.c);
        ScaledProblem prob = make_scaled(oracle);
        RationalPoly f = scaled_from_rational(F, prob.gamma);
        EXPECT_EQ(f.c.back(), Rational(1));
        long rho = 40;
        DyadicPoly fa = approx_f(prob, rho);
        Rational budget = pow2_rational(-rho);
        for (long i = 0; i <= n; ++i) {
            Rational diff = abs(fa.c[static_cast<size_t>(i)].to_rational() -
                                f.c[static_cast<size_t>(i)]);
            EXPECT_LE(diff, budget);
        }
    }
}

}  // namespace
}  // namespace bitroot
