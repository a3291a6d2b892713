/* Exact ground-truth engines used to validate the bitstream isolator:
 * Sturm-sequence counting/isolation, the exact subdivision algorithms the
 * approximate one must shadow, a certified complex-cluster separation
 * report for analysis quantities, and reproducible instance generators.
 * Everything here runs in exact rational arithmetic; none of it touches
 * coefficient streams.
 */
#ifndef BITROOT_ORACLE_HPP
#define BITROOT_ORACLE_HPP

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "bitroot/polyops.hpp"

namespace bitroot {

struct endpoint_root_error : std::invalid_argument {
    explicit endpoint_root_error(const std::string& what) : std::invalid_argument(what) {}
};

struct refinement_budget_error : std::runtime_error {
    explicit refinement_budget_error(const std::string& what) : std::runtime_error(what) {}
};

/* ---------- rational polynomial utilities ---------- */

inline RationalPoly trim(RationalPoly p) {
    while (!p.c.empty() && sgn(p.c.back()) == 0) p.c.pop_back();
    return p;
}

/* positive-scalar normalization to coprime integer coefficients;
 * signs (and hence Sturm sequences) are preserved */
inline RationalPoly primitive_part(const RationalPoly& p) {
    RationalPoly q = trim(p);
    if (q.c.empty()) return q;
    Integer den(1);
    for (const auto& c : q.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    Integer g(0);
    for (const auto& c : q.c) {
        Integer scaled = c.get_num() * (den / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    }
    if (g == 0) g = 1;
    for (auto& c : q.c) {
        c *= Rational(den, g);
        c.canonicalize();
    }
    return q;
}

inline RationalPoly poly_rem(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r = trim(a);
    RationalPoly d = trim(b);
    assert(!d.c.empty());
    while (r.c.size() >= d.c.size() && !r.c.empty()) {
        Rational q = r.c.back() / d.c.back();
        size_t off = r.c.size() - d.c.size();
        for (size_t i = 0; i < d.c.size(); ++i) r.c[off + i] -= q * d.c[i];
        r.c.pop_back();
        while (!r.c.empty() && sgn(r.c.back()) == 0) r.c.pop_back();
    }
    return r;
}

inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
    a = primitive_part(a);
    b = primitive_part(b);
    while (!b.c.empty()) {
        RationalPoly r = primitive_part(poly_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline bool is_squarefree(const RationalPoly& p) {
    RationalPoly g = poly_gcd(p, derivative(p));
    return g.c.size() <= 1;
}

/* 1 + max |c_i / c_n|: every complex root has smaller modulus */
inline Rational cauchy_radius(const RationalPoly& p) {
    RationalPoly q = trim(p);
    assert(!q.c.empty());
    Rational m = 0;
    for (size_t i = 0; i + 1 < q.c.size(); ++i) {
        Rational r = abs(q.c[i] / q.c.back());
        if (r > m) m = r;
    }
    return m + 1;
}

/* ---------- Sturm sequences ---------- */

inline std::vector<RationalPoly> sturm_chain(const RationalPoly& p) {
    std::vector<RationalPoly> chain;
    chain.push_back(primitive_part(p));
    RationalPoly d = primitive_part(derivative(p));
    if (!d.c.empty()) chain.push_back(d);
    while (chain.back().c.size() > 1) {
        RationalPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.c.empty()) break;
        for (auto& c : r.c) c = -c;
        chain.push_back(primitive_part(r));
    }
    return chain;
}

inline long chain_variations(const std::vector<RationalPoly>& chain, const Rational& x) {
    int last = 0;
    long v = 0;
    for (const auto& q : chain) {
        int s = sgn(eval(q, x));
        if (s != 0) {
            if (last != 0 && s != last) ++v;
            last = s;
        }
    }
    return v;
}

/* number of distinct real roots of square-free p in the open interval (a, b) */
inline long sturm_count(const RationalPoly& p, const Rational& a, const Rational& b) {
    assert(a < b);
    if (sgn(eval(p, a)) == 0) throw endpoint_root_error("sturm_count: root at left endpoint");
    if (sgn(eval(p, b)) == 0) throw endpoint_root_error("sturm_count: root at right endpoint");
    std::vector<RationalPoly> chain = sturm_chain(p);
    return chain_variations(chain, a) - chain_variations(chain, b);
}

namespace detail {

/* 1..n visited center-out, so cut points stay near the middle when possible */
inline std::vector<long> centered_indices(long n) {
    std::vector<long> order;
    long base = (n + 1) / 2;
    for (long off = 0; off <= n; ++off) {
        if (base + off >= 1 && base + off <= n) order.push_back(base + off);
        if (off > 0 && base - off >= 1 && base - off <= n) order.push_back(base - off);
    }
    return order;
}

/* a root-free point strictly inside (a, b): with deg p roots and deg p + 1
 * equispaced candidates, at least one candidate qualifies */
inline Rational rootfree_cut(const RationalPoly& p, const Rational& a, const Rational& b) {
    long n = static_cast<long>(p.c.size());
    Rational w = b - a;
    for (long idx : centered_indices(n)) {
        Rational c = a + w * idx / (n + 1);
        if (sgn(eval(p, c)) != 0) return c;
    }
    assert(false && "no root-free cut among deg+1 candidates");
    return (a + b) / 2;
}

inline void sturm_isolate_rec(const RationalPoly& p, const std::vector<RationalPoly>& chain,
                              const Rational& a, const Rational& b, long count,
                              std::vector<std::pair<Rational, Rational>>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.emplace_back(a, b);
        return;
    }
    Rational cut = rootfree_cut(p, a, b);
    long left = chain_variations(chain, a) - chain_variations(chain, cut);
    sturm_isolate_rec(p, chain, a, cut, left, out);
    sturm_isolate_rec(p, chain, cut, b, count - left, out);
}

}  // namespace detail

/* disjoint isolating intervals, sorted, for all real roots of p in (a, b) */
inline std::vector<std::pair<Rational, Rational>> sturm_isolate(const RationalPoly& p,
                                                                const Rational& a,
                                                                const Rational& b) {
    std::vector<RationalPoly> chain = sturm_chain(p);
    long count = sturm_count(p, a, b);
    std::vector<std::pair<Rational, Rational>> out;
    detail::sturm_isolate_rec(p, chain, a, b, count, out);
    return out;
}

inline std::vector<std::pair<Rational, Rational>> sturm_isolate(const RationalPoly& p) {
    Rational r = cauchy_radius(p);
    return sturm_isolate(p, -r, r);
}

/* shrink an isolating interval below the requested width */
inline std::pair<Rational, Rational> sturm_refine(const RationalPoly& p, Rational a, Rational b,
                                                  const Rational& width) {
    std::vector<RationalPoly> chain = sturm_chain(p);
    assert(chain_variations(chain, a) - chain_variations(chain, b) == 1);
    while (b - a >= width) {
        Rational cut = detail::rootfree_cut(p, a, b);
        if (chain_variations(chain, a) - chain_variations(chain, cut) == 1)
            b = cut;
        else
            a = cut;
    }
    return {a, b};
}

/* ---------- exact subdivision baselines ---------- */

struct VcaRun {
    std::vector<std::pair<Rational, Rational>> intervals;  // [x,x] marks a midpoint hit
    long tree_size = 0;
    long tree_depth = 0;
};

/* classic sign-variation bisection on (-1/2, 1/2); diverges on multiple roots */
inline VcaRun vca_exact(const RationalPoly& f) {
    long n = f.nominal_degree();
    VcaRun run;
    struct Node {
        long depth;
        Rational a, w;
        RationalPoly fi;
    };
    std::vector<Node> stack;
    stack.push_back({0, Rational(-1, 2), Rational(1), shift_by(f, Rational(-1, 2))});
    while (!stack.empty()) {
        Node nd = std::move(stack.back());
        stack.pop_back();
        ++run.tree_size;
        run.tree_depth = std::max(run.tree_depth, nd.depth);
        long v = sign_var(reverse_shift(nd.fi, n));
        if (v == 0) continue;
        if (v == 1) {
            run.intervals.emplace_back(nd.a, nd.a + nd.w);
            continue;
        }
        Rational m = nd.a + nd.w / 2;
        if (sgn(eval(nd.fi, Rational(1, 2))) == 0) run.intervals.emplace_back(m, m);
        RationalPoly fl = scale_by(nd.fi, Rational(1, 2));
        RationalPoly fr = taylor_shift_1(fl);
        stack.push_back({nd.depth + 1, m, nd.w / 2, std::move(fr)});
        stack.push_back({nd.depth + 1, nd.a, nd.w / 2, std::move(fl)});
    }
    std::sort(run.intervals.begin(), run.intervals.end());
    return run;
}

struct DcmRun {
    std::vector<std::pair<Rational, Rational>> intervals;  // extended intervals I+
    std::set<std::pair<long, Integer>> bisected;           // (depth, index) of split nodes
    long tree_size = 0;
    long tree_depth = 0;
};

/* exact modified-Descartes baseline: variation count on the extended
 * interval as exclusion test, derivative T-test plus endpoint signs as
 * inclusion test; the approximate engine must induce a subtree of this run */
inline DcmRun dcm_exact(const RationalPoly& f) {
    long n = f.nominal_degree();
    DcmRun run;
    struct Node {
        long depth;
        Integer index;
        Rational a, w;
        RationalPoly fi;
    };
    std::vector<Node> stack;
    stack.push_back({0, Integer(0), Rational(-1, 2), Rational(1), shift_by(f, Rational(-1, 2))});
    std::vector<std::pair<Rational, Rational>> records;  // sorted by left endpoint
    while (!stack.empty()) {
        Node nd = std::move(stack.back());
        stack.pop_back();
        ++run.tree_size;
        run.tree_depth = std::max(run.tree_depth, nd.depth);
        RationalPoly fplus = extend_plus(nd.fi, n);
        if (sign_var(reverse_shift(fplus, n)) == 0) continue;
        Rational t = t_test_value(derivative(nd.fi), Rational(0), Rational(2), Rational(3, 2));
        if (t > 0) {
            if (sgn(eval(fplus, Rational(0))) * sgn(eval(fplus, Rational(1))) < 0) {
                Rational ext = nd.w / (4 * n);
                Rational lo = nd.a - ext, hi = nd.a + nd.w + ext;
                bool overlap = false;
                for (const auto& [c, d] : records)
                    if (hi > c && lo < d) overlap = true;
                if (!overlap) records.emplace_back(lo, hi);
            }
            continue;
        }
        run.bisected.emplace(nd.depth, nd.index);
        RationalPoly fl = scale_by(nd.fi, Rational(1, 2));
        RationalPoly fr = taylor_shift_1(fl);
        Rational m = nd.a + nd.w / 2;
        stack.push_back({nd.depth + 1, nd.index * 2 + 1, m, nd.w / 2, std::move(fr)});
        stack.push_back({nd.depth + 1, nd.index * 2, nd.a, nd.w / 2, std::move(fl)});
    }
    std::sort(records.begin(), records.end());
    run.intervals = std::move(records);
    return run;
}

/* ---------- certified complex clusters and separation data ---------- */

namespace detail {

/* floor/ceil bounds on sqrt(q) with `bits` fractional bits */
inline Rational sqrt_lower(const Rational& q, long bits) {
    assert(sgn(q) >= 0);
    Integer scaled = (q.get_num() << (2 * bits)) / q.get_den();
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rational r(root, Integer(1) << bits);
    r.canonicalize();
    return r;
}

inline Rational sqrt_upper(const Rational& q, long bits) {
    assert(sgn(q) >= 0);
    Integer num = q.get_num() << (2 * bits);
    Integer scaled = num / q.get_den();
    if (scaled * q.get_den() != num) scaled += 1;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    root += 1;
    Rational r(root, Integer(1) << bits);
    r.canonicalize();
    return r;
}

struct QComplex {
    Rational re, im;
};

inline QComplex cmul(const QComplex& x, const QComplex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

inline Rational cnorm2(const QComplex& z) { return z.re * z.re + z.im * z.im; }

/* Taylor coefficients p^(k)(m)/k! by repeated synthetic division */
inline std::vector<QComplex> complex_taylor(const RationalPoly& p, const QComplex& m) {
    std::vector<QComplex> b(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) b[i] = {p.c[i], Rational(0)};
    size_t sz = b.size();
    for (size_t k = 0; k < sz; ++k)
        for (size_t i = sz - 1; i-- > k;) {
            QComplex t = cmul(b[i + 1], m);
            b[i].re += t.re;
            b[i].im += t.im;
        }
    return b;
}

constexpr long kSqrtBits = 32;

/* lower bound on t_K^p(m, r) = |p(m)| - K sum_{k>=1} |p^(k)(m)/k!| r^k */
inline Rational t_test_lower(const std::vector<QComplex>& taylor, const Rational& r_up,
                             const Rational& K) {
    if (taylor.empty()) return Rational(0);
    Rational v = sqrt_lower(cnorm2(taylor[0]), kSqrtBits);
    Rational pw = 1;
    for (size_t k = 1; k < taylor.size(); ++k) {
        pw *= r_up;
        v -= K * sqrt_upper(cnorm2(taylor[k]), kSqrtBits) * pw;
    }
    return v;
}

}  // namespace detail

struct RootCluster {
    Rational re_lo, re_hi, im_lo, im_hi;  // component bounding box
    bool real = false;                    // box symmetric about the real axis
    Rational sep_lo, sep_hi;              // bounds on sigma(xi_i, p)
    Rational deriv_lo, deriv_hi;          // bounds on |p'(xi_i)|
};

struct SeparationReport {
    long degree = 0;
    std::vector<RootCluster> roots;  // one entry per complex root
    Rational sigma_lo, sigma_hi;     // sigma_p = min_i sigma(xi_i, p)
    double sum_neg_log_sep_lo = 0, sum_neg_log_sep_hi = 0;  // -sum_i log2 sigma_i
    double log_max_modulus_lo = 0, log_max_modulus_hi = 0;  // log2 max_i |xi_i|
    Rational mu_lo, mu_hi;                                  // mu(p, 64 n^2)
    long rho_lo = 0, rho_hi = 0;                            // ceil(-log2 mu)
    long rho_first_pass_lo = 0, rho_first_pass_hi = 0;      // ceil(rho - 3 log2 sigma_p + 16 n)
    long rho_floor_lo = 0, rho_floor_hi = 0;                // ceil(rho + 8n - log2 sigma_p)
};

namespace detail {

struct Cell {
    Integer x, y;  // box [x w, (x+1) w] x [y w, (y+1) w], w = R 2^(1-h)
    bool operator<(const Cell& o) const { return x < o.x || (x == o.x && y < o.y); }
};

/* directed log2 of a positive rational, via mpfr */
inline double log2_dir(const Rational& q, bool up) {
    assert(sgn(q) > 0);
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_set_q(t, q.get_mpq_t(), up ? MPFR_RNDU : MPFR_RNDD);
    mpfr_log2(t, t, up ? MPFR_RNDU : MPFR_RNDD);
    double d = mpfr_get_d(t, up ? MPFR_RNDU : MPFR_RNDD);
    mpfr_clear(t);
    return d;
}

inline long ceil_of_double_sum(double v) {
    double c = std::ceil(v);
    return static_cast<long>(c);
}

}  // namespace detail

/* Certified complex root clustering by quadtree exclusion.
 *
 * A cell of the subdivision survives unless the K=1 disc test proves it
 * root-free.  Surviving cells are grouped into 8-connected components; the
 * run is accepted once there are exactly deg(p) components, each of whose
 * enclosing discs passes the derivative test (at most one root) -- by
 * counting, each then holds exactly one root.  Conjugate symmetry of the
 * cell set makes "component touches the real axis" equivalent to "the root
 * is real".  All reported bounds are certified outer/inner estimates. */
inline SeparationReport separation_report(const RationalPoly& p_in, long max_depth = 48) {
    using detail::Cell;
    using detail::QComplex;
    RationalPoly p = trim(p_in);
    long n = p.nominal_degree();
    assert(n >= 2);
    RationalPoly dp = derivative(p);
    // power-of-two bounding half-width
    Rational cr = cauchy_radius(p);
    long rexp = ceil_log2(cr);
    Rational R = pow2_rational(rexp);
    const Rational circum(725, 1024);  // rational upper bound on 1/sqrt(2)

    std::vector<Cell> cells{{Integer(0), Integer(0)},
                            {Integer(-1), Integer(0)},
                            {Integer(0), Integer(-1)},
                            {Integer(-1), Integer(-1)}};
    long h = 0;
    Rational w = R;  // cell width at depth h

    for (h = 1; h <= max_depth; ++h) {
        // split every surviving cell and re-test the children
        w /= 2;
        std::vector<Cell> next;
        for (const Cell& c : cells)
            for (int dx = 0; dx < 2; ++dx)
                for (int dy = 0; dy < 2; ++dy) {
                    Cell ch{c.x * 2 + dx, c.y * 2 + dy};
                    Integer mx = 2 * ch.x + 1, my = 2 * ch.y + 1;
                    QComplex m{Rational(mx) * w / 2, Rational(my) * w / 2};
                    auto taylor = detail::complex_taylor(p, m);
                    if (!(detail::t_test_lower(taylor, circum * w, Rational(1)) > 0))
                        next.push_back(ch);
                }
        cells = std::move(next);
        if (cells.empty()) throw refinement_budget_error("separation_report: all cells excluded");

        // 8-connected components
        std::set<Cell> alive(cells.begin(), cells.end());
        std::map<Cell, size_t> comp;
        size_t ncomp = 0;
        for (const Cell& c : cells) {
            if (comp.count(c)) continue;
            std::vector<Cell> bfs{c};
            comp[c] = ncomp;
            while (!bfs.empty()) {
                Cell u = bfs.back();
                bfs.pop_back();
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy) {
                        Cell v{u.x + dx, u.y + dy};
                        if (alive.count(v) && !comp.count(v)) {
                            comp[v] = ncomp;
                            bfs.push_back(v);
                        }
                    }
            }
            ++ncomp;
        }
        if (static_cast<long>(ncomp) != n) continue;

        // bounding boxes
        struct Box {
            Integer xlo, xhi, ylo, yhi;
            bool init = false;
        };
        std::vector<Box> boxes(ncomp);
        for (const auto& [c, id] : comp) {
            Box& b = boxes[id];
            if (!b.init) {
                b = {c.x, c.x, c.y, c.y, true};
            } else {
                if (c.x < b.xlo) b.xlo = c.x;
                if (c.x > b.xhi) b.xhi = c.x;
                if (c.y < b.ylo) b.ylo = c.y;
                if (c.y > b.yhi) b.yhi = c.y;
            }
        }

        // certify: every component's enclosing disc holds at most one root,
        // and |p'| is bounded away from 0 on it
        bool ok = true;
        std::vector<RootCluster> clusters(ncomp);
        for (size_t id = 0; id < ncomp && ok; ++id) {
            const Box& b = boxes[id];
            RootCluster cl;
            cl.re_lo = Rational(b.xlo) * w;
            cl.re_hi = Rational(b.xhi + 1) * w;
            cl.im_lo = Rational(b.ylo) * w;
            cl.im_hi = Rational(b.yhi + 1) * w;
            cl.real = (cl.im_lo == -cl.im_hi);
            QComplex m{(cl.re_lo + cl.re_hi) / 2, (cl.im_lo + cl.im_hi) / 2};
            Rational half_w = (cl.re_hi - cl.re_lo) / 2, half_hgt = (cl.im_hi - cl.im_lo) / 2;
            if (half_hgt > half_w) half_w = half_hgt;
            Rational r_up = 2 * circum * half_w;  // >= sqrt(2) * max half-extent
            auto dtaylor = detail::complex_taylor(dp, m);
            if (!(detail::t_test_lower(dtaylor, r_up, Rational(3, 2)) > 0)) {
                ok = false;
                break;
            }
            // |p'| range over the disc from its Taylor expansion
            Rational d0_lo = detail::sqrt_lower(detail::cnorm2(dtaylor[0]), detail::kSqrtBits);
            Rational d0_hi = detail::sqrt_upper(detail::cnorm2(dtaylor[0]), detail::kSqrtBits);
            Rational tail = 0, pw = 1;
            for (size_t k = 1; k < dtaylor.size(); ++k) {
                pw *= r_up;
                tail += detail::sqrt_upper(detail::cnorm2(dtaylor[k]), detail::kSqrtBits) * pw;
            }
            cl.deriv_lo = d0_lo - tail;
            cl.deriv_hi = d0_hi + tail;
            if (!(cl.deriv_lo > 0)) {
                ok = false;
                break;
            }
            clusters[id] = std::move(cl);
        }
        if (!ok) continue;

        // pairwise box distances -> separation bounds
        auto dist_bounds = [](const RootCluster& a, const RootCluster& b) {
            auto axis = [](const Rational& alo, const Rational& ahi, const Rational& blo,
                           const Rational& bhi) {
                Rational gap = 0;
                if (ahi < blo) gap = blo - ahi;
                if (bhi < alo) gap = alo - bhi;
                Rational f1 = abs(bhi - alo), f2 = abs(ahi - blo);
                if (f2 > f1) f1 = f2;
                return std::pair<Rational, Rational>(gap, f1);
            };
            auto [gx, fx] = axis(a.re_lo, a.re_hi, b.re_lo, b.re_hi);
            auto [gy, fy] = axis(a.im_lo, a.im_hi, b.im_lo, b.im_hi);
            Rational lo = detail::sqrt_lower(gx * gx + gy * gy, detail::kSqrtBits);
            Rational hi = detail::sqrt_upper(fx * fx + fy * fy, detail::kSqrtBits);
            return std::pair<Rational, Rational>(lo, hi);
        };
        bool separated = true;
        for (size_t i = 0; i < ncomp && separated; ++i) {
            Rational lo, hi;
            bool first = true;
            for (size_t j = 0; j < ncomp; ++j) {
                if (i == j) continue;
                auto [l, u] = dist_bounds(clusters[i], clusters[j]);
                if (first || l < lo) lo = l;
                if (first || u < hi) hi = u;
                first = false;
            }
            if (!(lo > 0)) separated = false;
            clusters[i].sep_lo = lo;
            clusters[i].sep_hi = hi;
        }
        if (!separated) continue;

        // assemble the report
        SeparationReport rep;
        rep.degree = n;
        rep.roots = std::move(clusters);
        bool first = true;
        for (const auto& cl : rep.roots) {
            if (first || cl.sep_lo < rep.sigma_lo) rep.sigma_lo = cl.sep_lo;
            if (first || cl.sep_hi < rep.sigma_hi) rep.sigma_hi = cl.sep_hi;
            first = false;
        }
        rep.sum_neg_log_sep_lo = 0;
        rep.sum_neg_log_sep_hi = 0;
        double max_mod_lo = 0, max_mod_hi = 0;
        bool mod_first = true;
        for (const auto& cl : rep.roots) {
            rep.sum_neg_log_sep_lo += -detail::log2_dir(cl.sep_hi, true);
            rep.sum_neg_log_sep_hi += -detail::log2_dir(cl.sep_lo, false);
            // modulus of the root: corner-wise bounds of the box
            Rational xa = abs(cl.re_lo), xb = abs(cl.re_hi);
            Rational ya = abs(cl.im_lo), yb = abs(cl.im_hi);
            Rational xm = xa > xb ? xa : xb, ym = ya > yb ? ya : yb;
            Rational xn = (sgn(cl.re_lo) * sgn(cl.re_hi) > 0) ? (xa < xb ? xa : xb) : Rational(0);
            Rational yn = (sgn(cl.im_lo) * sgn(cl.im_hi) > 0) ? (ya < yb ? ya : yb) : Rational(0);
            Rational lo2 = xn * xn + yn * yn, hi2 = xm * xm + ym * ym;
            Rational lo = detail::sqrt_lower(lo2, detail::kSqrtBits);
            Rational hi = detail::sqrt_upper(hi2, detail::kSqrtBits);
            double llo = sgn(lo) > 0 ? detail::log2_dir(lo, false) : -1e9;
            double lhi = detail::log2_dir(hi, true);
            if (mod_first || llo > max_mod_lo) max_mod_lo = llo;
            if (mod_first || lhi > max_mod_hi) max_mod_hi = lhi;
            mod_first = false;
        }
        rep.log_max_modulus_lo = max_mod_lo;
        rep.log_max_modulus_hi = max_mod_hi;
        // mu(p, t) with t = 64 n^2
        Rational t(64 * n * n);
        bool mu_first = true;
        for (const auto& cl : rep.roots) {
            Rational lo = cl.sep_lo * cl.deriv_lo / (8 * n * n) / t;
            Rational hi = cl.sep_hi * cl.deriv_hi / (8 * n * n) / t;
            if (mu_first || lo < rep.mu_lo) rep.mu_lo = lo;
            if (mu_first || hi < rep.mu_hi) rep.mu_hi = hi;
            mu_first = false;
        }
        // ceil(-log2 q) = -floor(log2 q), exactly
        rep.rho_lo = -floor_log2(rep.mu_hi);
        rep.rho_hi = -floor_log2(rep.mu_lo);
        double ls_lo = detail::log2_dir(rep.sigma_lo, false);
        double ls_hi = detail::log2_dir(rep.sigma_hi, true);
        rep.rho_first_pass_lo =
            detail::ceil_of_double_sum(static_cast<double>(rep.rho_lo) - 3 * ls_hi + 16.0 * n);
        rep.rho_first_pass_hi =
            detail::ceil_of_double_sum(static_cast<double>(rep.rho_hi) - 3 * ls_lo + 16.0 * n);
        rep.rho_floor_lo =
            detail::ceil_of_double_sum(static_cast<double>(rep.rho_lo) + 8.0 * n - ls_hi);
        rep.rho_floor_hi =
            detail::ceil_of_double_sum(static_cast<double>(rep.rho_hi) + 8.0 * n - ls_lo);
        return rep;
    }
    throw refinement_budget_error("separation_report: subdivision budget exhausted");
}

/* ---------- instance generators ---------- */

/* x^n - 2 (a x - 1)^2, the classic near-double-root stress family */
inline RationalPoly mignotte(long n, const Integer& a) {
    assert(n >= 4);
    RationalPoly p(static_cast<size_t>(n));
    Integer quad = -2 * a * a, lin = 4 * a;
    p.c[static_cast<size_t>(n)] = 1;
    p.c[2] += Rational(quad);
    p.c[1] += Rational(lin);
    p.c[0] += Rational(-2);
    return p;
}

/* integer coefficients in (-2^tau, 2^tau), leading nonzero, gcd(p, p') constant */
inline RationalPoly random_squarefree(long n, long tau, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Integer bound = (Integer(1) << tau) - 1;
    Integer span = 2 * bound + 1;
    size_t span_bits = mpz_sizeinbase(span.get_mpz_t(), 2);
    auto draw = [&](bool nonzero) {
        // near-uniform integer in [-bound, bound]: 32 surplus bits before the
        // modulo keep the bias below 2^-32
        for (;;) {
            Integer v(0);
            for (size_t got = 0; got < span_bits + 32; got += 32)
                v = v * 4294967296 + Integer(static_cast<unsigned long>(rng() & 0xffffffffull));
            v %= span;
            Integer c = v - bound;
            if (!nonzero || c != 0) return c;
        }
    };
    for (;;) {
        RationalPoly p(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) p.c[static_cast<size_t>(i)] = Rational(draw(false));
        p.c[static_cast<size_t>(n)] = Rational(draw(true));
        if (is_squarefree(p)) return p;
    }
}

/* exact monic rescaling used by the approximate pipeline:
 * f(x) = F(2^(gamma+1) x) / (A_n 2^((gamma+1) n)) */
inline RationalPoly scaled_from_rational(const RationalPoly& F, long gamma) {
    RationalPoly f = trim(F);
    long n = f.nominal_degree();
    Rational lead = f.c.back();
    for (long i = 0; i <= n; ++i)
        f.c[static_cast<size_t>(i)] *= pow2_rational((gamma + 1) * (i - n)) / lead;
    return f;
}

}  // namespace bitroot

#endif
