/* The adaptive isolation engine for the rescaled problem: an isolation pass
 * that records certified root intervals from approximate coefficient data, a
 * certification pass that proves the remaining region root-free, and the
 * precision-doubling driver that combines them.  All per-node work uses
 * truncated dyadic approximations whose quality labels shrink by at most two
 * bits per subdivision level, so a run at working precision rho touches only
 * O(rho)-bit numbers per coefficient.
 */
#ifndef BITROOT_ISOLATOR_HPP
#define BITROOT_ISOLATOR_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "bitroot/rootbound.hpp"

namespace bitroot {

/* dyadic subdivision node: depth h and index i stand for the interval
 * (-1/2 + i 2^-h, -1/2 + (i+1) 2^-h) */
struct NodeInterval {
    long depth = 0;
    Integer index;

    Rational width() const { return pow2_rational(-depth); }
    Rational lo() const {
        Rational r(index);
        return Rational(-1, 2) + r * width();
    }
    Rational hi() const { return lo() + width(); }
    NodeInterval left_child() const { return {depth + 1, index * 2}; }
    NodeInterval right_child() const { return {depth + 1, index * 2 + 1}; }
};

/* a certified isolating interval for one root of the rescaled polynomial f:
 * J = (lo, hi) contains exactly one root, sign_left/right are the signs of f
 * at the endpoints, and |f| > lower_bound > 0 at both endpoints */
struct IsolatingRecord {
    Rational lo, hi;
    int sign_left = 0, sign_right = 0;
    Rational lower_bound;
    long rho_at_record = 0;
    NodeInterval base;  // the subdivision node that produced the record
};

struct TraceEntry {
    char phase = 'i';  // 'i' isolation pass, 'c' certification pass
    long depth = 0;
    Integer index;
    long rho_node = 0;
    const char* action = "";  // exclude|record|inconclusive|bisect|discard|insufficient
    double value = 0;         // the decisive test value, if any
};
using TraceSink = std::function<void(const TraceEntry&)>;

struct PhaseStats {
    long tree_size = 0;
    long max_depth = 0;
    long min_label = std::numeric_limits<long>::max();  // smallest per-node precision
};

struct IsolateResult {
    bool insufficient = false;
    std::vector<IsolatingRecord> records;  // sorted by lo, pairwise disjoint
    std::set<std::pair<long, Integer>> bisected;
    PhaseStats stats;
};

namespace detail {

inline void note(const TraceSink* sink, char phase, const NodeInterval& node, long label,
                 const char* action, double value) {
    if (sink && *sink) (*sink)(TraceEntry{phase, node.depth, node.index, label, action, value});
}

/* true degree of f_I + n 2^(n+1-label) x, scanning from the top coefficient */
inline long shifted_poly_degree(const DyadicPoly& fi, long n, long label) {
    for (long i = static_cast<long>(fi.c.size()) - 1; i >= 2; --i)
        if (!fi.c[static_cast<size_t>(i)].is_zero()) return i;
    Rational c1 = fi.c[1].to_rational() + Rational(n) * pow2_rational(n + 1 - label);
    return sgn(c1) != 0 ? 1 : 0;
}

inline bool intersects_any(const std::vector<IsolatingRecord>& recs, const Rational& lo,
                           const Rational& hi) {
    auto it = std::lower_bound(recs.begin(), recs.end(), lo,
                               [](const IsolatingRecord& r, const Rational& v) { return r.lo < v; });
    if (it != recs.end() && it->lo < hi) return true;
    if (it != recs.begin() && std::prev(it)->hi > lo) return true;
    return false;
}

}  // namespace detail

/* Isolation pass at working precision rho.  Walks the dyadic subdivision of
 * (-1/2, 1/2) with truncated approximations of the local Taylor coefficients.
 * A node is excluded when the reversed extended-interval coefficients have a
 * certified uniform sign, tested for inclusion when the derivative disc test
 * cannot be refuted, and bisected otherwise.  Inclusion requires a certified
 * sign change plus margins wide enough to survive the approximation error, in
 * which case the surrounding interval is recorded together with endpoint
 * signs and an endpoint lower bound on |f|.  Failing margins record nothing:
 * missed roots are the certification pass's job.  Precision labels drop by
 * one/two bits for left/right children; a label below two forces a restart
 * signal ("insufficient").  By construction the bisected node set is a
 * subtree of the one the exact subdivision method produces on f.
 */
inline IsolateResult dcm_rho(const ScaledProblem& prob, long rho, const TraceSink* trace = nullptr) {
    const long n = prob.n;
    IsolateResult out;
    DyadicPoly whole = approx_f(prob, rho + n + 1);
    DyadicPoly f0 = round_poly(shift_minus_half(whole), rho + 1);

    struct Active {
        NodeInterval node;
        DyadicPoly fi;
        long label;
    };
    std::vector<Active> stack;
    stack.push_back({NodeInterval{}, std::move(f0), rho});

    while (!stack.empty()) {
        Active a = std::move(stack.back());
        stack.pop_back();
        ++out.stats.tree_size;
        out.stats.max_depth = std::max(out.stats.max_depth, a.node.depth);
        out.stats.min_label = std::min(out.stats.min_label, a.label);
        assert(a.label <= rho && a.label >= rho - 2 * a.node.depth);

        RationalPoly fplus = extend_plus(a.fi, n);
        RationalPoly h = reverse_shift(fplus, n);
        Rational eps = pow2_rational(n + 2 - a.label);
        if (threshold_sign_class(h.c, eps) != SignClass::Mixed) {
            detail::note(trace, 'i', a.node, a.label, "exclude", 0);
            continue;
        }

        Rational t = t_test_value(derivative(a.fi), Rational(0), Rational(2), Rational(3, 2));
        Rational t_thr = Rational(n) * pow2_rational(n + 1 - a.label);
        if (t > -t_thr) {
            // inclusion attempt: evaluate the slope-shifted surrogate at the
            // extended endpoints and one exterior point
            Rational unit = pow2_rational(n - 1 - a.label);
            Rational lam_minus = eval(fplus, Rational(0)) - unit;
            Rational lam_plus = eval(fplus, Rational(1)) + (4 * n + 1) * unit;
            Rational lam_out = eval(a.fi, Rational(-1, n)) - 4 * unit;

            Rational w = a.node.width();
            Rational ext = w / (2 * n);
            Rational rec_lo = a.node.lo() - ext;
            Rational rec_hi = a.node.hi() + ext;

            Rational abs_minus = abs(lam_minus), abs_plus = abs(lam_plus);
            Rational lam_min = abs_minus < abs_plus ? abs_minus : abs_plus;
            Rational margin = Rational(n) * pow2_rational(n + 3 - a.label);
            long deg_hat = detail::shifted_poly_degree(a.fi, n, a.label);
            Rational out_margin = Rational(n) * Rational(n) * pow2_rational(deg_hat + n + 7 - a.label);

            bool disjoint = !detail::intersects_any(out.records, rec_lo, rec_hi);
            bool sign_change = sgn(lam_minus) * sgn(lam_plus) < 0;
            bool endpoints_large = lam_min > margin;
            bool exterior_large = abs(lam_out) > out_margin;

            if (disjoint && sign_change && endpoints_large && exterior_large) {
                IsolatingRecord rec;
                rec.lo = rec_lo;
                rec.hi = rec_hi;
                rec.sign_left = sgn(lam_minus);
                rec.sign_right = sgn(lam_plus);
                rec.lower_bound = lam_min - margin;
                rec.rho_at_record = a.label;
                rec.base = a.node;
                auto pos = std::lower_bound(
                    out.records.begin(), out.records.end(), rec.lo,
                    [](const IsolatingRecord& r, const Rational& v) { return r.lo < v; });
                detail::note(trace, 'i', a.node, a.label, "record", rec.lower_bound.get_d());
                out.records.insert(pos, std::move(rec));
            } else {
                detail::note(trace, 'i', a.node, a.label, "inconclusive", t.get_d());
            }
            continue;
        }

        // bisect
        detail::note(trace, 'i', a.node, a.label, "bisect", t.get_d());
        out.bisected.emplace(a.node.depth, a.node.index);
        if (a.label < 2) {
            detail::note(trace, 'i', a.node, a.label, "insufficient", 0);
            out.insufficient = true;
            return out;
        }
        DyadicPoly fl = round_poly(scale_half(a.fi), a.label);
        DyadicPoly fr = round_poly(shift_half_scale_half(a.fi), a.label - 1);
        stack.push_back({a.node.right_child(), std::move(fr), a.label - 2});
        stack.push_back({a.node.left_child(), std::move(fl), a.label - 1});
    }
    return out;
}

/* [-1/2, 1/2] minus the union of the recorded open intervals, with endpoint
 * sign/bound metadata for the certification pass */
class RegionOfUncertainty {
  public:
    explicit RegionOfUncertainty(const std::vector<IsolatingRecord>& recs) : records_(recs) {
        assert(std::is_sorted(records_.begin(), records_.end(),
                              [](const IsolatingRecord& x, const IsolatingRecord& y) {
                                  return x.lo < y.lo;
                              }));
        for (const auto& r : records_) {
            endpoints_.emplace(r.lo, std::make_pair(r.sign_left, r.lower_bound));
            endpoints_.emplace(r.hi, std::make_pair(r.sign_right, r.lower_bound));
        }
    }

    /* (lo, hi) misses the region entirely, i.e. lies inside one record */
    bool interval_clear(const Rational& lo, const Rational& hi) const {
        auto it = std::upper_bound(records_.begin(), records_.end(), lo,
                                   [](const Rational& v, const IsolatingRecord& r) { return v < r.lo; });
        if (it == records_.begin()) return false;
        --it;
        return it->hi >= hi;
    }

    /* (lo, hi) is disjoint from every record, i.e. lies inside the region */
    bool interval_disjoint_from_records(const Rational& lo, const Rational& hi) const {
        return !detail::intersects_any(records_, lo, hi);
    }

    /* the non-degenerate closed pieces of [lo, hi] \ union of records; point
     * pieces are dropped (their endpoints carry positive |f| bounds) */
    std::vector<std::pair<Rational, Rational>> pieces(const Rational& lo, const Rational& hi) const {
        std::vector<std::pair<Rational, Rational>> out;
        Rational cur = lo;
        auto it = std::lower_bound(records_.begin(), records_.end(), lo,
                                   [](const IsolatingRecord& r, const Rational& v) { return r.lo < v; });
        if (it != records_.begin()) --it;
        for (; it != records_.end() && it->lo < hi; ++it) {
            if (it->hi <= cur) continue;
            if (it->lo > cur) out.emplace_back(cur, it->lo);
            cur = it->hi < hi ? it->hi : hi;
            if (cur == hi) break;
        }
        if (cur < hi) out.emplace_back(cur, hi);
        return out;
    }

    /* sign of f and lower bound on |f| at a record endpoint */
    const std::pair<int, Rational>* endpoint_info(const Rational& q) const {
        auto it = endpoints_.find(q);
        return it == endpoints_.end() ? nullptr : &it->second;
    }

    bool empty() const { return records_.empty(); }

  private:
    std::vector<IsolatingRecord> records_;
    std::map<Rational, std::pair<int, Rational>> endpoints_;
};

enum class CertifyStatus { Certified, InsufficientPrecision };

struct CertifyResult {
    CertifyStatus status = CertifyStatus::Certified;
    PhaseStats stats;
    bool seeded = false;
};

/* Certification pass: proves that the region of uncertainty left over by the
 * isolation pass contains no root of f, or reports that the working
 * precision is too low.  A node disjoint from the region is discarded.  If
 * the whole-interval disc test cannot be refuted, |f| is bounded away from
 * zero on the node or we give up.  Otherwise the reversed derivative
 * coefficients decide: mixed signs bisect; a certified one-sided sign makes
 * a slope-shifted surrogate monotone, and each piece of the node inside the
 * region must then show consistent, sufficiently large endpoint values,
 * where record endpoints contribute their stored sign and bound.
 *
 * With seeding enabled (the default) the worklist starts at the maximal
 * dyadic nodes covering the region instead of the root: the descent prunes
 * subtrees lying inside a record and stops at nodes clear of record
 * boundaries, at depth just below the deepest record's node, or when labels
 * run low, so seeding itself can never trigger an insufficiency the
 * unseeded walk would have avoided.
 */
inline CertifyResult certify_rho(const ScaledProblem& prob, long rho,
                                 const std::vector<IsolatingRecord>& records, bool seeded = true,
                                 const TraceSink* trace = nullptr) {
    const long n = prob.n;
    RegionOfUncertainty region(records);
    CertifyResult out;
    out.seeded = seeded && !records.empty();

    DyadicPoly whole = approx_f(prob, rho + n + 1);
    DyadicPoly f0 = round_poly(shift_minus_half(whole), rho + 1);

    struct Active {
        NodeInterval node;
        DyadicPoly fi;
        long label;
    };
    std::vector<Active> stack;

    auto make_children = [&](const Active& a) {
        DyadicPoly fl = round_poly(scale_half(a.fi), a.label);
        DyadicPoly fr = round_poly(shift_half_scale_half(a.fi), a.label - 1);
        Active left{a.node.left_child(), std::move(fl), a.label - 1};
        Active right{a.node.right_child(), std::move(fr), a.label - 2};
        return std::make_pair(std::move(left), std::move(right));
    };

    if (!out.seeded) {
        stack.push_back({NodeInterval{}, std::move(f0), rho});
    } else {
        long h_stop = 1;
        for (const auto& r : records) h_stop = std::max(h_stop, r.base.depth + 1);
        std::vector<Active> pending;
        pending.push_back({NodeInterval{}, std::move(f0), rho});
        while (!pending.empty()) {
            Active a = std::move(pending.back());
            pending.pop_back();
            Rational lo = a.node.lo(), hi = a.node.hi();
            if (region.interval_clear(lo, hi)) continue;
            if (region.interval_disjoint_from_records(lo, hi) || a.node.depth >= h_stop ||
                a.label < 2) {
                stack.push_back(std::move(a));
                continue;
            }
            auto [left, right] = make_children(a);
            pending.push_back(std::move(right));
            pending.push_back(std::move(left));
        }
    }

    while (!stack.empty()) {
        Active a = std::move(stack.back());
        stack.pop_back();
        ++out.stats.tree_size;
        out.stats.max_depth = std::max(out.stats.max_depth, a.node.depth);
        out.stats.min_label = std::min(out.stats.min_label, a.label);
        assert(a.label <= rho && a.label >= rho - 2 * a.node.depth);

        Rational lo = a.node.lo(), hi = a.node.hi();
        if (region.interval_clear(lo, hi)) {
            detail::note(trace, 'c', a.node, a.label, "discard", 0);
            continue;
        }

        Rational t = t_test_value(a.fi, Rational(0), Rational(1), Rational(3, 2));
        Rational t_thr = Rational(n) * pow2_rational(2 - a.label);
        if (t > -t_thr) {
            // |f| is nearly constant on the node; decide by the center value
            Rational shifted = a.fi.c[0].to_rational() + t_thr;
            Rational bound = Rational(n) * Rational(n) * pow2_rational(5 - a.label);
            if (abs(shifted) > bound) {
                detail::note(trace, 'c', a.node, a.label, "discard", t.get_d());
                continue;
            }
            detail::note(trace, 'c', a.node, a.label, "insufficient", t.get_d());
            out.status = CertifyStatus::InsufficientPrecision;
            return out;
        }

        RationalPoly h = reverse_shift(to_rational_poly(derivative(a.fi)), n);
        Rational eps = Rational(n) * pow2_rational(n - a.label);
        SignClass cls = threshold_sign_class(h.c, eps);
        if (cls == SignClass::Mixed) {
            detail::note(trace, 'c', a.node, a.label, "bisect", t.get_d());
            if (a.label < 2) {
                detail::note(trace, 'c', a.node, a.label, "insufficient", 0);
                out.status = CertifyStatus::InsufficientPrecision;
                return out;
            }
            auto [left, right] = make_children(a);
            stack.push_back(std::move(right));
            stack.push_back(std::move(left));
            continue;
        }

        // one-sided derivative signs: the slope-shifted surrogate
        // g = f_I +/- n 2^(n-label) x is monotone on [0, 1]
        Rational slope = Rational(n) * pow2_rational(n - a.label);
        Rational g0 = a.fi.c[0].to_rational();
        Rational g1 = eval(a.fi, Rational(1)) + (cls == SignClass::AllAboveNegEps ? slope : -slope);
        Rational need = Rational(n) * pow2_rational(n + 2 - a.label);

        auto lambda_at = [&](const Rational& q) -> Rational {
            if (q == lo) return g0;
            if (q == hi) return g1;
            const auto* info = region.endpoint_info(q);
            if (!info)
                throw invariant_error("certify: piece endpoint is neither node nor record endpoint");
            return Rational(info->first) * info->second;
        };

        bool all_clear = true;
        for (const auto& [ql, qr] : region.pieces(lo, hi)) {
            Rational ll = lambda_at(ql), lr = lambda_at(qr);
            Rational al = abs(ll), ar = abs(lr);
            Rational lmin = al < ar ? al : ar;
            if (!(lmin > need) || !(sgn(ll) * sgn(lr) > 0)) {
                all_clear = false;
                break;
            }
        }
        if (all_clear) {
            detail::note(trace, 'c', a.node, a.label, "discard", t.get_d());
            continue;
        }
        detail::note(trace, 'c', a.node, a.label, "insufficient", t.get_d());
        out.status = CertifyStatus::InsufficientPrecision;
        return out;
    }
    return out;
}

struct RunStats {
    PhaseStats isolate, certify;
    bool certify_seeded = false;
    long restarts = 0;
    long final_rho = 0;
    unsigned long long coefficient_bits = 0;
};

/* an isolating interval mapped back to the original polynomial F */
struct OutputInterval {
    Rational lo, hi;
    int sign_left = 0, sign_right = 0;  // signs of F at the endpoints
};

struct IsolationOutcome {
    bool precision_cap_hit = false;
    long degree = 0;
    long gamma = 0;
    long tau_hat = 0;
    int lead_sign = 1;
    std::vector<IsolatingRecord> scaled_records;  // in the coordinates of f
    std::vector<OutputInterval> intervals;        // in the coordinates of F
    RunStats stats;
};

/* Precision-doubling driver: run the isolation pass, then the certification
 * pass, at precision rho; on any insufficiency double rho and start over,
 * up to the cap.  On success the records are mapped back through the
 * power-of-two rescaling, with endpoint signs adjusted for the sign of F's
 * leading coefficient. */
inline IsolationOutcome r_isolate(const CoefficientOracle& oracle, long rho_start = 16,
                                  long rho_cap = 1L << 20, bool seeded_certify = true,
                                  const TraceSink* trace = nullptr) {
    ScaledProblem prob = make_scaled(oracle);
    IsolationOutcome out;
    out.degree = prob.n;
    out.gamma = prob.gamma;
    out.tau_hat = prob.tau_hat;
    // |A_n| >= 1, so a 3-bit approximation decides its sign
    out.lead_sign = sgn(prob.oracle.query(prob.n, 3).to_rational()) >= 0 ? 1 : -1;

    long rho = rho_start;
    for (;;) {
        IsolateResult iso = dcm_rho(prob, rho, trace);
        out.stats.isolate = iso.stats;
        if (!iso.insufficient) {
            CertifyResult cert = certify_rho(prob, rho, iso.records, seeded_certify, trace);
            out.stats.certify = cert.stats;
            out.stats.certify_seeded = cert.seeded;
            if (cert.status == CertifyStatus::Certified) {
                out.stats.final_rho = rho;
                out.stats.coefficient_bits = prob.oracle.bits_requested();
                out.scaled_records = std::move(iso.records);
                Rational back = pow2_rational(prob.gamma + 1);
                for (const auto& r : out.scaled_records) {
                    OutputInterval oi;
                    oi.lo = r.lo * back;
                    oi.hi = r.hi * back;
                    oi.sign_left = r.sign_left * out.lead_sign;
                    oi.sign_right = r.sign_right * out.lead_sign;
                    out.intervals.push_back(std::move(oi));
                }
                return out;
            }
        }
        if (rho >= rho_cap) {
            out.precision_cap_hit = true;
            out.stats.final_rho = rho;
            out.stats.coefficient_bits = prob.oracle.bits_requested();
            return out;
        }
        rho = std::min(rho * 2, rho_cap);
        ++out.stats.restarts;
    }
}

}  // namespace bitroot

#endif
