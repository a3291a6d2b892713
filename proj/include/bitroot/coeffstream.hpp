/* Bitstream coefficient oracles.
 *
 * A coefficient is a real number that can only be queried through
 * approximations: query(i, rho) returns a dyadic on the 2^-rho grid within
 * 2^-rho of the true value A_i.  Streams must be deterministic in (i, rho);
 * the reference implementation is single-threaded, so the request counter is
 * a plain mutable field.
 */
#ifndef BITROOT_COEFFSTREAM_HPP
#define BITROOT_COEFFSTREAM_HPP

#include <mpfr.h>

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "bitroot/polyops.hpp"

namespace bitroot {

/* Round to the nearest multiple of 2^-rho (ties toward +inf).  Adds at most
 * 2^-(rho+1) of error, so a value refined to 2^-(rho+2) lands within 2^-rho
 * of the truth after snapping. */
inline Dyadic round_nearest_grid(const Dyadic& x, long rho) {
    Dyadic shifted = x + Dyadic(Integer(1), -rho - 1);
    return dyadic_floor_grid(shifted, rho);
}

struct RealStream {
    // approx(rho) must return a grid-2^-rho dyadic within 2^-rho of the value.
    std::function<Dyadic(long)> approx;
};

inline RealStream stream_of_rational(Rational v) {
    return RealStream{[v = std::move(v)](long rho) { return rational_trunc(v, rho); }};
}

inline RealStream stream_of_integer(const Integer& v) {
    return stream_of_rational(Rational(v));
}

namespace detail {

inline Dyadic dyadic_of_mpfr(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Dyadic();
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    return Dyadic(m, static_cast<long>(e));
}

/* sqrt(q) for q >= 0 to absolute error <= 2^-bits. */
inline Dyadic sqrt_refined(const Rational& q, long bits) {
    if (sgn(q) == 0) return Dyadic();
    // Magnitude of sqrt(q) is 2^(ceil_log2(q)/2 +- 1); choosing the mantissa
    // size relative to it keeps the absolute error under 2^-(bits+2).
    long mag = ceil_log2(q) / 2 + 2;
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(8l, bits + mag + 8));
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    Dyadic out = dyadic_of_mpfr(t);
    mpfr_clear(t);
    return out;
}

inline Dyadic pi_refined(long bits) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(8l, bits + 12));
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_const_pi(t, MPFR_RNDN);
    Dyadic out = dyadic_of_mpfr(t);
    mpfr_clear(t);
    return out;
}

}  // namespace detail

inline RealStream stream_sqrt(Rational q) {
    if (sgn(q) < 0) throw std::invalid_argument("stream_sqrt: negative radicand");
    return RealStream{[q = std::move(q)](long rho) {
        return round_nearest_grid(detail::sqrt_refined(q, rho + 2), rho);
    }};
}

inline RealStream stream_pi() {
    return RealStream{[](long rho) {
        return round_nearest_grid(detail::pi_refined(rho + 2), rho);
    }};
}

/* sum_j c_j * s_j with rational weights.  Children are queried fine enough
 * that the weighted errors plus the final grid snap stay within 2^-rho. */
inline RealStream stream_lincomb(std::vector<std::pair<Rational, RealStream>> terms) {
    return RealStream{[terms = std::move(terms)](long rho) {
        Rational weight = 0;
        for (const auto& t : terms) weight += abs(t.first);
        long extra = weight > 1 ? ceil_log2(weight) : 0;
        long child_rho = rho + 2 + extra;
        Rational acc = 0;
        for (const auto& t : terms)
            acc += t.first * t.second.approx(child_rho).to_rational();
        // |acc - value| <= weight * 2^-child_rho <= 2^-(rho+2); snapping the
        // rational accumulation to the nearest grid point adds <= 2^-(rho+1),
        // so the total stays below 2^-rho.
        Integer num = acc.get_num(), den = acc.get_den();
        if (rho >= 0)
            mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(rho));
        else
            mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-rho));
        Integer twice_num = num * 2 + den;  // floor((num/den) + 1/2) = floor((2num+den)/(2den))
        Integer grid;
        mpz_fdiv_q(grid.get_mpz_t(), twice_num.get_mpz_t(), Integer(den * 2).get_mpz_t());
        return Dyadic(grid, -rho);
    }};
}

class CoefficientOracle {
  public:
    CoefficientOracle() = default;
    explicit CoefficientOracle(std::vector<RealStream> coefficients)
        : streams_(std::make_shared<std::vector<RealStream>>(std::move(coefficients))),
          bits_(std::make_shared<unsigned long long>(0)) {
        if (streams_->size() < 2)
            throw std::invalid_argument("CoefficientOracle: need degree >= 1");
    }

    long degree() const { return static_cast<long>(streams_->size()) - 1; }

    Dyadic query(long i, long rho) const {
        assert(i >= 0 && i <= degree());
        *bits_ += static_cast<unsigned long long>(std::max(rho, 1l));
        return (*streams_)[static_cast<size_t>(i)].approx(rho);
    }

    unsigned long long bits_requested() const { return *bits_; }

  private:
    std::shared_ptr<std::vector<RealStream>> streams_;
    std::shared_ptr<unsigned long long> bits_;
};

inline CoefficientOracle oracle_from_integers(const std::vector<Integer>& coeff) {
    std::vector<RealStream> s;
    s.reserve(coeff.size());
    for (const Integer& v : coeff) s.push_back(stream_of_integer(v));
    return CoefficientOracle(std::move(s));
}

inline CoefficientOracle oracle_from_rationals(const std::vector<Rational>& coeff) {
    std::vector<RealStream> s;
    s.reserve(coeff.size());
    for (const Rational& v : coeff) s.push_back(stream_of_rational(v));
    return CoefficientOracle(std::move(s));
}

/* tau_hat: a computable stand-in for the coefficient-ratio exponent tau
 * (the least positive integer with max_{i<n} |A_i|/|A_n| < 2^tau).  Queries
 * at 8 bits and pads both sides of the quotient, which guarantees
 * tau <= tau_hat <= tau + 2 whenever |A_n| >= 1. */
inline long tau_bound(const CoefficientOracle& oracle) {
    const long probe = 8;
    const Rational pad = pow2_rational(-probe);
    long n = oracle.degree();
    Rational max_low = 0;
    for (long i = 0; i < n; ++i) {
        Rational m = abs(oracle.query(i, probe).to_rational());
        if (m > max_low) max_low = m;
    }
    Rational lead = abs(oracle.query(n, probe).to_rational()) - pad;
    if (sgn(lead) <= 0)
        throw std::invalid_argument("tau_bound: leading coefficient is not bounded away from 0");
    Rational est = (max_low + pad) / lead;
    long t = ceil_log2(est) + 1;
    return std::max(1l, t);
}

/* rho-binary approximation of the input polynomial F itself. */
inline DyadicPoly approx_F(const CoefficientOracle& oracle, long rho) {
    DyadicPoly p(static_cast<size_t>(oracle.degree()));
    for (long i = 0; i <= oracle.degree(); ++i)
        p.c[static_cast<size_t>(i)] = oracle.query(i, rho);
    return p;
}

/* rho-binary approximation of the scaled, monic polynomial
 *   f(x) = F(2^(gamma+1) x) / (A_n 2^((gamma+1) n)),
 * whose roots are xi_i 2^-(gamma+1), all inside the half-disc around 0.
 * Queries F to n(gamma+1) + rho + tau_hat + 1 bits, forms the quotient
 * coefficients exactly over the rationals, and truncates to rho+1 bits.
 * The leading coefficient is pinned to exactly 1. */
inline DyadicPoly approx_f(const CoefficientOracle& oracle, long gamma, long tau_hat, long rho) {
    long n = oracle.degree();
    long q_bits = n * (gamma + 1) + rho + tau_hat + 1;
    Rational lead = oracle.query(n, q_bits).to_rational();
    if (sgn(lead) == 0)
        throw std::invalid_argument("approx_f: leading coefficient query returned 0");
    DyadicPoly f(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        Rational ai = oracle.query(i, q_bits).to_rational();
        ai /= lead;
        ai *= pow2_rational((gamma + 1) * (i - n));
        f.c[static_cast<size_t>(i)] = rational_trunc(ai, rho + 1);
    }
    f.c[static_cast<size_t>(n)] = Dyadic(1);
    return f;
}

}  // namespace bitroot

#endif
