/* Root magnitude bound for the scaling step.
 *
 * The Cauchy polynomial |A_n| x^n - sum_{i<n} |A_i| x^i has a unique positive
 * root; the first power of two 2^k that certifiably lands beyond it gives the
 * scaling exponent Gamma with  Gamma_F <= Gamma < 4 log2(n) + Gamma_F  and
 * Gamma <= tau + 1.  Evaluation is done in outward-rounded fixed-point
 * interval arithmetic on oracle approximations, so a positive verdict is a
 * proof, while a straddling interval just advances the scan.
 */
#ifndef BITROOT_ROOTBOUND_HPP
#define BITROOT_ROOTBOUND_HPP

#include "bitroot/coeffstream.hpp"

namespace bitroot {

struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

/* Coefficient enclosures of the Cauchy polynomial from rho-bit queries.
 * The leading coefficient is clamped to >= 1 (precondition |A_n| >= 1). */
inline std::vector<DyadicInterval> cauchy_poly(const CoefficientOracle& oracle, long rho) {
    long n = oracle.degree();
    const Dyadic pad(Integer(1), -rho);
    std::vector<DyadicInterval> iv(static_cast<size_t>(n) + 1);
    for (long i = 0; i < n; ++i) {
        Dyadic mag = abs(oracle.query(i, rho));
        Dyadic lo = mag - pad;
        if (lo.sign() < 0) lo = Dyadic();
        iv[static_cast<size_t>(i)] = DyadicInterval(-(mag + pad), -lo);
    }
    Dyadic lead = abs(oracle.query(n, rho));
    Dyadic lead_hi = lead + pad;
    if (lead_hi < Dyadic(1))
        throw std::invalid_argument("cauchy_poly: |A_n| >= 1 violated");
    Dyadic lead_lo = lead - pad;
    if (lead_lo < Dyadic(1)) lead_lo = Dyadic(1);
    iv[static_cast<size_t>(n)] = DyadicInterval(lead_lo, lead_hi);
    return iv;
}

inline long compute_gamma(const CoefficientOracle& oracle, long tau_hat) {
    long n = oracle.degree();
    long lead_bits = 0;
    {
        Rational lead_mag = abs(oracle.query(n, 8).to_rational()) + 2;
        lead_bits = std::max(0l, ceil_log2(lead_mag));
    }
    long extra = 0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        for (long k = 1; k <= tau_hat + 2; ++k) {
            // Aim for interval width < 1: the width of the fixed-point Horner
            // evaluation is below 2^(-rho+2) (n+1)^2 * max-term, and terms at
            // x = 2^k are below 2^(lead_bits + tau_hat + nk).
            long rho = 4 + 2 * ceil_log2(Rational(n + 1)) + lead_bits + tau_hat + n * k + extra;
            for (int widen = 0; widen < 8; ++widen) {
                std::vector<DyadicInterval> fc = cauchy_poly(oracle, rho);
                DyadicInterval val = interval_eval_poly(fc, pow2_dyadic(k), rho);
                if (!(val.width() < Dyadic(1))) {
                    rho *= 2;
                    continue;
                }
                if (val.strictly_positive()) return k;
                break;
            }
        }
        extra = extra == 0 ? 64 : extra * 2;
    }
    throw invariant_error("compute_gamma: scan never certified a positive Cauchy value");
}

/* The isolation pipeline works on the monic rescaling
 *   f(x) = F(2^(gamma+1) x) / (A_n 2^((gamma+1) n)),
 * whose roots all lie in the open disc of radius 1/2 around 0. */
struct ScaledProblem {
    CoefficientOracle oracle;
    long n = 0;
    long tau_hat = 0;
    long gamma = 0;
};

inline ScaledProblem make_scaled(const CoefficientOracle& oracle) {
    ScaledProblem p;
    p.oracle = oracle;
    p.n = oracle.degree();
    if (p.n < 2) throw std::invalid_argument("make_scaled: degree must be >= 2");
    p.tau_hat = tau_bound(oracle);
    p.gamma = compute_gamma(oracle, p.tau_hat);
    assert(p.gamma <= p.tau_hat + 1);
    return p;
}

inline DyadicPoly approx_f(const ScaledProblem& p, long rho) {
    return approx_f(p.oracle, p.gamma, p.tau_hat, rho);
}

}  // namespace bitroot

#endif
