#pragma once

#include <gmpxx.h>

#include "ceresa/ball.hpp"
#include "ceresa/bernoulli.hpp"
#include "ceresa/errors.hpp"

namespace ceresa::detail {

/// Tail of the Hurwitz zeta at a power-of-two offset:
///
///   sum_{n >= M} n^(-sigma),  sigma > 1 rational,  M = 2^log2m,
///
/// by Euler-Maclaurin:
///   M^(1-sigma)/(sigma-1) + M^(-sigma)/2
///     + sum_{j>=1} B_2j/(2j)! (sigma)_{2j-1} M^(1-sigma-2j).
/// Since d^k/dx^k x^(-sigma) keeps one sign, the remainder after j-1
/// correction terms is bounded by the j-th; that term is added to the
/// radius when the loop stops.
inline BigReal hurwitz_zeta_tail(const mpq_class& sigma, long log2m, Prec wp) {
    if (sigma <= 1) throw DomainError("hurwitz_zeta_tail requires sigma > 1");
    const BigReal ln_m = ball::mul_si(ball::log(BigReal::from_si(2, wp), wp), log2m, wp);
    auto m_pow = [&](const mpq_class& e) {  // M^e
        return ball::exp(ball::mul_q(ln_m, e, wp), wp);
    };

    const mpq_class one_minus_sigma = 1 - sigma;
    BigReal acc = ball::div(m_pow(one_minus_sigma),
                            BigReal::from_mpq(sigma - 1, wp), wp);
    acc = ball::add(acc, ball::mul_2si(m_pow(-sigma), -1), wp);

    RawMpfr target(kRadPrec), mag(kRadPrec);
    acc.mag_upper(target);
    mpfr_mul_2si(target, target, static_cast<long>(-wp - 8), MPFR_RNDU);

    // T_j = B_2j/(2j)! (sigma)_{2j-1} M^(1-sigma-2j); M^(-2) factor is exact.
    BigReal mpow = m_pow(one_minus_sigma - 2);
    mpq_class poch = sigma;  // (sigma)_{2j-1} for current j
    mpz_class fact = 2;      // (2j)!
    for (long j = 1;; ++j) {
        const mpq_class coef = bernoulli_2k(static_cast<unsigned>(j)) * poch / fact;
        BigReal term = ball::mul_q(mpow, coef, wp);
        term.mag_upper(mag);
        if (mpfr_cmp(static_cast<mpfr_srcptr>(mag), static_cast<mpfr_srcptr>(target)) <= 0 || j >= 64) {
            acc.rad_add(mag);  // classical bound: remainder <= first omitted term
            break;
        }
        acc = ball::add(acc, term, wp);
        poch *= (sigma + (2 * j - 1)) * (sigma + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
        mpow = ball::mul_2si(mpow, -2 * log2m);
    }
    return acc;
}

} // namespace ceresa::detail
