#pragma once

#include <cmath>
#include <utility>

#include "ceresa/ball.hpp"
#include "ceresa/errors.hpp"

namespace ceresa::detail {

struct QuadratureOptions {
    Prec target_bits = 144;  // heuristic midpoint accuracy goal
    int max_level = 12;
    int inflate_log2 = 8;    // safety factor on |I_h - I_{h/2}|
};

/// Tanh-sinh quadrature of f over (0, 1). The integrand is called as
/// f(t, tc) with tc the exactly-transformed complement 1 - t, so endpoint
/// singular factors can be evaluated without cancellation. Node rounding
/// errors propagate through the ball ops; the discretization error is the
/// level-doubling estimate inflated by 2^inflate_log2 and folded into the
/// radius. `min_power` is a lower bound for the endpoint strengths
/// 1 + min exponent (integrand ~ t^e0 near 0, (1-t)^e1 near 1), used to
/// size the truncation window.
template <typename F>
BigReal tanh_sinh_unit(F&& f, double min_power, Prec wp, const QuadratureOptions& opt) {
    const double target_ln = (static_cast<double>(opt.target_bits) + 24.0) * 0.6931471805599453;
    const double u_max = std::asinh(2.0 * target_ln / (3.141592653589793 * min_power)) + 0.5;

    const BigReal pi = BigReal::pi(wp);
    const BigReal pi_half = ball::mul_2si(pi, -1);

    RawMpfr floor_mag(kRadPrec);
    mpfr_set_ui_2exp(floor_mag, 1, static_cast<long>(-opt.target_bits - 20), MPFR_RNDU);

    // one node: returns w(u) * (f(t, tc) + f(tc, t)); j = 0 handled by caller
    auto node_pair = [&](long j, long level) -> BigReal {
        const BigReal u = BigReal::dyadic(j, -level, wp);
        const BigReal g = ball::mul(pi_half, ball::sinh(u, wp), wp);
        const BigReal e = ball::exp(ball::neg(ball::mul_2si(g, 1)), wp);
        const BigReal den = ball::add_si(e, 1, wp);
        const BigReal t = ball::inv(den, wp);
        const BigReal tc = ball::div(e, den, wp);
        const BigReal w = ball::mul(ball::mul(pi, ball::cosh(u, wp), wp),
                                    ball::div(tc, den, wp), wp);
        return ball::mul(w, ball::add(f(t, tc), f(tc, t), wp), wp);
    };

    // level 0: h = 1
    const BigReal half = BigReal::dyadic(1, -1, wp);
    BigReal acc = ball::mul_2si(ball::mul(pi, f(half, half), wp), -2);  // w(0) = pi/4
    long n0 = static_cast<long>(std::ceil(u_max));
    for (long j = 1; j <= n0; ++j) acc = ball::add(acc, node_pair(j, 0), wp);
    BigReal prev = acc;

    RawMpfr diff(kRadPrec), scale(kRadPrec), tol(kRadPrec), cmag(kRadPrec);
    for (int level = 1;; ++level) {
        prev.mag_upper(scale);
        if (mpfr_cmp_d(scale.x, 1.0) > 0) {
            mpfr_mul_2si(floor_mag, scale.x, static_cast<long>(-opt.target_bits - 20), MPFR_RNDU);
        }
        BigReal odd_sum = BigReal::zero(wp);
        const long nmax = static_cast<long>(std::ceil(u_max * std::ldexp(1.0, level)));
        for (long j = 1; j <= nmax; j += 2) {
            BigReal c = node_pair(j, level);
            c.mag_upper(cmag);
            odd_sum = ball::add(odd_sum, c, wp);
            // the double-exponential tail decays monotonically once past the
            // hump; u_max already covers what the target needs
            if (mpfr_cmp(cmag.x, floor_mag.x) <= 0 && j > (2L << level)) break;
        }
        BigReal cur = ball::add(ball::mul_2si(prev, -1), ball::mul_2si(odd_sum, -level), wp);

        RawMpfr d1(kRadPrec), d2(kRadPrec);
        mpfr_sub(d1, cur.mid(), prev.mid(), MPFR_RNDU);
        mpfr_sub(d2, prev.mid(), cur.mid(), MPFR_RNDU);
        if (mpfr_cmp(d1.x, d2.x) < 0) mpfr_swap(d1, d2);
        mpfr_set(diff.x, d1.x, MPFR_RNDU);
        mpfr_mul_2si(diff, diff.x, opt.inflate_log2, MPFR_RNDU);

        cur.mag_upper(scale);
        if (mpfr_cmp_d(scale.x, 1.0) < 0) mpfr_set_d(scale, 1.0, MPFR_RNDU);
        mpfr_mul_2si(tol, scale.x, static_cast<long>(-opt.target_bits), MPFR_RNDU);

        if (mpfr_cmp(diff.x, tol.x) <= 0 || level == opt.max_level) {
            cur.rad_add(diff.x);
            // allowance for the truncated double-exponential tail
            mpfr_mul_2si(tol, scale.x, static_cast<long>(-opt.target_bits - 8), MPFR_RNDU);
            cur.rad_add(tol.x);
            if (mpfr_cmp(diff.x, tol.x) > 0 && level == opt.max_level) {
                RawMpfr loose(kRadPrec);
                mpfr_mul_2si(loose, scale.x, -std::max<long>(48, opt.target_bits / 4), MPFR_RNDU);
                if (mpfr_cmp(diff.x, loose.x) > 0)
                    throw PrecisionBallError("tanh-sinh quadrature did not converge", cur);
            }
            return cur;
        }
        prev = std::move(cur);
    }
}

} // namespace ceresa::detail
