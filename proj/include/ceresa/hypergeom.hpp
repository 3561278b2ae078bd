#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ceresa/ball.hpp"
#include "ceresa/errors.hpp"
#include "ceresa/gamma.hpp"
#include "ceresa/hurwitz.hpp"
#include "ceresa/rational.hpp"
#include "ceresa/tanh_sinh.hpp"
#include "ceresa/taylor_model.hpp"

namespace ceresa {

/// Parameters of 3F2(a1, a2, a3; b1, b2; 1).
struct Hyp3F2Params {
    Rational a1, a2, a3;
    Rational b1, b2;

    /// Convergence margin s = b1 + b2 - a1 - a2 - a3; the unit-argument
    /// series converges iff s > 0.
    mpq_class margin() const {
        return b1.to_mpq() + b2.to_mpq() - a1.to_mpq() - a2.to_mpq() - a3.to_mpq();
    }
    void validate() const {
        if (b1.is_nonpositive_integer() || b2.is_nonpositive_integer())
            throw DomainError("3F2: lower parameter is a nonpositive integer");
        if (a1.num() < 0 || a2.num() < 0 || a3.num() < 0 || !b1.is_positive() || !b2.is_positive())
            throw DomainError("3F2: parameters must be nonnegative (uppers) / positive (lowers)");
    }
    bool has_zero_numerator() const { return a1.is_zero() || a2.is_zero() || a3.is_zero(); }
    std::string str() const {
        return "(" + a1.str() + "," + a2.str() + "," + a3.str() + ";" + b1.str() + "," + b2.str() + ")";
    }
};

enum class HypMethod { Series, Quadrature, Both };

inline const char* to_string(HypMethod m) {
    switch (m) {
        case HypMethod::Series: return "series";
        case HypMethod::Quadrature: return "quadrature";
        default: return "both";
    }
}

namespace detail {

// ---------------------------------------------------------------------------
// 2F1
// ---------------------------------------------------------------------------

/// Direct series for 2F1(a, b; c; x) with a rigorous geometric tail bound;
/// requires an upper bound of |x| comfortably below 1 (used for |x| <~ 0.56)
/// and c > 0.
inline BigReal hyp2f1_series(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                             const BigReal& x, Prec wp) {
    if (c <= 0 && c.get_den() == 1) throw DomainError("2F1: lower parameter pole");
    RawMpfr xup(kRadPrec);
    x.mag_upper(xup);

    const long n1 = 16 + static_cast<long>(8.0 * std::max({std::fabs(mpq_class(abs(a)).get_d()),
                                                           std::fabs(mpq_class(abs(b)).get_d()), 1.0}));
    // ratio bound for n >= n1: |x| (1+|a|/n)(1+|b|/n)
    mpq_class kappa = (1 + abs(a) / n1) * (1 + abs(b) / n1);
    RawMpfr rbar(kRadPrec), u(kRadPrec);
    mpfr_set_q(rbar, kappa.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(rbar, rbar.x, xup.x, MPFR_RNDU);
    if (mpfr_cmp_d(rbar.x, 0.984375) >= 0)
        throw DomainError("2F1 series: argument too close to 1");
    RawMpfr geom(kRadPrec);  // rbar / (1 - rbar)
    mpfr_ui_sub(geom, 1, rbar.x, MPFR_RNDD);
    mpfr_div(geom, rbar.x, geom.x, MPFR_RNDU);

    BigReal term = BigReal::one(wp);
    BigReal sum = term;
    RawMpfr tmag(kRadPrec), smag(kRadPrec), tail(kRadPrec);
    for (long n = 0;; ++n) {
        if (n > 200000) throw PrecisionBallError("2F1 series: term budget exhausted", sum);
        const mpq_class num = (a + n) * (b + n);
        const mpq_class den = (c + n) * (n + 1);
        term = ball::mul(ball::mul_q(term, num / den, wp), x, wp);
        sum = ball::add(sum, term, wp);
        if (n + 1 < n1) continue;
        term.mag_upper(tmag);
        mpfr_mul(tail, tmag.x, geom.x, MPFR_RNDU);
        sum.mag_upper(smag);
        mpfr_mul_2si(smag, smag.x, static_cast<long>(-wp - 4), MPFR_RNDU);
        if (mpfr_cmp(tail.x, smag.x) <= 0) {
            sum.rad_add(tail.x);
            return sum;
        }
    }
}

/// Linear transformation of 2F1 to argument z = 1 - x, for z the exactly
/// known complement. Requires d = c - a - b not an integer.
inline BigReal hyp2f1_connection(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                                 const BigReal& z, Prec wp) {
    const mpq_class d = c - a - b;
    if (d.get_den() == 1) throw DomainError("2F1 connection: c-a-b integer unsupported");
    const BigReal g_c = gamma_rational_signed(c, wp);
    const BigReal f1 = ball::div(ball::mul(g_c, gamma_rational_signed(d, wp), wp),
                                 ball::mul(gamma_rational_signed(c - a, wp),
                                           gamma_rational_signed(c - b, wp), wp), wp);
    const BigReal f2 = ball::div(ball::mul(g_c, gamma_rational_signed(-d, wp), wp),
                                 ball::mul(gamma_rational_signed(a, wp),
                                           gamma_rational_signed(b, wp), wp), wp);
    const BigReal s1 = hyp2f1_series(a, b, a + b - c + 1, z, wp);
    const BigReal s2 = hyp2f1_series(c - a, c - b, d + 1, z, wp);
    const BigReal zd = ball::exp(ball::mul_q(ball::log(z, wp), d, wp), wp);
    return ball::add(ball::mul(f1, s1, wp), ball::mul(ball::mul(f2, zd, wp), s2, wp), wp);
}

/// Many-point 2F1 evaluator for quadrature nodes in (0, 1): precomputes
/// coefficient tables (direct series and both connection series) and the
/// connection Gamma factors once, then evaluates each node by Horner with a
/// rigorous geometric bound on the truncated tail.
class Hyp2F1UnitEval {
public:
    Hyp2F1UnitEval(const mpq_class& a, const mpq_class& b, const mpq_class& c, Prec wp)
        : wp_(wp), d_(c - a - b), f1_(wp), f2_(wp) {
        if (d_.get_den() == 1)
            throw DomainError("2F1 node evaluator: c-a-b integer unsupported");
        build(direct_, a, b, c);
        build(conn1_, a, b, 1 - d_);
        build(conn2_, c - a, c - b, 1 + d_);
        const BigReal g_c = gamma_rational_signed(c, wp);
        f1_ = ball::div(ball::mul(g_c, gamma_rational_signed(d_, wp), wp),
                        ball::mul(gamma_rational_signed(c - a, wp),
                                  gamma_rational_signed(c - b, wp), wp), wp);
        f2_ = ball::div(ball::mul(g_c, gamma_rational_signed(-d_, wp), wp),
                        ball::mul(gamma_rational_signed(a, wp),
                                  gamma_rational_signed(b, wp), wp), wp);
    }

    /// 2F1(a, b; c; t), tc the exactly-transformed complement.
    BigReal eval(const BigReal& t, const BigReal& tc) const {
        if (mpfr_cmp_d(t.mid(), 0.5625) <= 0) return horner(direct_, t);
        const BigReal zd = ball::exp(ball::mul_q(ball::log(tc, wp_), d_, wp_), wp_);
        return ball::add(ball::mul(f1_, horner(conn1_, tc), wp_),
                         ball::mul(ball::mul(f2_, zd, wp_), horner(conn2_, tc), wp_), wp_);
    }

private:
    struct Tab {
        std::vector<BigReal> coef;  // c_0 .. c_L
        BigReal next;               // c_{L+1}, for the tail bound
        mpq_class kappa;            // sup ratio bound factor past L
    };

    void build(Tab& tab, const mpq_class& a, const mpq_class& b, const mpq_class& c) {
        if (c <= 0 && c.get_den() == 1) throw DomainError("2F1: lower parameter pole");
        BigReal coef = BigReal::one(wp_);
        RawMpfr tpow(kRadPrec), mag(kRadPrec), prod(kRadPrec);
        mpfr_set_ui(tpow, 1, MPFR_RNDU);
        const long cap = 8 * wp_;
        for (long n = 0;; ++n) {
            if (n > cap) throw PrecisionError("2F1 table: term budget exhausted");
            tab.coef.push_back(coef);
            const mpq_class ratio = ((a + n) * (b + n)) / ((c + n) * (n + 1));
            coef = ball::mul_q(coef, ratio, wp_);
            mpfr_mul_d(tpow, tpow.x, 0.58, MPFR_RNDU);  // covers |x| <= 0.5703
            coef.mag_upper(mag);
            mpfr_mul(prod, mag.x, tpow.x, MPFR_RNDU);
            if (n > 8 && mpfr_cmp_ui_2exp(prod.x, 1, static_cast<long>(-wp_ - 10)) <= 0) break;
        }
        tab.next = coef;
        const long l = static_cast<long>(tab.coef.size());
        tab.kappa = (1 + abs(a) / l) * (1 + abs(b) / l);
    }

    BigReal horner(const Tab& tab, const BigReal& x) const {
        BigReal acc = tab.coef.back();
        for (auto it = tab.coef.rbegin() + 1; it != tab.coef.rend(); ++it)
            acc = ball::add(ball::mul(acc, x, wp_), *it, wp_);
        // tail: |c_{L+1}| xup^{L+1} / (1 - kappa xup)
        RawMpfr xup(kRadPrec), rbar(kRadPrec), rem(kRadPrec);
        x.mag_upper(xup);
        mpfr_set_q(rbar, tab.kappa.get_mpq_t(), MPFR_RNDU);
        mpfr_mul(rbar, rbar.x, xup.x, MPFR_RNDU);
        if (mpfr_cmp_d(rbar.x, 0.984375) >= 0)
            throw DomainError("2F1 node evaluator: argument too close to 1");
        mpfr_ui_sub(rbar, 1, rbar.x, MPFR_RNDD);
        mpfr_pow_ui(rem, xup.x, static_cast<unsigned long>(tab.coef.size()), MPFR_RNDU);
        mpfr_div(rem, rem.x, rbar.x, MPFR_RNDU);
        RawMpfr nm(kRadPrec);
        tab.next.mag_upper(nm);
        mpfr_mul(rem, rem.x, nm.x, MPFR_RNDU);
        acc.rad_add(rem.x);
        return acc;
    }

    Prec wp_;
    mpq_class d_;
    BigReal f1_, f2_;
    Tab direct_, conn1_, conn2_;
};

} // namespace detail

/// 2F1(a, b; c; x) for x in [0, 1]; at x = 1 uses the Gauss closed form
/// Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)) (requires c - a - b > 0).
inline BigReal hyp2f1(const Rational& a, const Rational& b, const Rational& c,
                      const BigReal& x, Prec prec) {
    if (c.is_nonpositive_integer()) throw DomainError("2F1: lower parameter pole");
    const Prec wp = prec + kGuardBits;
    const mpq_class aq = a.to_mpq(), bq = b.to_mpq(), cq = c.to_mpq();

    detail::RawMpfr lo(detail::kRadPrec), hi(detail::kRadPrec);
    x.lower(lo);
    x.upper(hi);
    if (mpfr_sgn(static_cast<mpfr_srcptr>(lo)) < 0) throw DomainError("2F1: x below 0 unsupported");
    if (mpfr_zero_p(x.mid()) && x.exact()) return BigReal::one(wp);

    const bool exactly_one = x.exact() && mpfr_cmp_ui(x.mid(), 1) == 0;
    if (exactly_one) {
        const mpq_class d = cq - aq - bq;
        if (d <= 0) throw DomainError("2F1 at 1 requires c - a - b > 0");
        return ball::div(ball::mul(detail::gamma_rational_signed(cq, wp),
                                   detail::gamma_rational_signed(d, wp), wp),
                         ball::mul(detail::gamma_rational_signed(cq - aq, wp),
                                   detail::gamma_rational_signed(cq - bq, wp), wp), wp);
    }
    if (mpfr_cmp_ui(static_cast<mpfr_srcptr>(hi), 1) >= 0)
        throw DomainError("2F1: x interval reaches 1");
    if (mpfr_cmp_d(x.mid(), 0.5625) <= 0) return detail::hyp2f1_series(aq, bq, cq, x, wp);
    const BigReal z = ball::sub(BigReal::one(wp), x, wp);
    return detail::hyp2f1_connection(aq, bq, cq, z, wp);
}

namespace detail {

// ---------------------------------------------------------------------------
// 3F2 at unit argument: series + rigorous asymptotic tail
// ---------------------------------------------------------------------------

/// Tail sum_{n >= M} t_n as taylor-model coefficients against Hurwitz zeta
/// tails: t_n = A n^-(s+1) F(1/n) with F built from the Stirling expansion.
inline BigReal hyp3f2_tail(const Hyp3F2Params& p, const mpq_class& s,
                           long mu, std::size_t deg, Prec wp) {
    const long log2w0 = -mu;
    const std::vector<mpq_class> plus = {p.a1.to_mpq(), p.a2.to_mpq(), p.a3.to_mpq()};
    const std::vector<mpq_class> minus = {p.b1.to_mpq(), p.b2.to_mpq(), mpq_class(1)};

    RawMpfr srem(kRadPrec);
    TaylorModel corr(deg, log2w0, wp);
    corr.coeff(0) = BigReal::from_mpq(s + 1, wp);
    auto block = [&](const mpq_class& c) -> TaylorModel {
        TaylorModel blk = tm_ln1p_over_w(c, deg, log2w0, wp);
        blk = tm_add(blk, tm_scale_q(tm_ln1p(c, deg, log2w0, wp), c - mpq_class(1, 2)));
        // Stirling part: sum_k B_2k/(2k(2k-1)) y^(2k-1), y = w/(1+cw); for
        // real z = n + c >= M the remainder is below the first omitted term.
        TaylorModel y = tm_mul_w(tm_geom_inv(c, deg, log2w0, wp));
        const TaylorModel y2 = tm_mul(y, y);
        TaylorModel pw = y;
        for (unsigned k = 1;; ++k) {
            if (k > 512) throw PrecisionError("3F2 tail: Stirling loop stalled");
            const mpq_class coef = bernoulli_2k(k) / mpq_class(2 * k * (2 * k - 1));
            blk = tm_add(blk, tm_scale_q(pw, coef));
            const mpq_class next = abs(bernoulli_2k(k + 1) / mpq_class((2 * k + 2) * (2 * k + 1)));
            mpfr_set_q(srem, next.get_mpq_t(), MPFR_RNDU);
            mpfr_mul_2si(srem, srem.x, -mu * (2 * static_cast<long>(k) + 1), MPFR_RNDU);
            if (mpfr_cmp_ui_2exp(srem.x, 1, static_cast<long>(-wp - 16)) <= 0) {
                blk.err_add(srem.x);
                break;
            }
            pw = tm_mul(pw, y2);
        }
        return blk;
    };
    for (const auto& c : plus) corr = tm_add(corr, block(c));
    for (const auto& c : minus) corr = tm_sub(corr, block(c));

    const TaylorModel f = tm_exp(corr, static_cast<long>(-wp - 16));

    BigReal tail = BigReal::zero(wp);
    for (std::size_t d2 = 0; d2 <= deg; ++d2) {
        const BigReal zeta = hurwitz_zeta_tail(s + 1 + static_cast<long>(d2), mu, wp);
        tail = ball::add(tail, ball::mul(f.coeff(d2), zeta, wp), wp);
        if (d2 == 0) {  // remainder of the model against the widest zeta
            RawMpfr zm(kRadPrec), em(kRadPrec);
            zeta.mag_upper(zm);
            mpfr_mul(em, zm.x, f.err_bound(), MPFR_RNDU);
            tail.rad_add(em.x);
        }
    }
    const BigReal a_const = ball::div(
        ball::mul(gamma_rational(p.b1, wp), gamma_rational(p.b2, wp), wp),
        ball::mul(ball::mul(gamma_rational(p.a1, wp), gamma_rational(p.a2, wp), wp),
                  gamma_rational(p.a3, wp), wp), wp);
    return ball::mul(a_const, tail, wp);
}

} // namespace detail

/// 3F2 at unit argument by direct summation to M = 2^mu terms plus the
/// rigorously bounded asymptotic tail. err covers rounding and tail.
inline BigReal hyp3f2_unit_series(const Hyp3F2Params& p, Prec prec) {
    p.validate();
    if (p.has_zero_numerator()) return BigReal::one(prec + kGuardBits);
    const mpq_class s = p.margin();
    if (s <= 0) throw DivergenceError("3F2 at unit argument diverges: margin " + mpq_class(s).get_str());

    const Prec wp = prec + kGuardBits;
    const double cmax = std::max({p.a1.to_double(), p.a2.to_double(), p.a3.to_double(),
                                  p.b1.to_double(), p.b2.to_double(), 1.0});
    long mu = 6;
    while ((1L << mu) < 4 * wp || (1L << mu) < static_cast<long>(32.0 * cmax)) ++mu;
    const long m_cut = 1L << mu;

    const mpq_class qa1 = p.a1.to_mpq(), qa2 = p.a2.to_mpq(), qa3 = p.a3.to_mpq();
    const mpq_class qb1 = p.b1.to_mpq(), qb2 = p.b2.to_mpq();
    BigReal term = BigReal::one(wp);
    BigReal sum = term;
    for (long n = 1; n < m_cut; ++n) {
        const long k = n - 1;
        const mpq_class ratio = ((qa1 + k) * (qa2 + k) * (qa3 + k)) /
                                ((qb1 + k) * (qb2 + k) * n);
        term = ball::mul_q(term, ratio, wp);
        sum = ball::add(sum, term, wp);
    }

    const double denom_bits = static_cast<double>(mu) - std::log2(cmax + 1.0) - 1.0;
    if (denom_bits < 3.0) throw PrecisionError("3F2 series: parameters too large for tail model");
    const auto deg = static_cast<std::size_t>(static_cast<double>(wp + 20) / denom_bits) + 2;
    const BigReal tail = detail::hyp3f2_tail(p, s, mu, deg, wp);
    BigReal result = ball::add(sum, tail, wp);

    // the kernel contract: err within 2^(-prec+4) relative
    detail::RawMpfr mag(detail::kRadPrec), tol(detail::kRadPrec);
    result.mag_upper(mag);
    mpfr_mul_2si(tol, mag.x, static_cast<long>(-prec + 4), MPFR_RNDU);
    if (mpfr_cmp(result.rad(), tol.x) > 0)
        throw PrecisionBallError("3F2 series: requested precision unreachable", result);
    return result;
}

/// 3F2 at unit argument through the Euler integral
///   [sin(pi a3)/pi] * int_0^1 t^(a3-1) (1-t)^(-a3) 2F1(a1, a2; b1; t) dt,
/// evaluated by tanh-sinh quadrature. Independent of the series method;
/// the discretization error model is heuristic (doubling estimate, inflated)
/// and folded into err.
inline BigReal hyp3f2_unit_quadrature(const Hyp3F2Params& p, Prec prec) {
    p.validate();
    if (p.has_zero_numerator()) return BigReal::one(prec + kGuardBits);
    const mpq_class s = p.margin();
    if (s <= 0) throw DivergenceError("3F2 at unit argument diverges");
    if (p.b2 != Rational(1) || !(p.a3 > Rational(0) && p.a3 < Rational(1)))
        throw DomainError("3F2 quadrature: requires b2 = 1 and a3 in (0,1)");

    const Prec tb = std::min<Prec>(prec + 8, 144);
    const Prec wp = tb + 48;
    const mpq_class a1 = p.a1.to_mpq(), a2 = p.a2.to_mpq(), b1 = p.b1.to_mpq();
    const mpq_class a3 = p.a3.to_mpq();
    const mpq_class excess = b1 - a1 - a2;
    const mpq_class e1 = excess < 0 ? mpq_class(-a3 + excess) : mpq_class(-a3);  // exponent at t = 1
    const double min_power = std::min(mpq_class(a3).get_d(), mpq_class(1 + e1).get_d());

    const mpq_class pow0 = a3 - 1;
    const detail::Hyp2F1UnitEval f21(a1, a2, b1, wp);
    auto integrand = [&](const BigReal& t, const BigReal& tc) -> BigReal {
        BigReal v = ball::exp(ball::mul_q(ball::log(t, wp), pow0, wp), wp);
        v = ball::mul(v, ball::exp(ball::mul_q(ball::log(tc, wp), -a3, wp), wp), wp);
        return ball::mul(v, f21.eval(t, tc), wp);
    };
    detail::QuadratureOptions opt;
    opt.target_bits = tb;
    const BigReal integral = detail::tanh_sinh_unit(integrand, min_power, wp, opt);
    const BigReal pref = ball::div(sin_pi(a3, wp), BigReal::pi(wp), wp);
    return ball::mul(pref, integral, wp);
}

/// Method-dispatched 3F2 at unit argument. With Both, the two routes must
/// intersect; the intersection (tightest certified enclosure) is returned and
/// disjoint balls raise InconsistencyError.
inline BigReal hyp3f2_unit(const Hyp3F2Params& p, Prec prec, HypMethod method) {
    switch (method) {
        case HypMethod::Series: return hyp3f2_unit_series(p, prec);
        case HypMethod::Quadrature: return hyp3f2_unit_quadrature(p, prec);
        default: break;
    }
    const BigReal a = hyp3f2_unit_series(p, prec);
    const BigReal b = hyp3f2_unit_quadrature(p, prec);
    auto both = ball::intersect(a, b, std::max(a.prec(), b.prec()));
    if (!both)
        throw InconsistencyError("3F2 dual-method balls are disjoint at " + p.str());
    return *both;
}

} // namespace ceresa
