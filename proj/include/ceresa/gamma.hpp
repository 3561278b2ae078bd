#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ceresa/ball.hpp"
#include "ceresa/bernoulli.hpp"
#include "ceresa/errors.hpp"
#include "ceresa/rational.hpp"

namespace ceresa {

/// Guard bits added to every kernel evaluation on top of the requested
/// precision; absorbs accumulation across the (N-1)/2-term trace sums.
inline constexpr Prec kGuardBits = 32;

namespace detail {

/// Smallest argument at which the Stirling series can reach 2^-wp: the
/// minimal term is ~ z e^(-2 pi z), so z >= ~0.115 wp with slack.
inline long stirling_zmin(Prec wp) { return static_cast<long>((wp * 115) / 1000) + 13; }

/// log Gamma(z) for a ball z with lower bound >= stirling_zmin(wp):
/// (z - 1/2) log z - z + log(2 pi)/2 + sum_k B_2k / (2k(2k-1) z^(2k-1)).
/// For real positive z the remainder is bounded by the first omitted term.
inline BigReal log_gamma_stirling(const BigReal& z, Prec wp) {
    const BigReal lz = ball::log(z, wp);
    BigReal acc = ball::mul(ball::sub(z, BigReal::from_mpq(mpq_class(1, 2), wp), wp), lz, wp);
    acc = ball::sub(acc, z, wp);
    BigReal two_pi = ball::mul_2si(BigReal::pi(wp), 1);
    acc = ball::add(acc, ball::mul_2si(ball::log(two_pi, wp), -1), wp);

    RawMpfr target(kRadPrec), mag(kRadPrec);
    mpfr_set_ui_2exp(target, 1, static_cast<long>(-wp - 2), MPFR_RNDU);

    const BigReal u = ball::inv(z, wp);
    const BigReal u2 = ball::mul(u, u, wp);
    BigReal zpow = u;  // z^(1-2k) for the current k
    const long k_cap = 16 + static_cast<long>(3.1416 * static_cast<double>(stirling_zmin(wp)));
    for (long k = 1;; ++k) {
        if (k > k_cap) throw PrecisionError("Stirling series failed to reach target");
        const mpq_class& b = bernoulli_2k(static_cast<unsigned>(k));
        mpq_class coef = b / mpq_class(2 * k * (2 * k - 1));
        BigReal term = ball::mul_q(zpow, coef, wp);
        term.mag_upper(mag);
        if (mpfr_cmp(static_cast<mpfr_srcptr>(mag), static_cast<mpfr_srcptr>(target)) <= 0) {
            // remainder of the enveloping series: bounded by the next term
            acc.rad_add(mag);
            break;
        }
        acc = ball::add(acc, term, wp);
        zpow = ball::mul(zpow, u2, wp);
    }
    return acc;
}

} // namespace detail

/// Gamma of a strictly positive ball. Argument-shifts into the Stirling
/// region, then divides the shift factors back out.
inline BigReal gamma_ball(const BigReal& x, Prec prec) {
    const Prec wp = prec + kGuardBits;
    detail::RawMpfr lo(detail::kRadPrec);
    x.lower(lo);
    if (mpfr_sgn(static_cast<mpfr_srcptr>(lo)) <= 0)
        throw DomainError("gamma requires a strictly positive argument");

    const long zmin = detail::stirling_zmin(wp);
    long shift = 0;
    if (mpfr_cmp_si(static_cast<mpfr_srcptr>(lo), zmin) < 0) {
        detail::RawMpfr fl(64);
        mpfr_floor(fl, lo);
        shift = zmin - mpfr_get_si(fl, MPFR_RNDN);
    }
    const BigReal z = shift == 0 ? x : ball::add_si(x, shift, wp);
    BigReal g = ball::exp(detail::log_gamma_stirling(z, wp), wp);
    if (shift > 0) {
        BigReal denom = x;
        for (long i = 1; i < shift; ++i) denom = ball::mul(denom, ball::add_si(x, i, wp), wp);
        g = ball::div(g, denom, wp);
    }
    return g;
}

/// Gamma(x) for rational x > 0 with the error radius covering truncation,
/// argument representation and rounding at the stated precision.
inline BigReal gamma_rational(const Rational& x, Prec prec) {
    if (!x.is_positive()) throw DomainError("gamma_rational: argument must be positive, got " + x.str());
    return gamma_ball(BigReal::from_rational(x, prec + kGuardBits), prec);
}

namespace detail {

/// Gamma at a nonzero rational that may be negative (used by the 2F1
/// connection formula): recurse Gamma(q) = Gamma(q+1)/q below zero.
inline BigReal gamma_rational_signed(const mpq_class& q, Prec prec) {
    if (q > 0) return gamma_rational(Rational::from_mpq(q), prec);
    if (q.get_den() == 1) throw DomainError("gamma pole at " + q.get_str());
    const Prec wp = prec + kGuardBits;
    mpq_class a(q);
    BigReal denom = BigReal::one(wp);
    while (a <= 0) {
        denom = ball::mul(denom, BigReal::from_mpq(a, wp), wp);
        a += 1;
    }
    return ball::div(gamma_rational(Rational::from_mpq(a), prec), denom, wp);
}

} // namespace detail

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b), a, b > 0.
inline BigReal beta_rational(const Rational& a, const Rational& b, Prec prec) {
    if (!a.is_positive() || !b.is_positive())
        throw DomainError("beta_rational: arguments must be positive");
    const Prec wp = prec + kGuardBits;
    return ball::div(ball::mul(gamma_rational(a, prec), gamma_rational(b, prec), wp),
                     gamma_rational(a + b, prec), wp);
}

/// Rising factorial (alpha)_n by direct product; exact up to one rounding.
inline BigReal pochhammer(const Rational& alpha, std::int64_t n, Prec prec) {
    if (n < 0) throw DomainError("pochhammer: n must be nonnegative");
    mpq_class acc(1);
    mpq_class a = alpha.to_mpq();
    for (std::int64_t i = 0; i < n; ++i) {
        acc *= a;
        a += 1;
    }
    return BigReal::from_mpq(acc, prec + kGuardBits);
}

/// Memo of Gamma(p/N) balls at one (N, prec); cuts repeated kernel calls
/// across the trace-sum terms. Not thread-safe; use one per computation.
class GammaCache {
public:
    GammaCache(long n, Prec prec) : n_(n), prec_(prec) {}
    const BigReal& get(long p) {
        auto it = memo_.find(p);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(p, gamma_rational(Rational(p, n_), prec_)).first->second;
    }
    long modulus() const { return n_; }
    Prec prec() const { return prec_; }

private:
    long n_;
    Prec prec_;
    std::map<long, BigReal> memo_;
};

/// Gamma^N ratio: prod Gamma(a_i/N) / prod Gamma(b_j/N), entries in (0, N).
inline BigReal gamma_ratio_n(const std::vector<long>& nums, const std::vector<long>& dens,
                             long n, Prec prec, GammaCache* cache = nullptr) {
    if (n < 4) throw DomainError("gamma_ratio_n: N must be >= 4");
    for (long v : nums)
        if (v <= 0 || v >= n) throw DomainError("gamma_ratio_n: entry out of (0,N)");
    for (long v : dens)
        if (v <= 0 || v >= n) throw DomainError("gamma_ratio_n: entry out of (0,N)");
    const Prec wp = prec + kGuardBits;
    auto factor = [&](long p) -> BigReal {
        if (cache && cache->modulus() == n && cache->prec() == prec) return cache->get(p);
        return gamma_rational(Rational(p, n), prec);
    };
    BigReal acc = BigReal::one(wp);
    for (long v : nums) acc = ball::mul(acc, factor(v), wp);
    for (long v : dens) acc = ball::div(acc, factor(v), wp);
    return acc;
}

/// sin(pi q) as a ball; q rational.
inline BigReal sin_pi(const mpq_class& q, Prec prec) {
    const Prec wp = prec + kGuardBits;
    return ball::sin(ball::mul_q(BigReal::pi(wp), q, wp), wp);
}

} // namespace ceresa
