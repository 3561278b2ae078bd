#pragma once

#include <vector>

#include <gmpxx.h>

#include "ceresa/ball.hpp"
#include "ceresa/bernoulli.hpp"
#include "ceresa/errors.hpp"

namespace ceresa::detail {

/// Polynomial in w with ball coefficients plus an interval remainder bound,
/// valid on |w| <= w0 = 2^log2w0: represents every function f with
/// |f(w) - sum c_i w^i| <= err_bound on the domain. Composition keeps the
/// enclosure property as long as every constructor brackets its expansion,
/// which is how the series tail below stays rigorous.
class TaylorModel {
public:
    TaylorModel(std::size_t deg, long log2w0, Prec wp)
        : wp_(wp), log2w0_(log2w0), c_(deg + 1, BigReal::zero(wp)) {
        mpfr_init2(err_, kRadPrec);
        mpfr_set_zero(err_, 1);
    }
    TaylorModel(const TaylorModel& o) : wp_(o.wp_), log2w0_(o.log2w0_), c_(o.c_) {
        mpfr_init2(err_, kRadPrec);
        mpfr_set(err_, o.err_, MPFR_RNDU);
    }
    TaylorModel(TaylorModel&& o) noexcept
        : wp_(o.wp_), log2w0_(o.log2w0_), c_(std::move(o.c_)) {
        mpfr_init2(err_, kRadPrec);
        mpfr_swap(err_, o.err_);
    }
    TaylorModel& operator=(const TaylorModel& o) {
        if (this != &o) {
            wp_ = o.wp_;
            log2w0_ = o.log2w0_;
            c_ = o.c_;
            mpfr_set(err_, o.err_, MPFR_RNDU);
        }
        return *this;
    }
    TaylorModel& operator=(TaylorModel&& o) noexcept {
        wp_ = o.wp_;
        log2w0_ = o.log2w0_;
        c_ = std::move(o.c_);
        mpfr_swap(err_, o.err_);
        return *this;
    }
    ~TaylorModel() { mpfr_clear(err_); }

    std::size_t degree() const { return c_.size() - 1; }
    Prec wp() const { return wp_; }
    long log2w0() const { return log2w0_; }
    const BigReal& coeff(std::size_t i) const { return c_[i]; }
    BigReal& coeff(std::size_t i) { return c_[i]; }
    mpfr_srcptr err_bound() const { return err_; }

    void err_add(mpfr_srcptr e) { mpfr_add(err_, err_, e, MPFR_RNDU); }
    void err_add_2exp(long e) {
        RawMpfr u(kRadPrec);
        mpfr_set_ui_2exp(u, 1, e, MPFR_RNDU);
        mpfr_add(err_, err_, u.x, MPFR_RNDU);
    }

    /// Upper bound of sum |c_i| w0^i (the polynomial part's range).
    void poly_range(mpfr_ptr out) const {
        mpfr_set_zero(out, 1);
        RawMpfr m(kRadPrec);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i].mag_upper(m);
            mpfr_mul_2si(m, m.x, static_cast<long>(i) * log2w0_, MPFR_RNDU);
            mpfr_add(out, out, m.x, MPFR_RNDU);
        }
    }
    /// Upper bound of |f| over the domain, remainder included.
    void range(mpfr_ptr out) const {
        poly_range(out);
        mpfr_add(out, out, err_, MPFR_RNDU);
    }

private:
    Prec wp_;
    long log2w0_;
    std::vector<BigReal> c_;
    mpfr_t err_;  // kRadPrec, RNDU
};

inline TaylorModel tm_add(const TaylorModel& a, const TaylorModel& b) {
    TaylorModel r(a.degree(), a.log2w0(), a.wp());
    for (std::size_t i = 0; i <= a.degree(); ++i)
        r.coeff(i) = ball::add(a.coeff(i), b.coeff(i), a.wp());
    r.err_add(a.err_bound());
    r.err_add(b.err_bound());
    return r;
}

inline TaylorModel tm_sub(const TaylorModel& a, const TaylorModel& b) {
    TaylorModel r(a.degree(), a.log2w0(), a.wp());
    for (std::size_t i = 0; i <= a.degree(); ++i)
        r.coeff(i) = ball::sub(a.coeff(i), b.coeff(i), a.wp());
    r.err_add(a.err_bound());
    r.err_add(b.err_bound());
    return r;
}

inline TaylorModel tm_scale(const TaylorModel& a, const BigReal& s) {
    TaylorModel r(a.degree(), a.log2w0(), a.wp());
    for (std::size_t i = 0; i <= a.degree(); ++i)
        r.coeff(i) = ball::mul(a.coeff(i), s, a.wp());
    RawMpfr m(kRadPrec), u(kRadPrec);
    s.mag_upper(m);
    mpfr_mul(u, a.err_bound(), m.x, MPFR_RNDU);
    r.err_add(u.x);
    return r;
}

inline TaylorModel tm_scale_q(const TaylorModel& a, const mpq_class& q) {
    return tm_scale(a, BigReal::from_mpq(q, a.wp()));
}

/// Fixed-size array of kRadPrec upper-bound scalars.
class MagVec {
public:
    explicit MagVec(std::size_t n) : v_(n) {
        for (auto& m : v_) {
            mpfr_init2(&m, kRadPrec);
            mpfr_set_zero(&m, 1);
        }
    }
    ~MagVec() {
        for (auto& m : v_) mpfr_clear(&m);
    }
    MagVec(const MagVec&) = delete;
    MagVec& operator=(const MagVec&) = delete;
    mpfr_ptr operator[](std::size_t i) { return &v_[i]; }

private:
    std::vector<__mpfr_struct> v_;
};

inline TaylorModel tm_mul(const TaylorModel& a, const TaylorModel& b) {
    const std::size_t d = a.degree();
    const Prec wp = a.wp();
    TaylorModel r(d, a.log2w0(), wp);
    for (std::size_t i = 0; i <= d; ++i) {
        if (mpfr_zero_p(a.coeff(i).mid()) && a.coeff(i).exact()) continue;
        for (std::size_t j = 0; i + j <= d; ++j)
            r.coeff(i + j) = ball::add(r.coeff(i + j), ball::mul(a.coeff(i), b.coeff(j), wp), wp);
    }
    // scaled magnitudes |c_i| w0^i; truncated cross products i+j > d spill
    // into the remainder bound
    RawMpfr u(kRadPrec), spill(kRadPrec);
    MagVec mags_a(d + 1), mags_b(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        a.coeff(i).mag_upper(mags_a[i]);
        mpfr_mul_2si(mags_a[i], mags_a[i], static_cast<long>(i) * a.log2w0(), MPFR_RNDU);
        b.coeff(i).mag_upper(mags_b[i]);
        mpfr_mul_2si(mags_b[i], mags_b[i], static_cast<long>(i) * a.log2w0(), MPFR_RNDU);
    }
    mpfr_set_zero(spill, 1);
    for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t j = d - i + 1; j <= d; ++j) {
            mpfr_mul(u, mags_a[i], mags_b[j], MPFR_RNDU);
            mpfr_add(spill, spill, u.x, MPFR_RNDU);
        }
    r.err_add(spill.x);
    // cross terms: |Pa| eb + |Pb| ea + ea eb
    RawMpfr pra(kRadPrec), prb(kRadPrec);
    a.poly_range(pra);
    b.poly_range(prb);
    mpfr_mul(u, pra.x, b.err_bound(), MPFR_RNDU);
    r.err_add(u.x);
    mpfr_mul(u, prb.x, a.err_bound(), MPFR_RNDU);
    r.err_add(u.x);
    mpfr_mul(u, a.err_bound(), b.err_bound(), MPFR_RNDU);
    r.err_add(u.x);
    return r;
}

/// Multiply by the monomial w (coefficients shift up one slot).
inline TaylorModel tm_mul_w(const TaylorModel& a) {
    const std::size_t d = a.degree();
    TaylorModel r(d, a.log2w0(), a.wp());
    for (std::size_t i = 0; i + 1 <= d; ++i) r.coeff(i + 1) = a.coeff(i);
    RawMpfr u(kRadPrec);
    a.coeff(d).mag_upper(u);  // dropped top term c_d w^(d+1)
    mpfr_mul_2si(u, u.x, (static_cast<long>(d) + 1) * a.log2w0(), MPFR_RNDU);
    r.err_add(u.x);
    mpfr_mul_2si(u, a.err_bound(), a.log2w0(), MPFR_RNDU);
    r.err_add(u.x);
    return r;
}

namespace tm_detail {

/// |c| w0 as an upper bound; requires it < 1/2 for the geometric remainders.
inline void abs_c_w0(const mpq_class& c, long log2w0, mpfr_ptr out) {
    mpfr_set_q(out, mpq_class(abs(c)).get_mpq_t(), MPFR_RNDU);
    mpfr_mul_2si(out, out, log2w0, MPFR_RNDU);
    if (mpfr_cmp_d(out, 0.5) >= 0)
        throw PrecisionError("taylor model domain too wide for parameter");
}

/// (|c| w0)^(d+1) / (1 - |c| w0), the shared geometric remainder shape.
inline void geom_rem(const mpq_class& c, long log2w0, std::size_t d, mpfr_ptr out) {
    RawMpfr x(kRadPrec), den(kRadPrec);
    abs_c_w0(c, log2w0, x);
    mpfr_ui_sub(den, 1, x.x, MPFR_RNDD);
    mpfr_pow_ui(out, x.x, static_cast<unsigned long>(d + 1), MPFR_RNDU);
    mpfr_div(out, out, den.x, MPFR_RNDU);
}

} // namespace tm_detail

/// (1 + c w)^(-1) on the domain.
inline TaylorModel tm_geom_inv(const mpq_class& c, std::size_t deg, long log2w0, Prec wp) {
    TaylorModel r(deg, log2w0, wp);
    mpq_class pw(1);
    for (std::size_t i = 0; i <= deg; ++i) {
        r.coeff(i) = BigReal::from_mpq(pw, wp);
        pw *= -c;
    }
    RawMpfr rem(kRadPrec);
    tm_detail::geom_rem(c, log2w0, deg, rem);
    r.err_add(rem.x);
    return r;
}

/// log(1 + c w) on the domain.
inline TaylorModel tm_ln1p(const mpq_class& c, std::size_t deg, long log2w0, Prec wp) {
    TaylorModel r(deg, log2w0, wp);
    mpq_class pw = c;
    for (std::size_t i = 1; i <= deg; ++i) {
        r.coeff(i) = BigReal::from_mpq((i % 2 == 1 ? pw : -pw) / static_cast<long>(i), wp);
        pw *= c;
    }
    RawMpfr rem(kRadPrec);
    tm_detail::geom_rem(c, log2w0, deg, rem);
    r.err_add(rem.x);
    return r;
}

/// log(1 + c w) / w on the domain (entire in w).
inline TaylorModel tm_ln1p_over_w(const mpq_class& c, std::size_t deg, long log2w0, Prec wp) {
    TaylorModel r(deg, log2w0, wp);
    mpq_class pw = c;
    for (std::size_t i = 0; i <= deg; ++i) {
        r.coeff(i) = BigReal::from_mpq((i % 2 == 0 ? pw : -pw) / static_cast<long>(i + 1), wp);
        pw *= c;
    }
    RawMpfr rem(kRadPrec), ca(kRadPrec);
    tm_detail::geom_rem(c, log2w0, deg, rem);
    mpfr_set_q(ca, mpq_class(abs(c)).get_mpq_t(), MPFR_RNDU);
    mpfr_mul(rem, rem.x, ca.x, MPFR_RNDU);
    r.err_add(rem.x);
    return r;
}

/// exp(f) for a taylor model whose non-constant part has small range.
inline TaylorModel tm_exp(const TaylorModel& f, long target_2exp) {
    const Prec wp = f.wp();
    const std::size_t d = f.degree();
    TaylorModel g(f);
    const BigReal c0 = f.coeff(0);
    g.coeff(0) = BigReal::zero(wp);
    RawMpfr rho(kRadPrec);
    g.range(rho);
    if (mpfr_cmp_d(rho.x, 0.25) >= 0)
        throw PrecisionError("taylor model exp: range too wide");

    TaylorModel acc(d, f.log2w0(), wp);
    acc.coeff(0) = BigReal::one(wp);
    TaylorModel p = acc;
    RawMpfr rho_pow(kRadPrec), target(kRadPrec), u(kRadPrec);
    mpfr_set(rho_pow.x, rho.x, MPFR_RNDU);
    mpfr_set_ui_2exp(target, 1, target_2exp, MPFR_RNDU);
    for (unsigned long j = 1;; ++j) {
        if (j > 256) throw PrecisionError("taylor model exp failed to converge");
        p = tm_mul(p, g);
        p = tm_scale_q(p, mpq_class(1, static_cast<long>(j)));
        acc = tm_add(acc, p);
        // remaining tail <= 2 rho^(j+1)/(j+1)!
        mpfr_mul(rho_pow, rho_pow.x, rho.x, MPFR_RNDU);
        mpfr_div_ui(u, rho_pow.x, static_cast<unsigned long>(j + 1), MPFR_RNDU);
        mpfr_mul_2si(u, u.x, 1, MPFR_RNDU);
        if (mpfr_cmp(u.x, target.x) <= 0) {
            acc.err_add(u.x);
            break;
        }
        mpfr_set(rho_pow.x, u.x, MPFR_RNDU);  // rho^(j+1)/(j+1)! carried forward
        mpfr_mul_2si(rho_pow, rho_pow.x, -1, MPFR_RNDU);
    }
    return tm_scale(acc, ball::exp(c0, wp));
}

} // namespace ceresa::detail
