#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "ceresa/errors.hpp"
#include "ceresa/rational.hpp"

namespace ceresa {

using Prec = long;

namespace detail {

/// Radius precision. Radii are magnitude bounds, not measurements; 32 bits
/// rounded upward everywhere keeps them sound and cheap, while the mpfr
/// exponent range covers radii as small as 2^-2^62.
inline constexpr Prec kRadPrec = 32;

struct RawMpfr {
    mpfr_t x;
    explicit RawMpfr(Prec p) { mpfr_init2(x, p); mpfr_set_zero(x, 1); }
    ~RawMpfr() { mpfr_clear(x); }
    RawMpfr(const RawMpfr&) = delete;
    RawMpfr& operator=(const RawMpfr&) = delete;
    operator mpfr_ptr() { return x; }            // NOLINT(google-explicit-constructor)
    operator mpfr_srcptr() const { return x; }   // NOLINT(google-explicit-constructor)
};

} // namespace detail

/// Arbitrary-precision real midpoint with a rigorous absolute-error radius.
/// Invariant: rad >= 0 and finite, and [mid - rad, mid + rad] contains the
/// exact value whenever the inputs' intervals contain theirs. Results carry
/// the precision they were computed at.
class BigReal {
public:
    BigReal() { init(64); }
    explicit BigReal(Prec prec) { init(prec); }
    BigReal(const BigReal& o) {
        mpfr_init2(mid_, mpfr_get_prec(o.mid_));
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_init2(rad_, detail::kRadPrec);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(mid_, 2);
        mpfr_init2(rad_, detail::kRadPrec);
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
            mpfr_set(mid_, o.mid_, MPFR_RNDN);
            mpfr_set(rad_, o.rad_, MPFR_RNDU);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
        return *this;
    }
    ~BigReal() {
        mpfr_clear(mid_);
        mpfr_clear(rad_);
    }

    // -- factories ---------------------------------------------------------

    static BigReal from_si(std::int64_t v, Prec prec) {
        BigReal r(prec);
        const int t = mpfr_set_si(r.mid_, static_cast<long>(v), MPFR_RNDN);
        r.add_round_err(t);
        return r;
    }
    static BigReal from_mpz(const mpz_class& v, Prec prec) {
        BigReal r(prec);
        const int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
        r.add_round_err(t);
        return r;
    }
    static BigReal from_mpq(const mpq_class& v, Prec prec) {
        BigReal r(prec);
        const int t = mpfr_set_q(r.mid_, v.get_mpq_t(), MPFR_RNDN);
        r.add_round_err(t);
        return r;
    }
    static BigReal from_rational(const Rational& v, Prec prec) {
        return from_mpq(v.to_mpq(), prec);
    }
    static BigReal zero(Prec prec) { return BigReal(prec); }
    static BigReal one(Prec prec) { return from_si(1, prec); }
    static BigReal pi(Prec prec) {
        BigReal r(prec);
        const int t = mpfr_const_pi(r.mid_, MPFR_RNDN);
        r.add_round_err(t);
        return r;
    }
    /// Exact dyadic value m * 2^e.
    static BigReal dyadic(long m, long e, Prec prec) {
        BigReal r(prec);
        const int t = mpfr_set_si_2exp(r.mid_, m, e, MPFR_RNDN);
        r.add_round_err(t);
        return r;
    }

    // -- views -------------------------------------------------------------

    Prec prec() const { return mpfr_get_prec(mid_); }
    mpfr_srcptr mid() const { return mid_; }
    mpfr_srcptr rad() const { return rad_; }
    bool exact() const { return mpfr_zero_p(rad_); }

    double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    /// Upper bound on the radius as a double (0 may be returned for radii
    /// below the double range; use err_exp10 for reporting).
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    /// floor(log10(rad)); INT32_MIN when the radius is exactly zero.
    long err_exp10() const {
        if (mpfr_zero_p(rad_)) return INT32_MIN;
        detail::RawMpfr t(64);
        mpfr_log10(t, rad_, MPFR_RNDN);
        mpfr_floor(t, t);
        return mpfr_get_si(t, MPFR_RNDN);
    }

    void lower(mpfr_ptr out) const { mpfr_sub(out, mid_, rad_, MPFR_RNDD); }
    void upper(mpfr_ptr out) const { mpfr_add(out, mid_, rad_, MPFR_RNDU); }

    bool is_positive() const {  // entire ball > 0
        detail::RawMpfr lo(detail::kRadPrec);
        mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
        return mpfr_sgn(static_cast<mpfr_srcptr>(lo)) > 0;
    }
    bool contains_zero() const {
        detail::RawMpfr lo(detail::kRadPrec), hi(detail::kRadPrec);
        lower(lo);
        upper(hi);
        return mpfr_sgn(static_cast<mpfr_srcptr>(lo)) <= 0 && mpfr_sgn(static_cast<mpfr_srcptr>(hi)) >= 0;
    }
    bool contains(const mpq_class& q) const {
        detail::RawMpfr d1(prec() + 8), d2(prec() + 8);
        mpfr_sub_q(d1, mid_, q.get_mpq_t(), MPFR_RNDU);
        mpfr_sub_q(d2, mid_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_abs(d1, d1, MPFR_RNDU);
        mpfr_abs(d2, d2, MPFR_RNDU);
        if (mpfr_cmp(static_cast<mpfr_srcptr>(d1), static_cast<mpfr_srcptr>(d2)) < 0) mpfr_swap(d1, d2);
        return mpfr_cmp(static_cast<mpfr_srcptr>(d1), rad_) <= 0;
    }
    /// True when this ball contains the whole of `t`.
    bool encloses(const BigReal& t) const {
        detail::RawMpfr alo(detail::kRadPrec), ahi(detail::kRadPrec);
        detail::RawMpfr tlo(detail::kRadPrec), thi(detail::kRadPrec);
        lower(alo);
        upper(ahi);
        t.lower(tlo);
        t.upper(thi);
        return mpfr_cmp(static_cast<mpfr_srcptr>(alo), static_cast<mpfr_srcptr>(tlo)) <= 0 &&
               mpfr_cmp(static_cast<mpfr_srcptr>(thi), static_cast<mpfr_srcptr>(ahi)) <= 0;
    }
    bool overlaps(const BigReal& o) const {
        detail::RawMpfr ahi(detail::kRadPrec), blo(detail::kRadPrec);
        upper(ahi);
        o.lower(blo);
        if (mpfr_cmp(static_cast<mpfr_srcptr>(ahi), static_cast<mpfr_srcptr>(blo)) < 0) return false;
        detail::RawMpfr bhi(detail::kRadPrec), alo(detail::kRadPrec);
        o.upper(bhi);
        lower(alo);
        return mpfr_cmp(static_cast<mpfr_srcptr>(bhi), static_cast<mpfr_srcptr>(alo)) >= 0;
    }

    // -- strings -----------------------------------------------------------

    /// Fixed-point decimal with `digits` fractional digits (round to nearest).
    std::string to_fixed(int digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rf", digits, mid_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    /// Scientific form with `digits` significant digits.
    std::string to_sci(int digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", digits - 1, mid_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    /// Canonical exact serialization: "<prec>:<mid_z16>:<mid_e>:<rad_z16>:<rad_e>"
    /// where value = z * 2^e. Deterministic and loss-free.
    std::string serialize() const {
        return std::to_string(prec()) + ":" + encode(mid_) + ":" + encode(rad_);
    }
    static BigReal deserialize(const std::string& s) {
        const auto p1 = s.find(':');
        if (p1 == std::string::npos) throw DomainError("bad ball serialization");
        const Prec prec = std::stol(s.substr(0, p1));
        const auto p2 = s.find(':', p1 + 1);
        const auto p3 = s.find(':', p2 + 1);
        const auto p4 = s.find(':', p3 + 1);
        if (p2 == std::string::npos || p3 == std::string::npos || p4 == std::string::npos)
            throw DomainError("bad ball serialization");
        BigReal r(prec);
        decode(r.mid_, s.substr(p1 + 1, p2 - p1 - 1), s.substr(p2 + 1, p3 - p2 - 1));
        decode(r.rad_, s.substr(p3 + 1, p4 - p3 - 1), s.substr(p4 + 1));
        return r;
    }

    // -- radius plumbing (upper-bound arithmetic, shared with the kernel) ---

    /// rad += 2^(exp(mid) - prec): one full ulp, covering the <= 1/2 ulp
    /// round-to-nearest error of the midpoint op that returned ternary t.
    void add_round_err(int ternary) {
        if (ternary == 0) return;
        if (!mpfr_regular_p(mid_)) {
            if (mpfr_zero_p(mid_)) {  // underflow corner; unreachable at our scales
                mpfr_set_ui_2exp(rad_, 1, mpfr_get_emin(), MPFR_RNDU);
                return;
            }
            throw DomainError("non-finite midpoint");
        }
        detail::RawMpfr u(detail::kRadPrec);
        mpfr_set_ui_2exp(u, 1, mpfr_get_exp(mid_) - prec(), MPFR_RNDU);
        mpfr_add(rad_, rad_, u, MPFR_RNDU);
    }
    void rad_add(mpfr_srcptr extra) { mpfr_add(rad_, rad_, extra, MPFR_RNDU); }
    void rad_add(const BigReal& b) {  // add |b| upper bound to the radius
        detail::RawMpfr m(detail::kRadPrec);
        b.mag_upper(m);
        mpfr_add(rad_, rad_, m, MPFR_RNDU);
    }
    void rad_set_zero() { mpfr_set_zero(rad_, 1); }
    /// Upper bound of |value| over the ball, into a kRadPrec target.
    void mag_upper(mpfr_ptr out) const {
        mpfr_abs(out, mid_, MPFR_RNDU);
        mpfr_add(out, out, rad_, MPFR_RNDU);
    }
    /// Lower bound of |value| over the ball (0 if the ball straddles 0).
    void mag_lower(mpfr_ptr out) const {
        mpfr_abs(out, mid_, MPFR_RNDD);
        mpfr_sub(out, out, rad_, MPFR_RNDD);
        if (mpfr_sgn(out) < 0) mpfr_set_zero(out, 1);
    }

    mpfr_ptr mid_raw() { return mid_; }
    mpfr_ptr rad_raw() { return rad_; }

private:
    void init(Prec prec) {
        if (prec < 2) prec = 2;
        mpfr_init2(mid_, prec);
        mpfr_set_zero(mid_, 1);
        mpfr_init2(rad_, detail::kRadPrec);
        mpfr_set_zero(rad_, 1);
    }
    static std::string encode(mpfr_srcptr x) {
        if (mpfr_zero_p(x)) return "0:0";
        mpz_class z;
        const mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
        return z.get_str(16) + ":" + std::to_string(static_cast<long>(e));
    }
    static void decode(mpfr_ptr x, const std::string& zs, const std::string& es) {
        mpz_class z;
        if (z.set_str(zs, 16) != 0) throw DomainError("bad ball serialization");
        mpfr_set_z_2exp(x, z.get_mpz_t(), std::stol(es), MPFR_RNDN);
    }

    mpfr_t mid_;
    mpfr_t rad_;
};

// ---------------------------------------------------------------------------
// Ball operations. Every function takes the result precision explicitly;
// operator overloads use max(input precisions).
// ---------------------------------------------------------------------------

namespace ball {

using detail::kRadPrec;
using detail::RawMpfr;

inline BigReal add(const BigReal& a, const BigReal& b, Prec p) {
    BigReal r(p);
    const int t = mpfr_add(r.mid_raw(), a.mid(), b.mid(), MPFR_RNDN);
    r.rad_add(a.rad());
    r.rad_add(b.rad());
    r.add_round_err(t);
    return r;
}

inline BigReal sub(const BigReal& a, const BigReal& b, Prec p) {
    BigReal r(p);
    const int t = mpfr_sub(r.mid_raw(), a.mid(), b.mid(), MPFR_RNDN);
    r.rad_add(a.rad());
    r.rad_add(b.rad());
    r.add_round_err(t);
    return r;
}

inline BigReal neg(const BigReal& a) {
    BigReal r(a);
    mpfr_neg(r.mid_raw(), r.mid(), MPFR_RNDN);
    return r;
}

inline BigReal abs_val(const BigReal& a) {
    BigReal r(a);
    mpfr_abs(r.mid_raw(), r.mid(), MPFR_RNDN);
    return r;
}

inline BigReal mul(const BigReal& a, const BigReal& b, Prec p) {
    BigReal r(p);
    const int t = mpfr_mul(r.mid_raw(), a.mid(), b.mid(), MPFR_RNDN);
    // |xy - ab| <= |a| rb + |b| ra + ra rb
    RawMpfr am(kRadPrec), bm(kRadPrec), u(kRadPrec);
    mpfr_abs(am, a.mid(), MPFR_RNDU);
    mpfr_abs(bm, b.mid(), MPFR_RNDU);
    mpfr_mul(u, am, b.rad(), MPFR_RNDU);
    r.rad_add(u);
    mpfr_mul(u, bm, a.rad(), MPFR_RNDU);
    r.rad_add(u);
    mpfr_mul(u, a.rad(), b.rad(), MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    return r;
}

inline BigReal div(const BigReal& a, const BigReal& b, Prec p) {
    RawMpfr blo(kRadPrec);
    mpfr_abs(blo, b.mid(), MPFR_RNDD);
    mpfr_sub(blo, blo, b.rad(), MPFR_RNDD);
    if (mpfr_sgn(static_cast<mpfr_srcptr>(blo)) <= 0)
        throw DomainError("ball division by an interval containing zero");
    BigReal r(p);
    const int t = mpfr_div(r.mid_raw(), a.mid(), b.mid(), MPFR_RNDN);
    // |x/y - a/b| <= (ra|b| + |a|rb) / (|b| (|b| - rb))
    RawMpfr am(kRadPrec), bm(kRadPrec), num(kRadPrec), u(kRadPrec), den(kRadPrec);
    mpfr_abs(am, a.mid(), MPFR_RNDU);
    mpfr_abs(bm, b.mid(), MPFR_RNDU);
    mpfr_mul(num, am, b.rad(), MPFR_RNDU);
    mpfr_mul(u, bm, a.rad(), MPFR_RNDU);
    mpfr_add(num, num, u, MPFR_RNDU);
    mpfr_abs(den, b.mid(), MPFR_RNDD);
    mpfr_mul(den, den, blo, MPFR_RNDD);
    mpfr_div(u, num, den, MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    return r;
}

inline BigReal inv(const BigReal& a, Prec p) { return div(BigReal::one(p), a, p); }

inline BigReal mul_si(const BigReal& a, std::int64_t k, Prec p) {
    BigReal r(p);
    const int t = mpfr_mul_si(r.mid_raw(), a.mid(), static_cast<long>(k), MPFR_RNDN);
    RawMpfr u(kRadPrec);
    mpfr_mul_si(u, a.rad(), k < 0 ? -k : k, MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    return r;
}

inline BigReal mul_z(const BigReal& a, const mpz_class& k, Prec p) {
    BigReal r(p);
    const int t = mpfr_mul_z(r.mid_raw(), a.mid(), k.get_mpz_t(), MPFR_RNDN);
    RawMpfr u(kRadPrec), kz(kRadPrec);
    mpfr_set_z(kz, k.get_mpz_t(), MPFR_RNDU);
    mpfr_abs(kz, kz, MPFR_RNDU);
    mpfr_mul(u, a.rad(), kz, MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    return r;
}

inline BigReal mul_q(const BigReal& a, const mpq_class& q, Prec p) {
    return mul(a, BigReal::from_mpq(q, p), p);
}

/// Exact scaling by 2^e (no rounding in either component).
inline BigReal mul_2si(const BigReal& a, long e) {
    BigReal r(a);
    mpfr_mul_2si(r.mid_raw(), r.mid(), e, MPFR_RNDN);
    mpfr_mul_2si(r.rad_raw(), r.rad(), e, MPFR_RNDU);
    return r;
}

inline BigReal add_si(const BigReal& a, std::int64_t k, Prec p) {
    BigReal r(p);
    const int t = mpfr_add_si(r.mid_raw(), a.mid(), static_cast<long>(k), MPFR_RNDN);
    r.rad_add(a.rad());
    r.add_round_err(t);
    return r;
}

inline BigReal pow_ui(const BigReal& a, unsigned long n, Prec p) {
    BigReal acc = BigReal::one(p);
    BigReal base(a);
    while (n > 0) {
        if (n & 1UL) acc = mul(acc, base, p);
        n >>= 1UL;
        if (n > 0) base = mul(base, base, p);
    }
    return acc;
}

inline BigReal sqrt(const BigReal& a, Prec p) {
    RawMpfr lo(kRadPrec);
    a.lower(lo);
    if (mpfr_sgn(static_cast<mpfr_srcptr>(lo)) <= 0)
        throw DomainError("ball sqrt requires a strictly positive interval");
    BigReal r(p);
    const int t = mpfr_sqrt(r.mid_raw(), a.mid(), MPFR_RNDN);
    // |sqrt(x) - sqrt(a)| <= ra / (2 sqrt(lo))
    RawMpfr u(kRadPrec);
    mpfr_sqrt(u, lo, MPFR_RNDD);
    mpfr_mul_2si(u, u, 1, MPFR_RNDD);
    mpfr_div(u, a.rad(), u, MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    return r;
}

inline BigReal exp(const BigReal& a, Prec p) {
    BigReal r(p);
    const int t = mpfr_exp(r.mid_raw(), a.mid(), MPFR_RNDN);
    // |e^x - e^a| <= e^(a + ra) * ra
    RawMpfr hi(kRadPrec), u(kRadPrec);
    mpfr_add(hi, a.mid(), a.rad(), MPFR_RNDU);
    mpfr_exp(u, hi, MPFR_RNDU);
    mpfr_mul(u, u, a.rad(), MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    if (!mpfr_number_p(r.mid())) throw DomainError("exp overflow");
    return r;
}

inline BigReal log(const BigReal& a, Prec p) {
    RawMpfr lo(kRadPrec);
    a.lower(lo);
    if (mpfr_sgn(static_cast<mpfr_srcptr>(lo)) <= 0)
        throw DomainError("ball log requires a strictly positive interval");
    BigReal r(p);
    const int t = mpfr_log(r.mid_raw(), a.mid(), MPFR_RNDN);
    RawMpfr u(kRadPrec);
    mpfr_div(u, a.rad(), lo, MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    return r;
}

inline BigReal sin(const BigReal& a, Prec p) {
    BigReal r(p);
    const int t = mpfr_sin(r.mid_raw(), a.mid(), MPFR_RNDN);
    r.rad_add(a.rad());  // |sin'| <= 1
    r.add_round_err(t);
    return r;
}

inline BigReal sinh(const BigReal& a, Prec p) {
    BigReal r(p);
    const int t = mpfr_sinh(r.mid_raw(), a.mid(), MPFR_RNDN);
    // |sinh'| = cosh, increasing in |x|
    RawMpfr hi(kRadPrec), u(kRadPrec);
    mpfr_abs(hi, a.mid(), MPFR_RNDU);
    mpfr_add(hi, hi, a.rad(), MPFR_RNDU);
    mpfr_cosh(u, hi, MPFR_RNDU);
    mpfr_mul(u, u, a.rad(), MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    return r;
}

inline BigReal cosh(const BigReal& a, Prec p) {
    BigReal r(p);
    const int t = mpfr_cosh(r.mid_raw(), a.mid(), MPFR_RNDN);
    // |cosh'| = |sinh| <= cosh on the interval
    RawMpfr hi(kRadPrec), u(kRadPrec);
    mpfr_abs(hi, a.mid(), MPFR_RNDU);
    mpfr_add(hi, hi, a.rad(), MPFR_RNDU);
    mpfr_cosh(u, hi, MPFR_RNDU);
    mpfr_mul(u, u, a.rad(), MPFR_RNDU);
    r.rad_add(u);
    r.add_round_err(t);
    return r;
}

/// Tightest ball covering the intersection; nullopt when provably disjoint.
inline std::optional<BigReal> intersect(const BigReal& a, const BigReal& b, Prec p) {
    const Prec ep = p + kRadPrec;  // full-precision endpoints
    RawMpfr alo(ep), ahi(ep), blo(ep), bhi(ep);
    a.lower(alo);
    a.upper(ahi);
    b.lower(blo);
    b.upper(bhi);
    mpfr_ptr lo = mpfr_cmp(static_cast<mpfr_srcptr>(alo), static_cast<mpfr_srcptr>(blo)) >= 0 ? static_cast<mpfr_ptr>(alo) : static_cast<mpfr_ptr>(blo);
    mpfr_ptr hi = mpfr_cmp(static_cast<mpfr_srcptr>(ahi), static_cast<mpfr_srcptr>(bhi)) <= 0 ? static_cast<mpfr_ptr>(ahi) : static_cast<mpfr_ptr>(bhi);
    if (mpfr_cmp(lo, hi) > 0) return std::nullopt;
    BigReal r(p);
    RawMpfr m(p);
    mpfr_add(m, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    mpfr_set(r.mid_raw(), m.x, MPFR_RNDN);
    // radius: max distance from the midpoint to either endpoint, rounded up
    RawMpfr d1(kRadPrec), d2(kRadPrec);
    mpfr_sub(d1, hi, m, MPFR_RNDU);
    mpfr_sub(d2, m, lo, MPFR_RNDU);
    if (mpfr_cmp(static_cast<mpfr_srcptr>(d1), static_cast<mpfr_srcptr>(d2)) < 0) mpfr_swap(d1, d2);
    if (mpfr_sgn(static_cast<mpfr_srcptr>(d1)) < 0) mpfr_set_zero(d1, 1);
    r.rad_add(d1);
    r.add_round_err(1);
    return r;
}

/// Fractional part: subtracts floor(mid) exactly; midpoint lands in [0, 1),
/// the radius is unchanged. Also returns the integer part.
inline std::pair<BigReal, mpz_class> split_mod1(const BigReal& a, Prec p) {
    mpz_class n;
    mpfr_get_z(n.get_mpz_t(), a.mid(), MPFR_RNDD);
    BigReal r(p);
    const int t = mpfr_sub_z(r.mid_raw(), a.mid(), n.get_mpz_t(), MPFR_RNDN);
    r.rad_add(a.rad());
    r.add_round_err(t);
    if (mpfr_sgn(r.mid()) < 0) {  // rounding placed the midpoint below 0
        const int t2 = mpfr_add_si(r.mid_raw(), r.mid(), 1, MPFR_RNDN);
        r.add_round_err(t2);
        n -= 1;
    }
    if (mpfr_cmp_ui(r.mid(), 1) >= 0) {
        const int t3 = mpfr_sub_si(r.mid_raw(), r.mid(), 1, MPFR_RNDN);
        r.add_round_err(t3);
        n += 1;
    }
    return {std::move(r), std::move(n)};
}

} // namespace ball

/// PrecisionError variant carrying the best enclosure achieved.
struct PrecisionBallError : PrecisionError {
    PrecisionBallError(const std::string& what, BigReal best_ball)
        : PrecisionError(what), best(std::move(best_ball)) {}
    BigReal best;
};

inline BigReal operator+(const BigReal& a, const BigReal& b) {
    return ball::add(a, b, std::max(a.prec(), b.prec()));
}
inline BigReal operator-(const BigReal& a, const BigReal& b) {
    return ball::sub(a, b, std::max(a.prec(), b.prec()));
}
inline BigReal operator*(const BigReal& a, const BigReal& b) {
    return ball::mul(a, b, std::max(a.prec(), b.prec()));
}
inline BigReal operator/(const BigReal& a, const BigReal& b) {
    return ball::div(a, b, std::max(a.prec(), b.prec()));
}

} // namespace ceresa
