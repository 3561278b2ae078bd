#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include <ceresa/gamma.hpp>
#include <ceresa/hypergeom.hpp>
#include <ceresa/tanh_sinh.hpp>

using namespace ceresa;

namespace {

Hyp3F2Params params(Rational a1, Rational a2, Rational a3, Rational b1 = Rational(1),
                    Rational b2 = Rational(1)) {
    return Hyp3F2Params{a1, a2, a3, b1, b2};
}

/// Midpoints agree to at least `bits` significant bits.
bool midpoints_agree(const BigReal& a, const BigReal& b, long bits) {
    detail::RawMpfr d(64), m(64);
    mpfr_sub(d, a.mid(), b.mid(), MPFR_RNDA);
    mpfr_abs(d, d.x, MPFR_RNDU);
    mpfr_abs(m, a.mid(), MPFR_RNDD);
    if (mpfr_zero_p(d.x)) return true;
    mpfr_mul_2si(m, m.x, -bits, MPFR_RNDD);
    return mpfr_cmp(d.x, m.x) <= 0;
}

} // namespace

TEST_CASE("2F1 basics") {
    // x = 0 -> 1
    CHECK(hyp2f1(Rational(1, 7), Rational(2, 7), Rational(1), BigReal::zero(96), 96)
              .contains(mpq_class(1)));

    // Gauss at x = 1: 2F1(1/7,2/7;1;1) = G(1)G(4/7)/(G(6/7)G(5/7))
    const BigReal gauss =
        hyp2f1(Rational(1, 7), Rational(2, 7), Rational(1), BigReal::one(256), 256);
    const BigReal ref = ball::div(gamma_rational(Rational(4, 7), 256),
                                  ball::mul(gamma_rational(Rational(6, 7), 256),
                                            gamma_rational(Rational(5, 7), 256), 288),
                                  288);
    CHECK(gauss.overlaps(ref));

    CHECK_THROWS_AS(
        hyp2f1(Rational(2, 3), Rational(2, 3), Rational(1), BigReal::one(96), 96),
        DomainError);  // c - a - b < 0 diverges at 1
}

TEST_CASE("2F1 series/connection consistency across the split point") {
    // same value approached through the direct series (x = 0.5) and the
    // connection formula (x = 0.75 -> z = 0.25), cross-checked against the
    // Euler integral evaluated by the ball tanh-sinh integrator
    const Rational a(1, 3), b(1, 3), c(1);
    for (long num : {1L, 3L}) {  // x = 1/2, 3/4
        const BigReal x = BigReal::from_mpq(mpq_class(num, num == 1 ? 2 : 4), 256);
        const BigReal direct = hyp2f1(a, b, c, x, 224);
        // 2F1(a,b;c;x) = [G(c)/(G(b)G(c-b))] int_0^1 u^(b-1)(1-u)^(c-b-1)(1-xu)^(-a) du
        const Prec wp = 272;
        const mpq_class bq = b.to_mpq(), cq = c.to_mpq(), aq = a.to_mpq();
        auto integrand = [&](const BigReal& u, const BigReal& uc) {
            BigReal v = ball::exp(ball::mul_q(ball::log(u, wp), bq - 1, wp), wp);
            v = ball::mul(v, ball::exp(ball::mul_q(ball::log(uc, wp), cq - bq - 1, wp), wp), wp);
            const BigReal one_minus_xu = ball::sub(BigReal::one(wp), ball::mul(x, u, wp), wp);
            return ball::mul(v, ball::exp(ball::mul_q(ball::log(one_minus_xu, wp), -aq, wp), wp),
                             wp);
        };
        detail::QuadratureOptions opt;
        opt.target_bits = 210;
        const BigReal integral = detail::tanh_sinh_unit(integrand, 1.0 / 3.0, wp, opt);
        const BigReal pref = ball::div(gamma_rational(Rational(1), wp),
                                       ball::mul(gamma_rational(b, wp),
                                                 gamma_rational(Rational(2, 3), wp), wp),
                                       wp);
        const BigReal oracle = ball::mul(pref, integral, wp);
        CAPTURE(num);
        CHECK(direct.overlaps(oracle));
        CHECK(midpoints_agree(direct, oracle, 200));  // 60+ digits
    }
}

TEST_CASE("3F2 trivial and reduction cases") {
    // zero numerator parameter truncates the series to 1
    CHECK(hyp3f2_unit_series(params(Rational(0), Rational(1, 3), Rational(1, 2)), 128)
              .contains(mpq_class(1)));
    CHECK(hyp3f2_unit_quadrature(params(Rational(0), Rational(1, 3), Rational(1, 2)), 128)
              .contains(mpq_class(1)));

    // matching upper/lower parameter cancels: 3F2(a,b,c;c,1;1) = 2F1(a,b;1;1)
    const BigReal lhs = hyp3f2_unit_series(
        params(Rational(1, 5), Rational(1, 4), Rational(3, 4), Rational(3, 4), Rational(1)), 224);
    const BigReal rhs =
        hyp2f1(Rational(1, 5), Rational(1, 4), Rational(1), BigReal::one(224), 224);
    CHECK(lhs.overlaps(rhs));
}

TEST_CASE("3F2 divergence and regime errors") {
    CHECK_THROWS_AS(hyp3f2_unit_series(params(Rational(1), Rational(1), Rational(1)), 96),
                    DivergenceError);
    CHECK_THROWS_AS(
        hyp3f2_unit_quadrature(
            params(Rational(1, 3), Rational(1, 3), Rational(1, 2), Rational(1), Rational(2)), 96),
        DomainError);  // b2 != 1
    CHECK_THROWS_AS(
        hyp3f2_unit_quadrature(
            params(Rational(1, 3), Rational(1, 3), Rational(3, 2), Rational(1), Rational(1)), 96),
        DomainError);  // a3 outside (0,1)
}

TEST_CASE("dual-method agreement on production-shaped parameters") {
    const std::vector<std::array<long, 4>> cases = {
        {2, 2, 1, 7}, {1, 3, 9, 13}, {1, 1, 2, 4}, {5, 15, 11, 31}};
    for (const auto& c : cases) {
        const long n = c[3];
        const auto p = params(Rational(c[0], n), Rational(c[1], n), Rational(c[2], n));
        const BigReal s = hyp3f2_unit_series(p, 320);
        const BigReal q = hyp3f2_unit_quadrature(p, 320);
        CAPTURE(c[0]);
        CAPTURE(n);
        CHECK(s.overlaps(q));
        CHECK(midpoints_agree(s, q, 320 / 4));
        // Both: tightest certified enclosure, consistent with either route
        const BigReal both = hyp3f2_unit(p, 320, HypMethod::Both);
        CHECK(both.overlaps(s));
        CHECK(both.overlaps(q));
        CHECK(mpfr_cmp(both.rad(), q.rad()) <= 0);
    }
}

TEST_CASE("random dual-method spot checks in the Euler regime") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long> den(5, 48);
    int done = 0;
    while (done < 5) {
        const long d = den(rng);
        std::uniform_int_distribution<long> num(1, d - 1);
        const Hyp3F2Params p =
            params(Rational(num(rng), d), Rational(num(rng), d), Rational(num(rng), d));
        if (p.margin() <= mpq_class(1, 8)) continue;
        // the Euler-route connection formula needs 1 - a1 - a2 noninteger
        if (mpq_class(p.a1.to_mpq() + p.a2.to_mpq()).get_den() == 1) continue;
        const BigReal s = hyp3f2_unit_series(p, 192);
        const BigReal q = hyp3f2_unit_quadrature(p, 192);
        CAPTURE(p.str());
        CHECK(s.overlaps(q));
        CHECK(midpoints_agree(s, q, 192 / 4));
        ++done;
    }
}

TEST_CASE("numerator symmetry: all six permutations agree") {
    const Rational r1(1, 7), r2(2, 7), r3(4, 7);
    std::array<Rational, 3> perm = {r1, r2, r3};
    std::sort(perm.begin(), perm.end(),
              [](const Rational& a, const Rational& b) { return a.to_mpq() < b.to_mpq(); });
    std::vector<BigReal> values;
    do {
        values.push_back(hyp3f2_unit_series(params(perm[0], perm[1], perm[2]), 192));
    } while (std::next_permutation(perm.begin(), perm.end(),
                                   [](const Rational& a, const Rational& b) {
                                       return a.to_mpq() < b.to_mpq();
                                   }));
    CHECK(values.size() == 6);
    for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[0].overlaps(values[i]));
}

TEST_CASE("monotone truncation: positive-parameter partial sums stay below the enclosure") {
    const auto p = params(Rational(1, 7), Rational(2, 7), Rational(4, 7));
    const BigReal full = hyp3f2_unit_series(p, 160);
    detail::RawMpfr hi(32);
    full.upper(hi);
    // partial sums via the exact term recurrence
    BigReal term = BigReal::one(192);
    BigReal sum = term;
    detail::RawMpfr prev(64), cur(64);
    mpfr_set_zero(prev, 1);
    for (long n = 1; n < 400; ++n) {
        const long k = n - 1;
        const mpq_class ratio = ((mpq_class(1, 7) + k) * (mpq_class(2, 7) + k) * (mpq_class(4, 7) + k)) /
                                (mpq_class(k + 1) * (k + 1) * n);
        term = ball::mul_q(term, ratio, 192);
        sum = ball::add(sum, term, 192);
        mpfr_set(cur, sum.mid(), MPFR_RNDN);
        CHECK(mpfr_cmp(cur.x, prev.x) > 0);   // strictly increasing
        CHECK(mpfr_cmp(cur.x, hi.x) < 0);     // bounded by midpoint + err
        mpfr_set(prev, cur.x, MPFR_RNDN);
    }
}

TEST_CASE("gauss check: closed form matches partial sum plus tail bound") {
    // 2F1(a,b;c;1) via the Gauss formula vs the 3F2 series path with a
    // cancelling parameter pair, an independent summation route
    const BigReal closed =
        hyp2f1(Rational(2, 7), Rational(3, 7), Rational(6, 5), BigReal::one(192), 192);
    const BigReal series = hyp3f2_unit_series(
        params(Rational(2, 7), Rational(3, 7), Rational(1, 3), Rational(6, 5), Rational(1, 3)),
        192);
    CHECK(closed.overlaps(series));
}
