#include <doctest.h>

#include <ceresa/volume.hpp>

using namespace ceresa;

namespace {

bool close_to_decimal(const BigReal& v, const char* dec, const char* tol) {
    detail::RawMpfr d(96);
    mpfr_sub_q(d, v.mid(), mpq_from_decimal(dec).get_mpq_t(), MPFR_RNDA);
    mpfr_abs(d, d.x, MPFR_RNDU);
    return mpfr_cmp_q(d.x, mpq_from_decimal(tol).get_mpq_t()) <= 0;
}

} // namespace

TEST_CASE("summand structure at N = 7, h = 1") {
    const Summand s = summand(7, 2, 1, 256);
    CHECK(s.idx.h == 1);
    CHECK(s.idx.t2 == 2);
    CHECK(s.idx.t3 == 4);
    // gamma factor is Gamma^7(5, 3; 2)
    CHECK(s.gamma_factor.overlaps(gamma_ratio_n({5, 3}, {2}, 7, 256)));
    // hypergeometric factor under the adjudicated reading
    const Hyp3F2Params p{Rational(1, 7), Rational(2, 7), Rational(4, 7), Rational(1), Rational(1)};
    CHECK(s.hyp_value.overlaps(hyp3f2_unit_series(p, 256)));
    // product = gamma^2 * hyp
    CHECK(s.product.overlaps(
        ball::mul(ball::mul(s.gamma_factor, s.gamma_factor, 288), s.hyp_value, 288)));
    CHECK(s.product.is_positive());

    CHECK_THROWS_AS(summand(7, 2, 3, 128), DomainError);  // h = 3 not admissible
}

TEST_CASE("printed reading differs and is exposed") {
    const Summand alt = summand(7, 2, 1, 192, HypMethod::Series, ParamReading::Alternate);
    const Summand pri = summand(7, 2, 1, 192, HypMethod::Series, ParamReading::Printed);
    const Hyp3F2Params p{Rational(1, 7), Rational(1, 7), Rational(4, 7), Rational(1), Rational(1)};
    CHECK(pri.hyp_value.overlaps(hyp3f2_unit_series(p, 192)));
    CHECK_FALSE(pri.hyp_value.overlaps(alt.hyp_value));
}

TEST_CASE("f(7,1) reproduces the reference value") {
    const VolumeResult r = f_n_1(7, 192);
    CHECK(r.n == 7);
    CHECK(r.m == 2);
    CHECK(r.k == 1);
    CHECK(r.verdict == Verdict::NonIntegerProven);
    CHECK(close_to_decimal(r.value_mod1, "0.64692", "0.000005"));
    // high-precision anchor, cross-validated by both evaluation methods; the
    // printed anchor is rounded at digit 40, the ball is much tighter
    CHECK(close_to_decimal(r.value_mod1, "0.6469152456705446370673758190806527370134",
                           "0.0000000000000000000000000000000000000001"));
    CHECK(r.raw_sum.is_positive());
}

TEST_CASE("f(13,1) and f(19,1) match the table") {
    CHECK(close_to_decimal(f_n_1(13, 192).value_mod1, "0.30390", "0.000005"));
    CHECK(close_to_decimal(f_n_1(19, 192).value_mod1, "0.15972", "0.000005"));
}

TEST_CASE("dual-method pipeline: both routes agree through the full trace sum") {
    const VolumeResult r = f_n_1(19, 160, HypMethod::Both);
    CHECK(r.verdict == Verdict::NonIntegerProven);
    CHECK(close_to_decimal(r.value_mod1, "0.15972", "0.000005"));
    CHECK(r.method == HypMethod::Both);
    // the intersection route can only tighten: still consistent with series
    CHECK(r.value_mod1.overlaps(f_n_1(19, 160, HypMethod::Series).value_mod1));
}

TEST_CASE("k = 1 is the identity on the reduced value") {
    const VolumeResult a = f_n_1(7, 160);
    const VolumeResult b = f_n_k(7, 1, 160);
    CHECK(a.value_mod1.serialize() == b.value_mod1.serialize());
}

TEST_CASE("scaled values f(N,k)") {
    const VolumeResult f72 = f_n_k(7, 2, required_precision(7, 2, 10));
    CHECK(f72.verdict == Verdict::NonIntegerProven);
    CHECK(close_to_decimal(f72.value_mod1, "0.4870097099553472", "0.0000000001"));

    const VolumeResult f135 = f_n_k(13, 5, required_precision(13, 5, 10));
    CHECK(f135.verdict == Verdict::NonIntegerProven);
    CHECK(close_to_decimal(f135.value_mod1, "0.6883036768269872", "0.000000001"));

    CHECK_THROWS_AS(f_n_k(13, 6, 160), KOutOfRangeError);  // max k = 5
    CHECK_THROWS_AS(f_n_k(13, 0, 160), KOutOfRangeError);
    CHECK_THROWS_AS(f_n_k(5, 1, 160), WrongResidueClassError);
    CHECK_THROWS_AS(f_n_k(91, 1, 160), NotPrimeError);
}

TEST_CASE("mod-1 consistency: reduced route equals unreduced route") {
    // unreduced: frac(k! N^(4k-4) * 2 N^6 * raw_sum) computed in one shot
    const long n = 7, k = 2;
    const Prec prec = required_precision(n, k, 10);
    const VolumeResult reduced = f_n_k(n, k, prec);
    const Prec wp = prec + kGuardBits;
    mpz_class mult;
    mpz_ui_pow_ui(mult.get_mpz_t(), n, 6);
    mult *= 2;
    mpz_class kf;
    mpz_fac_ui(kf.get_mpz_t(), k);
    mpz_class npow;
    mpz_ui_pow_ui(npow.get_mpz_t(), n, 4 * k - 4);
    mult *= kf * npow;
    auto [unreduced, ip] = ball::split_mod1(ball::mul_z(reduced.raw_sum, mult, wp), wp);
    (void)ip;
    CHECK(reduced.value_mod1.overlaps(unreduced));
}

TEST_CASE("verdict rules") {
    BigReal mid(96);
    mpfr_set_d(mid.mid_raw(), 0.5, MPFR_RNDN);
    detail::RawMpfr r(32);
    mpfr_set_d(r, 0.1, MPFR_RNDU);
    mid.rad_add(r.x);
    CHECK(verdict_of(mid) == Verdict::NonIntegerProven);

    BigReal near_zero(96);
    mpfr_set_d(near_zero.mid_raw(), 1e-7, MPFR_RNDN);
    mpfr_set_d(r, 1e-3, MPFR_RNDU);
    near_zero.rad_add(r.x);
    CHECK(verdict_of(near_zero) == Verdict::Inconclusive);

    BigReal table_val = BigReal::from_mpq(mpq_from_decimal("0.64692"), 96);
    mpfr_set_d(r, 1e-20, MPFR_RNDU);
    table_val.rad_add(r.x);
    CHECK(verdict_of(table_val) == Verdict::NonIntegerProven);

    BigReal near_one(96);
    mpfr_set_d(near_one.mid_raw(), 0.9999999, MPFR_RNDN);
    mpfr_set_d(r, 1e-3, MPFR_RNDU);
    near_one.rad_add(r.x);
    CHECK(verdict_of(near_one) == Verdict::Inconclusive);
}

TEST_CASE("required_precision formula") {
    // (6 log10 7 + 10 + log10 3 + 10) * log2 10 = 84.9 -> 88 after rounding up
    CHECK(required_precision(7, 1, 10) == 88);
    CHECK(required_precision(997, 1, 10) == 136);
    for (long k = 1; k < 5; ++k)
        CHECK(required_precision(13, k + 1, 10) > required_precision(13, k, 10));
    CHECK(required_precision(7, 1, 1) >= 64);
}

TEST_CASE("m-independence of the reduced value") {
    const VolumeResult small = f_n_1(7, 160, HypMethod::Series, ParamReading::Alternate, MChoice::Small);
    const VolumeResult large = f_n_1(7, 160, HypMethod::Series, ParamReading::Alternate, MChoice::Large);
    CHECK(small.m == 2);
    CHECK(large.m == 4);
    CHECK(small.value_mod1.overlaps(large.value_mod1));
}

TEST_CASE("determinism: identical inputs give identical canonical serializations") {
    const VolumeResult a = f_n_1(13, 160);
    const VolumeResult b = f_n_1(13, 160);
    CHECK(a.canonical_serialization() == b.canonical_serialization());
    const VolumeResult c = detail::parse_canonical(a.canonical_serialization());
    CHECK(c.canonical_serialization() == a.canonical_serialization());
}

TEST_CASE("insufficient budget degrades to Inconclusive, never a wrong verdict") {
    const VolumeResult starved = f_n_k(13, 5, 64);
    CHECK(starved.verdict == Verdict::Inconclusive);
}
