#include <doctest.h>

#include <random>

#include <ceresa/ball.hpp>

using namespace ceresa;

namespace {

BigReal from_q(long num, long den, Prec p) { return BigReal::from_mpq(mpq_class(num, den), p); }

bool ball_contains_q(const BigReal& b, long num, long den) {
    return b.contains(mpq_class(num, den));
}

} // namespace

TEST_CASE("ball arithmetic encloses exact rational results") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> dist(1, 1000);
    for (int trial = 0; trial < 200; ++trial) {
        const long an = dist(rng), ad = dist(rng), bn = dist(rng), bd = dist(rng);
        const mpq_class qa(an, ad), qb(bn, bd);
        const BigReal a = BigReal::from_mpq(qa, 64);
        const BigReal b = BigReal::from_mpq(qb, 64);
        CHECK(ball::add(a, b, 64).contains(qa + qb));
        CHECK(ball::sub(a, b, 64).contains(qa - qb));
        CHECK(ball::mul(a, b, 64).contains(qa * qb));
        CHECK(ball::div(a, b, 64).contains(mpq_class(qa / qb)));
    }
}

TEST_CASE("higher-precision evaluation lands inside the lower-precision ball") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> dist(1, 500);
    for (int trial = 0; trial < 100; ++trial) {
        const long n = dist(rng), d = dist(rng);
        const BigReal lo = ball::exp(ball::log(from_q(n, d, 96), 96), 96);
        const BigReal hi = ball::exp(ball::log(from_q(n, d, 192), 192), 192);
        CHECK(lo.encloses(hi));
        CHECK(mpfr_cmp(hi.rad(), lo.rad()) <= 0);
    }
}

TEST_CASE("transcendental ball ops bracket mpfr reference values") {
    const BigReal x = from_q(7, 3, 128);
    const BigReal ex = ball::exp(x, 128);
    detail::RawMpfr r(256);
    mpfr_set_q(r, mpq_class(7, 3).get_mpq_t(), MPFR_RNDN);
    mpfr_exp(r, r.x, MPFR_RNDN);
    detail::RawMpfr lo(32), hi(32);
    ex.lower(lo);
    ex.upper(hi);
    CHECK(mpfr_cmp(lo.x, r.x) <= 0);
    CHECK(mpfr_cmp(r.x, hi.x) <= 0);

    const BigReal s = ball::sin(BigReal::pi(128), 128);
    CHECK(s.contains(mpq_class(0)));

    const BigReal sq = ball::sqrt(from_q(2, 1, 128), 128);
    CHECK(ball::mul(sq, sq, 128).contains(mpq_class(2)));
}

TEST_CASE("pow and scaling") {
    const BigReal x = from_q(3, 7, 96);
    CHECK(ball::pow_ui(x, 5, 96).contains(mpq_class(243, 16807)));
    const BigReal y = ball::mul_2si(x, -12);
    CHECK(y.contains(mpq_class(3, 7 * 4096)));
    CHECK(ball::mul_z(x, mpz_class("123456789123456789"), 96)
              .contains(mpq_class(mpz_class("123456789123456789") * 3, 7)));
}

TEST_CASE("split_mod1 reduces into [0,1) and keeps the radius") {
    const BigReal x = from_q(22, 7, 96);  // 3.142857...
    auto [frac, ip] = ball::split_mod1(x, 96);
    CHECK(ip == 3);
    CHECK(frac.contains(mpq_class(1, 7)));
    CHECK(mpfr_cmp_ui(frac.mid(), 1) < 0);
    CHECK(mpfr_sgn(frac.mid()) >= 0);
}

TEST_CASE("intersection and overlap") {
    const BigReal a = from_q(1, 2, 64);
    BigReal b = from_q(1, 2, 64);
    CHECK(a.overlaps(b));
    auto both = ball::intersect(a, b, 64);
    REQUIRE(both.has_value());
    CHECK(both->contains(mpq_class(1, 2)));

    const BigReal c = from_q(3, 4, 64);
    CHECK_FALSE(a.overlaps(c));
    CHECK_FALSE(ball::intersect(a, c, 64).has_value());
}

TEST_CASE("division by a ball containing zero is rejected") {
    BigReal z = BigReal::zero(64);
    CHECK_THROWS_AS(ball::div(BigReal::one(64), z, 64), DomainError);
    CHECK_THROWS_AS(ball::log(z, 64), DomainError);
}

TEST_CASE("serialization round-trips bit-exactly") {
    const BigReal x = ball::exp(from_q(355, 113, 160), 160);
    const BigReal y = BigReal::deserialize(x.serialize());
    CHECK(mpfr_equal_p(x.mid(), y.mid()));
    CHECK(mpfr_equal_p(x.rad(), y.rad()));
    CHECK(x.prec() == y.prec());
    CHECK(x.serialize() == y.serialize());
}

TEST_CASE("exact zero radius stays zero through exact ops") {
    const BigReal one = BigReal::one(64);
    CHECK(one.exact());
    CHECK(ball::mul_2si(one, -5).exact());
    CHECK(ball_contains_q(ball::mul_2si(one, -5), 1, 32));
}
