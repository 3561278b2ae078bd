#include <doctest.h>

#include <complex>
#include <set>

#include <ceresa/curve.hpp>
#include <ceresa/sweep.hpp>

using namespace ceresa;

TEST_CASE("modulus validation") {
    CHECK(validate_curve_modulus(7) == 7);
    CHECK(validate_curve_modulus(997) == 997);
    CHECK_THROWS_AS(validate_curve_modulus(5), WrongResidueClassError);
    CHECK_THROWS_AS(validate_curve_modulus(91), NotPrimeError);  // 7 * 13
    CHECK_THROWS_AS(validate_curve_modulus(1), NotPrimeError);
}

TEST_CASE("cube roots of unity") {
    CHECK(find_m(7) == std::pair<long, long>{2, 4});
    CHECK(find_m(13) == std::pair<long, long>{3, 9});
    CHECK(find_m(19) == std::pair<long, long>{7, 11});
    CHECK(find_m(31).first == 5);

    for (long n : valid_moduli_up_to(1000)) {
        const auto [lo, hi] = find_m(n);
        CAPTURE(n);
        CHECK(1 < lo);
        CHECK(lo < hi);
        CHECK(hi < n - 1);
        CHECK((lo * hi) % n == 1);       // m m' = m^3 = 1
        CHECK((lo + hi) % n == n - 1);   // roots of x^2 + x + 1 sum to -1
        CHECK((lo * lo) % n == hi);
    }
}

TEST_CASE("admissible set") {
    const auto adm7 = admissible_set(7, 2);
    REQUIRE(adm7.size() == 3);
    CHECK(adm7[0].h == 1);
    CHECK(adm7[1].h == 2);
    CHECK(adm7[2].h == 4);
    CHECK(adm7[0].t2 == 2);
    CHECK(adm7[0].t3 == 4);

    for (long n : valid_moduli_up_to(200)) {
        const auto [m, m2] = find_m(n);
        const auto adm = admissible_set(n, m);
        CAPTURE(n);
        CHECK(adm.size() == static_cast<std::size_t>((n - 1) / 2));

        std::set<long> hs;
        for (const auto& ai : adm) {
            CHECK(ai.h + ai.t2 + ai.t3 == n);
            hs.insert(ai.h);
        }
        // closure under h -> h m mod N
        for (const auto& ai : adm) CHECK(hs.count((ai.h * m) % n) == 1);
        // exactly one of h, N-h is admissible
        for (long h = 1; h < n; ++h) CHECK((hs.count(h) + hs.count(n - h)) == 1);
        // same set for the other root
        const auto adm2 = admissible_set(n, m2);
        std::set<long> hs2;
        for (const auto& ai : adm2) hs2.insert(ai.h);
        CHECK(hs == hs2);
    }
}

TEST_CASE("periods: exact expansion and identities") {
    // zeta^0 case: (1-z)(1-z^2) = 1 - z - z^2 + z^3
    const auto p0 = period(1, 2, 0, 0, 7);
    CHECK(p0.coeffs() == std::vector<long long>{1, -1, -1, 1, 0, 0});

    // hand expansion: (1-z)(1-z^2) z^3 = z^3 - z^4 - z^5 + z^6, and
    // z^6 = -(1 + z + ... + z^5) mod the cyclotomic relation
    const auto p1 = period(1, 2, 1, 1, 7);
    CHECK(p1.coeffs() == std::vector<long long>{-1, -1, -1, 0, -2, -2});

    // product oracle: period equals the product of its exact factors
    const auto one_minus_za = CyclotomicInteger::from_group_vector(7, {1, -1, 0, 0, 0, 0, 0});
    const auto one_minus_zb = CyclotomicInteger::from_group_vector(7, {1, 0, -1, 0, 0, 0, 0});
    const auto z3 = CyclotomicInteger::from_group_vector(7, {0, 0, 0, 1, 0, 0, 0});
    CHECK(p1 == one_minus_za * one_minus_zb * z3);

    // geometric sums over i vanish for a != 0 mod N
    for (long n : {7L, 13L}) {
        auto acc = CyclotomicInteger::zero(n);
        for (long i = 0; i < n; ++i) acc = acc + period(1, 2, i, 0, n);
        CAPTURE(n);
        CHECK(acc.is_zero());
    }

    CHECK_THROWS_AS(period(0, 2, 0, 0, 7), IndexSetError);
    CHECK_THROWS_AS(period(3, 4, 0, 0, 7), IndexSetError);  // a + b = 0 mod 7
}

TEST_CASE("embedding evaluation matches direct complex arithmetic") {
    const long n = 13;
    for (const auto [a, b, i, j] : {std::array<long, 4>{1, 2, 1, 1}, {3, 5, 2, 7}, {11, 7, 0, 4}}) {
        const auto p = period(a, b, i, j, n);
        const std::complex<double> z = std::polar(1.0, 2.0 * 3.14159265358979323846 / n);
        const std::complex<double> direct = (1.0 - std::pow(z, a)) * (1.0 - std::pow(z, b)) *
                                            std::pow(z, a * i + b * j);
        const std::complex<double> viabasis = p.eval_embedding();
        CAPTURE(a);
        CAPTURE(b);
        CHECK(std::abs(direct - viabasis) < 1e-9);
    }
}

TEST_CASE("cyclotomic ring identities") {
    const long n = 11;
    const auto x = period(1, 3, 1, 0, n);
    const auto y = period(2, 5, 0, 1, n);
    const auto z = period(4, 1, 2, 2, n);
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x * y == y * x);
    CHECK((x - x).is_zero());
}
