#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ceresa/errors.hpp"

namespace ceresa {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1ULL) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1ULL;
    }
    return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs (fixed witness set).
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1ULL) == 0) {
        d >>= 1ULL;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

/// Checks that N is prime and N = 1 mod 3 (so a cube root of unity exists).
inline long validate_curve_modulus(long n) {
    if (n < 2 || !detail::is_prime_u64(static_cast<std::uint64_t>(n)))
        throw NotPrimeError("N = " + std::to_string(n) + " is not prime");
    if (n % 3 != 1)
        throw WrongResidueClassError("N = " + std::to_string(n) +
                                     " is not 1 mod 3; no cube root of unity exists");
    return n;
}

/// Both roots of x^2 + x + 1 mod N, ascending. They multiply to 1 mod N and
/// sum to N - 1.
inline std::pair<long, long> find_m(long n) {
    validate_curve_modulus(n);
    long first = 0, second = 0;
    for (long m = 2; m + 1 < n; ++m) {
        if ((m * m + m + 1) % n == 0) {
            if (first == 0) {
                first = m;
            } else {
                second = m;
                break;
            }
        }
    }
    if (first == 0 || second == 0)
        throw DomainError("no cube root of unity found for N = " + std::to_string(n));
    return {first, second};
}

enum class MChoice { Small, Large };

/// Validated (N, m) with the derived exponent triple (1, m, m^2 mod N).
struct CurveParams {
    long n = 0;
    long m = 0;        // the chosen root (presentation / bookkeeping)
    long m_sq = 0;     // m^2 mod N, the other root
    long m_small = 0;  // canonical orientation root
    long m_large = 0;

    static CurveParams make(long n, MChoice choice = MChoice::Small) {
        const auto [lo, hi] = find_m(n);
        CurveParams p;
        p.n = n;
        p.m_small = lo;
        p.m_large = hi;
        p.m = choice == MChoice::Small ? lo : hi;
        p.m_sq = choice == MChoice::Small ? hi : lo;
        return p;
    }
    static CurveParams make_with_m(long n, long m) {
        const auto [lo, hi] = find_m(n);
        if (m != lo && m != hi)
            throw DomainError("m = " + std::to_string(m) + " is not a root of x^2+x+1 mod " + std::to_string(n));
        return make(n, m == lo ? MChoice::Small : MChoice::Large);
    }
};

/// h with its triple (h, <hm>, <hm^2>) summing to N.
struct AdmissibleIndex {
    long h = 0;
    long t2 = 0;  // <h m>
    long t3 = 0;  // <h m^2>
};

/// All h in (0, N) with h + <hm> + <hm^2> = N, ascending.
inline std::vector<AdmissibleIndex> admissible_set(long n, long m) {
    const long m_sq = static_cast<long>((static_cast<unsigned __int128>(m) * m) % n);
    std::vector<AdmissibleIndex> out;
    out.reserve(static_cast<std::size_t>((n - 1) / 2));
    for (long h = 1; h < n; ++h) {
        const long t2 = static_cast<long>((static_cast<unsigned __int128>(h) * m) % n);
        const long t3 = static_cast<long>((static_cast<unsigned __int128>(h) * m_sq) % n);
        if (h + t2 + t3 == n) out.push_back({h, t2, t3});
    }
    return out;
}

/// Exact element of Z[zeta_N] in the power basis 1, zeta, ..., zeta^(N-2),
/// canonical modulo 1 + zeta + ... + zeta^(N-1) = 0.
class CyclotomicInteger {
public:
    CyclotomicInteger(long n, std::vector<long long> coeffs) : n_(n), c_(std::move(coeffs)) {
        if (c_.size() != static_cast<std::size_t>(n_ - 1))
            throw DomainError("cyclotomic coefficient vector must have length N-1");
    }
    static CyclotomicInteger zero(long n) {
        return CyclotomicInteger(n, std::vector<long long>(static_cast<std::size_t>(n - 1), 0));
    }
    /// Reduce a length-N exponent vector (coefficients of zeta^0..zeta^(N-1)).
    static CyclotomicInteger from_group_vector(long n, const std::vector<long long>& v) {
        std::vector<long long> c(static_cast<std::size_t>(n - 1));
        for (long i = 0; i + 1 < n; ++i) c[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(n - 1)];
        return CyclotomicInteger(n, std::move(c));
    }

    long modulus() const { return n_; }
    const std::vector<long long>& coeffs() const { return c_; }
    bool is_zero() const {
        for (long long v : c_)
            if (v != 0) return false;
        return true;
    }

    friend CyclotomicInteger operator+(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        auto c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
        return CyclotomicInteger(a.n_, std::move(c));
    }
    friend CyclotomicInteger operator-(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        auto c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
        return CyclotomicInteger(a.n_, std::move(c));
    }
    friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        const long n = a.n_;
        std::vector<long long> g(static_cast<std::size_t>(n), 0);
        for (long i = 0; i + 1 < n; ++i) {
            if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
            for (long j = 0; j + 1 < n; ++j)
                g[static_cast<std::size_t>((i + j) % n)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
        }
        return from_group_vector(n, g);
    }
    friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

    std::complex<double> eval_embedding() const {
        std::complex<double> acc(0.0, 0.0);
        const double theta = 2.0 * 3.14159265358979323846 / static_cast<double>(n_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const double ang = theta * static_cast<double>(i);
            acc += static_cast<double>(c_[i]) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return acc;
    }

    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(c_[i]);
        }
        return out + "]";
    }

private:
    long n_;
    std::vector<long long> c_;
};

/// Exact normalized period (1 - zeta^a)(1 - zeta^b) zeta^(ai+bj) of the
/// rescaled 1-form along the alpha^i beta^j kappa_0 loop.
inline CyclotomicInteger period(long a, long b, long i, long j, long n) {
    const auto norm = [n](long v) { return ((v % n) + n) % n; };
    const long ar = norm(a), br = norm(b), abr = norm(a + b);
    if (ar == 0 || br == 0 || abr == 0)
        throw IndexSetError("(a, b) outside the index set: a, b, a+b must be nonzero mod N");
    std::vector<long long> g(static_cast<std::size_t>(n), 0);
    const long k = norm(norm(a * norm(i)) + norm(b * norm(j)));
    g[static_cast<std::size_t>(k)] += 1;
    g[static_cast<std::size_t>(norm(k + ar))] -= 1;
    g[static_cast<std::size_t>(norm(k + br))] -= 1;
    g[static_cast<std::size_t>(norm(k + abr))] += 1;
    return CyclotomicInteger::from_group_vector(n, g);
}

} // namespace ceresa
