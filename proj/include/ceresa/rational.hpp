#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include <gmpxx.h>

#include "ceresa/errors.hpp"

namespace ceresa {

/// Exact rational argument, normalized so that gcd(num, den) = 1 and den >= 1.
/// Arguments of the special-function kernel all have this shape (p/N plus
/// small integer shifts), so 64-bit components suffice; exact wide arithmetic
/// happens on mpq_class views.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }
    /// Implicit from integers: n/1.
    Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT(google-explicit-constructor)

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_positive() const { return num_ > 0; }
    /// True for 0, -1, -2, ... (the Gamma poles / forbidden lower parameters).
    bool is_nonpositive_integer() const { return den_ == 1 && num_ <= 0; }

    mpq_class to_mpq() const { return mpq_class(static_cast<long>(num_), static_cast<long>(den_)); }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_mpq(a.to_mpq() + b.to_mpq());
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_mpq(a.to_mpq() - b.to_mpq());
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_mpq(a.to_mpq() * b.to_mpq());
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return cmp(a.to_mpq(), b.to_mpq()) < 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational from_mpq(const mpq_class& q) {
        mpq_class c(q);
        c.canonicalize();
        if (!c.get_num().fits_slong_p() || !c.get_den().fits_slong_p())
            throw DomainError("rational out of 64-bit range: " + c.get_str());
        Rational r;
        r.num_ = c.get_num().get_si();
        r.den_ = c.get_den().get_si();
        return r;
    }

private:
    void normalize() {
        if (den_ == 0) throw DomainError("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

/// Exact rational from a plain decimal literal like "-0.64692".
inline mpq_class mpq_from_decimal(const std::string& s) {
    const auto dot = s.find('.');
    std::string digits = s;
    unsigned long scale = 0;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        scale = s.size() - dot - 1;
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    mpq_class q(mpz_class(digits, 10), den);  // explicit base: leading zeros are not octal
    q.canonicalize();
    return q;
}

} // namespace ceresa
