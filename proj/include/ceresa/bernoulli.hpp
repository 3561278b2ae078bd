#pragma once

#include <deque>
#include <mutex>
#include <vector>

#include <gmpxx.h>

namespace ceresa::detail {

/// Exact Bernoulli numbers B_{2k} via the tangent-number triangle:
/// T_1..T_n are integers, B_{2k} = (-1)^(k-1) * 2k * T_k / (4^k (4^k - 1)).
/// Cached process-wide; deque keeps references stable across growth.
class BernoulliCache {
public:
    static const mpq_class& b2k(unsigned k) {  // k >= 1, returns B_{2k}
        static BernoulliCache cache;
        return cache.get(k);
    }

private:
    const mpq_class& get(unsigned k) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (k <= values_.size()) return values_[k - 1];
            grow(k);
            return values_[k - 1];
        }
    }

    void grow(unsigned k) {
        unsigned n = values_.empty() ? 64 : static_cast<unsigned>(values_.size());
        while (n < k) n *= 2;
        std::vector<mpz_class> t(n + 1);
        t[1] = 1;
        for (unsigned i = 2; i <= n; ++i) t[i] = t[i - 1] * (i - 1);
        for (unsigned i = 2; i <= n; ++i)
            for (unsigned j = i; j <= n; ++j) t[j] = t[j - 1] * (j - i) + t[j] * (j - i + 2);
        values_.clear();
        for (unsigned i = 1; i <= n; ++i) {
            mpz_class four_i;
            mpz_ui_pow_ui(four_i.get_mpz_t(), 4, i);
            mpq_class b(t[i] * 2 * i, four_i * (four_i - 1));
            b.canonicalize();
            if (i % 2 == 0) b = -b;
            values_.push_back(b);
        }
    }

    std::mutex mu_;
    std::deque<mpq_class> values_;
};

inline const mpq_class& bernoulli_2k(unsigned k) { return BernoulliCache::b2k(k); }

} // namespace ceresa::detail
