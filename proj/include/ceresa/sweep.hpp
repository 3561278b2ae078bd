#pragma once

#include <atomic>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "ceresa/cache.hpp"
#include "ceresa/curve.hpp"
#include "ceresa/row_format.hpp"
#include "ceresa/volume.hpp"

namespace ceresa {

/// Valid moduli (prime, = 1 mod 3) in [7, max_n], ascending.
inline std::vector<long> valid_moduli_up_to(long max_n) {
    std::vector<long> out;
    for (long n = 7; n <= max_n; ++n)
        if (n % 3 == 1 && detail::is_prime_u64(static_cast<std::uint64_t>(n))) out.push_back(n);
    return out;
}

struct SweepOptions {
    long max_n = 1000;
    long k = 1;
    int jobs = 1;
    long digits = 10;  // target digits fed into required_precision
    HypMethod method = HypMethod::Series;
    ParamReading reading = ParamReading::Alternate;
    MChoice choice = MChoice::Small;
};

struct SweepRow {
    long n = 0;
    bool ok = false;
    std::string error;
    VolumeResult result;
};

/// Computes all valid moduli up to max_n with a worker pool. Rows come back
/// ordered by N regardless of completion order; per-row failures are recorded
/// and the sweep continues. Cache hits skip recomputation entirely.
inline std::vector<SweepRow> run_sweep(const SweepOptions& opt, ResultCache* cache) {
    const std::vector<long> moduli = valid_moduli_up_to(opt.max_n);
    std::vector<SweepRow> rows(moduli.size());

    int jobs = opt.jobs > 0 ? opt.jobs : 1;
    if (!mpfr_buildopt_tls_p()) jobs = 1;  // mpfr without TLS caches is not thread-safe

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= moduli.size()) return;
            const long n = moduli[i];
            SweepRow& row = rows[i];
            row.n = n;
            try {
                const Prec prec = required_precision(n, opt.k, opt.digits);
                const CurveParams cp = CurveParams::make(n, opt.choice);
                const CacheKey key{n, cp.m, opt.k, prec, opt.method, opt.reading};
                if (cache) {
                    if (auto hit = cache->lookup(key)) {
                        row.result = std::move(*hit);
                        row.ok = true;
                        continue;
                    }
                }
                row.result = f_n_k(n, opt.k, prec, opt.method, opt.reading, opt.choice);
                row.ok = true;
                if (cache) cache->store(key, row.result);
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

inline std::vector<TableRow> sweep_rows_to_table(const std::vector<SweepRow>& rows) {
    std::vector<TableRow> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.ok) {
            out.push_back(row_from_result(r.result));
        } else {
            TableRow t;
            t.n = r.n;
            t.m = 0;
            t.k = 0;
            t.value = "0.000000000000";
            t.err_exponent = 0;
            t.verdict = "error";
            t.prec_bits = 0;
            t.method = "none";
            t.elapsed_ms = 0;
            out.push_back(t);
        }
    }
    return out;
}

} // namespace ceresa
