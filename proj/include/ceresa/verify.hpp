#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ceresa/cache.hpp"
#include "ceresa/golden_table.hpp"
#include "ceresa/volume.hpp"

namespace ceresa {

struct VerifyRowReport {
    long n = 0;
    long m = 0;
    bool pass = false;
    std::string expected;
    std::string computed;          // midpoint, 6 decimals
    std::string abs_diff;          // |computed - expected|, scientific
    std::string verdict;
    std::string other_reading;     // filled when the primary reading fails
    std::string error;             // exception text when computation failed
};

struct VerifyReport {
    std::vector<VerifyRowReport> rows;
    std::size_t passed = 0;
    bool all_pass() const { return passed == rows.size() && !rows.empty(); }
};

namespace detail {

/// |computed midpoint - printed value| <= 5e-6, the five-significant-digit
/// comparison of the reference table.
inline bool within_table_tolerance(const BigReal& v, const char* printed, std::string* diff_out) {
    const mpq_class q = mpq_from_decimal(printed);
    RawMpfr d(64);
    mpfr_sub_q(d, v.mid(), q.get_mpq_t(), MPFR_RNDA);
    mpfr_abs(d, d.x, MPFR_RNDU);
    if (diff_out) {
        char* str = nullptr;
        mpfr_asprintf(&str, "%.2Re", d.x);
        *diff_out = str;
        mpfr_free_str(str);
    }
    return mpfr_cmp_q(d.x, mpq_class(1, 200000).get_mpq_t()) <= 0;
}

} // namespace detail

/// Recomputes (or replays from cache) the golden rows and compares each to
/// the printed value at the 5-significant-digit tolerance. When a row fails
/// under the requested reading, the other reading is evaluated and reported
/// alongside, which is what settles the parameter-reading ambiguity.
inline VerifyReport verify_against_golden(std::span<const GoldenRow> table,
                                          ResultCache* cache,
                                          HypMethod method = HypMethod::Series,
                                          ParamReading reading = ParamReading::Alternate,
                                          long digits = 10,
                                          std::optional<long> only_row = std::nullopt) {
    VerifyReport report;
    for (const GoldenRow& g : table) {
        if (only_row && g.n != *only_row) continue;
        VerifyRowReport row;
        row.n = g.n;
        row.m = g.m;
        row.expected = g.value;
        try {
            const Prec prec = required_precision(g.n, 1, digits);
            const CacheKey key{g.n, g.m, 1, prec, method, reading};
            std::optional<VolumeResult> res;
            if (cache) res = cache->lookup(key);
            if (!res) {
                res = f_n_1(g.n, prec, method, reading, MChoice::Small);
                if (cache) cache->store(key, *res);
            }
            row.computed = res->value_mod1.to_fixed(6);
            row.verdict = to_string(res->verdict);
            row.pass = detail::within_table_tolerance(res->value_mod1, g.value, &row.abs_diff);
            if (!row.pass) {
                const ParamReading other =
                    reading == ParamReading::Alternate ? ParamReading::Printed : ParamReading::Alternate;
                const VolumeResult alt = f_n_1(g.n, prec, method, other, MChoice::Small);
                row.other_reading = std::string(to_string(other)) + " reading gives " +
                                    alt.value_mod1.to_fixed(6);
            }
        } catch (const std::exception& e) {
            row.pass = false;
            row.error = e.what();
        }
        if (row.pass) ++report.passed;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace ceresa
