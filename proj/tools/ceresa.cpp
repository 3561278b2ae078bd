// ceresa: certified harmonic-volume trace values f(N, k) for quotient Fermat
// curves, with machine-checked non-integrality verdicts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <ceresa/ceresa.hpp>

namespace {

using namespace ceresa;

constexpr int kExitProven = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitVerifyMismatch = 4;

struct CommonFlags {
    long digits = 10;
    std::string method = "series";
    std::string reading = "alternate";
    std::string m_choice = "small";
    std::string cache_dir;
    bool json = false;

    HypMethod parsed_method() const { return detail::parse_method(method); }
    ParamReading parsed_reading() const { return detail::parse_reading(reading); }
    MChoice parsed_choice() const {
        if (m_choice == "small") return MChoice::Small;
        if (m_choice == "large") return MChoice::Large;
        throw DomainError("unknown m-choice: " + m_choice);
    }
};

void add_global(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--cache-dir", f.cache_dir,
                    "cache directory (overrides CERESA_CACHE_DIR and the default)");
    cmd->add_flag("--json", f.json, "emit JSON rows instead of text");
}

void add_common(CLI::App* cmd, CommonFlags& f) {
    add_global(cmd, f);
    cmd->add_option("--digits", f.digits, "target certified digits beyond the verdict requirement")
        ->check(CLI::Range(1L, 200L));
    cmd->add_option("--method", f.method, "series|quadrature|both")
        ->check(CLI::IsMember({"series", "quadrature", "both"}));
    cmd->add_option("--param-reading", f.reading, "printed|alternate hypergeometric parameter reading")
        ->check(CLI::IsMember({"printed", "alternate"}));
    cmd->add_option("--m-choice", f.m_choice, "which root of x^2+x+1 to report")
        ->check(CLI::IsMember({"small", "large"}));
}

int cmd_compute(long n, long k, const CommonFlags& f) {
    ResultCache cache(ResultCache::resolve_dir(f.cache_dir));
    const Prec prec = required_precision(n, k, f.digits);
    const CurveParams cp = CurveParams::make(n, f.parsed_choice());
    const CacheKey key{n, cp.m, k, prec, f.parsed_method(), f.parsed_reading()};
    std::optional<VolumeResult> res = cache.lookup(key);
    if (!res) {
        res = f_n_k(n, k, prec, f.parsed_method(), f.parsed_reading(), f.parsed_choice());
        cache.store(key, *res);
    }
    const TableRow row = row_from_result(*res);
    if (f.json) {
        std::cout << row_to_json(row).dump() << "\n";
    } else {
        std::cout << csv_header() << "\n" << to_csv_line(row) << "\n";
    }
    return res->verdict == Verdict::NonIntegerProven ? kExitProven : kExitInconclusive;
}

int cmd_sweep(long max_n, long k, int jobs, const std::string& out_path, const CommonFlags& f) {
    if (max_n < 7) throw DomainError("--max-n must be at least 7");
    ResultCache cache(ResultCache::resolve_dir(f.cache_dir));
    SweepOptions opt;
    opt.max_n = max_n;
    opt.k = k;
    opt.jobs = jobs;
    opt.digits = f.digits;
    opt.method = f.parsed_method();
    opt.reading = f.parsed_reading();
    opt.choice = f.parsed_choice();
    const auto rows = run_sweep(opt, &cache);
    const auto table = sweep_rows_to_table(rows);
    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw DomainError("cannot open output file: " + out_path);
        out << emit_csv(table);
    }
    std::size_t proven = 0, inconclusive = 0, failed = 0;
    for (const auto& r : rows) {
        if (!r.ok) {
            ++failed;
            std::cerr << "N=" << r.n << " failed: " << r.error << "\n";
        } else if (r.result.verdict == Verdict::NonIntegerProven) {
            ++proven;
        } else {
            ++inconclusive;
        }
    }
    if (f.json) {
        nlohmann::json j;
        for (const auto& r : table) j.push_back(row_to_json(r));
        std::cout << j.dump() << "\n";
    }
    std::cout << "rows " << rows.size() << ": proven " << proven << ", inconclusive "
              << inconclusive << ", failed " << failed << " -> " << out_path << "\n";
    return 0;
}

int cmd_verify(std::optional<long> row_filter, const CommonFlags& f) {
    ResultCache cache(ResultCache::resolve_dir(f.cache_dir));
    const VerifyReport rep =
        verify_against_golden(kGoldenTable, &cache, f.parsed_method(), f.parsed_reading(),
                              f.digits, row_filter);
    if (rep.rows.empty()) throw DomainError("--row does not match any table entry");
    if (f.json) {
        nlohmann::json j;
        for (const auto& r : rep.rows) {
            j.push_back({{"N", r.n},
                         {"m", r.m},
                         {"pass", r.pass},
                         {"expected", r.expected},
                         {"computed", r.computed},
                         {"abs_diff", r.abs_diff},
                         {"verdict", r.verdict},
                         {"other_reading", r.other_reading},
                         {"error", r.error}});
        }
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& r : rep.rows) {
            std::cout << (r.pass ? "PASS" : "FAIL") << " N=" << r.n << " expected " << r.expected
                      << " computed " << r.computed;
            if (!r.abs_diff.empty()) std::cout << " |diff| " << r.abs_diff;
            if (!r.verdict.empty()) std::cout << " " << r.verdict;
            if (!r.other_reading.empty()) std::cout << " [" << r.other_reading << "]";
            if (!r.error.empty()) std::cout << " error: " << r.error;
            std::cout << "\n";
        }
    }
    std::cout << rep.passed << "/" << rep.rows.size() << " rows match\n";
    return rep.all_pass() ? 0 : kExitVerifyMismatch;
}

int cmd_periods(long n, long a, long b, long i, long j, const CommonFlags& f) {
    validate_curve_modulus(n);
    const CyclotomicInteger p = period(a, b, i, j, n);
    const auto z = p.eval_embedding();
    if (f.json) {
        nlohmann::json out{{"N", n}, {"a", a},       {"b", b},
                           {"i", i}, {"j", j},       {"coeffs", p.coeffs()},
                           {"re", z.real()},         {"im", z.imag()}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "(1-z^" << a << ")(1-z^" << b << ")z^(" << a << "*" << i << "+" << b << "*"
                  << j << ") mod Phi_" << n << " = " << p.str() << "\n";
        std::printf("complex evaluation: %.15g + %.15gi\n", z.real(), z.imag());
    }
    return 0;
}

int cmd_cache(const std::string& action, const CommonFlags& f) {
    ResultCache cache(ResultCache::resolve_dir(f.cache_dir));
    if (action == "path") {
        std::cout << cache.file_path().string() << "\n";
    } else if (action == "clear") {
        cache.clear();
        std::cout << "cache cleared\n";
    } else if (action == "stats") {
        const CacheStats s = cache.stats();
        if (f.json) {
            std::cout << nlohmann::json{{"entries", s.entries},
                                        {"corrupt_lines", s.corrupt_lines},
                                        {"file_bytes", s.file_bytes}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "entries " << s.entries << ", corrupt lines " << s.corrupt_lines
                      << ", file bytes " << s.file_bytes << "\n";
        }
    } else {
        throw DomainError("cache action must be path|clear|stats");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified harmonic-volume trace values for quotient Fermat curves"};
    app.require_subcommand(1);

    CommonFlags flags;
    long n = 0, k = 1, a = 0, b = 0, i = 0, j = 0, max_n = 0;
    int jobs = 1;
    std::string out_path, cache_action;
    std::optional<long> row_filter;

    auto* compute = app.add_subcommand("compute", "compute f(N, k) and the verdict");
    compute->add_option("--n", n, "prime modulus, 1 mod 3")->required();
    compute->add_option("--k", k, "cycle index, 1 <= k <= (N-3)/2");
    add_common(compute, flags);

    auto* sweep = app.add_subcommand("sweep", "compute every valid N <= max-n into a CSV");
    sweep->add_option("--max-n", max_n, "upper bound for N")->required();
    sweep->add_option("--k", k, "cycle index");
    sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    sweep->add_option("--out", out_path, "output CSV path")->required();
    add_common(sweep, flags);

    auto* verify = app.add_subcommand("verify", "check computed values against the built-in table");
    long row_opt = -1;
    verify->add_option("--row", row_opt, "verify a single N");
    add_common(verify, flags);

    auto* periods = app.add_subcommand("periods", "exact cyclotomic period expansion");
    periods->add_option("--n", n, "modulus")->required();
    periods->add_option("--a", a)->required();
    periods->add_option("--b", b)->required();
    periods->add_option("--i", i)->required();
    periods->add_option("--j", j)->required();
    add_global(periods, flags);

    auto* cache_cmd = app.add_subcommand("cache", "cache maintenance: path|clear|stats");
    cache_cmd->add_option("action", cache_action, "path|clear|stats")->required();
    add_global(cache_cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }

    try {
        if (compute->parsed()) return cmd_compute(n, k, flags);
        if (sweep->parsed()) return cmd_sweep(max_n, k, jobs, out_path, flags);
        if (verify->parsed()) {
            if (row_opt >= 0) row_filter = row_opt;
            return cmd_verify(row_filter, flags);
        }
        if (periods->parsed()) return cmd_periods(n, a, b, i, j, flags);
        if (cache_cmd->parsed()) return cmd_cache(cache_action, flags);
    } catch (const InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitInternal;
    } catch (const PrecisionError& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const NotPrimeError& e) {
        std::cerr << "invalid input (NotPrime): " << e.what() << "\n";
        return kExitInput;
    } catch (const WrongResidueClassError& e) {
        std::cerr << "invalid input (WrongResidueClass): " << e.what() << "\n";
        return kExitInput;
    } catch (const KOutOfRangeError& e) {
        std::cerr << "invalid input (KOutOfRange): " << e.what() << "\n";
        return kExitInput;
    } catch (const IndexSetError& e) {
        std::cerr << "invalid input (IndexError): " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
