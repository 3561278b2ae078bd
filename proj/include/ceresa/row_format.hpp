#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ceresa/errors.hpp"
#include "ceresa/volume.hpp"

namespace ceresa {

/// One output row; value is stored as fixed 12-decimal text so that emit and
/// parse round-trip field-for-field.
struct TableRow {
    long n = 0;
    long m = 0;
    long k = 1;
    std::string value;        // fixed 12 decimal places
    long err_exponent = 0;    // base-10 exponent of the error radius
    std::string verdict;
    long prec_bits = 0;
    std::string method;
    long elapsed_ms = 0;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

inline TableRow row_from_result(const VolumeResult& r) {
    TableRow row;
    row.n = r.n;
    row.m = r.m;
    row.k = r.k;
    row.value = r.value_mod1.to_fixed(12);
    const long e = r.value_mod1.err_exp10();
    row.err_exponent = e == INT32_MIN ? -9999 : e;
    row.verdict = to_string(r.verdict);
    row.prec_bits = r.prec_bits;
    row.method = to_string(r.method);
    row.elapsed_ms = std::lround(r.elapsed_s * 1000.0);
    return row;
}

inline const char* csv_header() {
    return "N,m,k,value,err_exponent,verdict,prec_bits,method,elapsed_ms";
}

inline std::string to_csv_line(const TableRow& r) {
    std::ostringstream os;
    os << r.n << ',' << r.m << ',' << r.k << ',' << r.value << ',' << r.err_exponent << ','
       << r.verdict << ',' << r.prec_bits << ',' << r.method << ',' << r.elapsed_ms;
    return os.str();
}

inline std::string emit_csv(const std::vector<TableRow>& rows) {
    std::string out = csv_header();
    out += '\n';
    for (const auto& r : rows) {
        out += to_csv_line(r);
        out += '\n';
    }
    return out;
}

inline TableRow parse_csv_line(const std::string& line) {
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
        const auto nx = line.find(',', pos);
        if (nx == std::string::npos) {
            f.push_back(line.substr(pos));
            break;
        }
        f.push_back(line.substr(pos, nx - pos));
        pos = nx + 1;
    }
    if (f.size() != 9) throw DomainError("bad CSV row: " + line);
    TableRow r;
    r.n = std::stol(f[0]);
    r.m = std::stol(f[1]);
    r.k = std::stol(f[2]);
    r.value = f[3];
    r.err_exponent = std::stol(f[4]);
    r.verdict = f[5];
    r.prec_bits = std::stol(f[6]);
    r.method = f[7];
    r.elapsed_ms = std::stol(f[8]);
    return r;
}

inline std::vector<TableRow> parse_csv(const std::string& text) {
    std::vector<TableRow> rows;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {
            if (line != csv_header()) throw DomainError("bad CSV header: " + line);
            first = false;
            continue;
        }
        rows.push_back(parse_csv_line(line));
    }
    return rows;
}

inline nlohmann::json row_to_json(const TableRow& r) {
    return nlohmann::json{{"N", r.n},
                          {"m", r.m},
                          {"k", r.k},
                          {"value", r.value},
                          {"err_exponent", r.err_exponent},
                          {"verdict", r.verdict},
                          {"prec_bits", r.prec_bits},
                          {"method", r.method},
                          {"elapsed_ms", r.elapsed_ms}};
}

} // namespace ceresa
