#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "ceresa/errors.hpp"
#include "ceresa/volume.hpp"

namespace ceresa {

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace detail

struct CacheKey {
    long n = 0;
    long m = 0;
    long k = 1;
    Prec prec_bits = 0;
    HypMethod method = HypMethod::Series;
    ParamReading reading = ParamReading::Alternate;

    std::string str() const {
        return std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + "," +
               std::to_string(prec_bits) + "," + to_string(method) + "," + to_string(reading);
    }
};

struct CacheStats {
    std::size_t entries = 0;
    std::size_t corrupt_lines = 0;
    std::uintmax_t file_bytes = 0;
};

/// Persistent result cache: append-only line records, each carrying an FNV-1a
/// checksum. Corrupt lines are skipped (and counted), never silently reused.
/// Hits replay the canonical payload byte-identically, including the original
/// elapsed-time metadata, which is what makes repeated sweeps reproduce
/// output files exactly.
class ResultCache {
public:
    /// Directory precedence: explicit flag > CERESA_CACHE_DIR > default.
    static std::filesystem::path resolve_dir(const std::string& flag_dir) {
        if (!flag_dir.empty()) return flag_dir;
        if (const char* env = std::getenv("CERESA_CACHE_DIR"); env && *env) return env;
        if (const char* home = std::getenv("HOME"); home && *home)
            return std::filesystem::path(home) / ".cache" / "ceresa";
        return std::filesystem::path(".ceresa-cache");
    }

    explicit ResultCache(const std::filesystem::path& dir) : dir_(dir), file_(dir / "results-v1.cache") {
        std::filesystem::create_directories(dir_);
        load();
    }

    const std::filesystem::path& file_path() const { return file_; }
    const std::filesystem::path& dir() const { return dir_; }

    std::optional<VolumeResult> lookup(const CacheKey& key) {
        std::lock_guard<std::mutex> lock(mu_);
        const auto it = map_.find(key.str());
        if (it == map_.end()) return std::nullopt;
        VolumeResult r = detail::parse_canonical(it->second.payload);
        r.elapsed_s = static_cast<double>(it->second.elapsed_ms) / 1000.0;
        return r;
    }

    void store(const CacheKey& key, const VolumeResult& r) {
        std::lock_guard<std::mutex> lock(mu_);
        Entry e;
        e.payload = r.canonical_serialization();
        e.elapsed_ms = std::lround(r.elapsed_s * 1000.0);  // same rounding as the CSV column
        const std::string body =
            "k=" + key.str() + "\te=" + std::to_string(e.elapsed_ms) + "\tp=" + e.payload;
        std::ofstream out(file_, std::ios::app | std::ios::binary);
        out << body << "\tc=" << detail::hex64(detail::fnv1a64(body)) << "\n";
        out.flush();
        map_[key.str()] = std::move(e);
    }

    CacheStats stats() {
        std::lock_guard<std::mutex> lock(mu_);
        CacheStats s;
        s.entries = map_.size();
        s.corrupt_lines = corrupt_;
        std::error_code ec;
        s.file_bytes = std::filesystem::file_size(file_, ec);
        if (ec) s.file_bytes = 0;
        return s;
    }

    void clear() {
        std::lock_guard<std::mutex> lock(mu_);
        map_.clear();
        corrupt_ = 0;
        std::error_code ec;
        std::filesystem::remove(file_, ec);
    }

private:
    struct Entry {
        std::string payload;
        long elapsed_ms = 0;
    };

    void load() {
        std::ifstream in(file_, std::ios::binary);
        if (!in) return;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto cpos = line.rfind("\tc=");
            if (cpos == std::string::npos) {
                ++corrupt_;
                continue;
            }
            const std::string body = line.substr(0, cpos);
            const std::string sum = line.substr(cpos + 3);
            if (sum != detail::hex64(detail::fnv1a64(body))) {
                ++corrupt_;
                continue;
            }
            // body: k=<key>\te=<ms>\tp=<payload>
            if (body.rfind("k=", 0) != 0) {
                ++corrupt_;
                continue;
            }
            const auto epos = body.find("\te=");
            const auto ppos = body.find("\tp=", epos == std::string::npos ? 0 : epos);
            if (epos == std::string::npos || ppos == std::string::npos) {
                ++corrupt_;
                continue;
            }
            Entry e;
            e.payload = body.substr(ppos + 3);
            try {
                e.elapsed_ms = std::stol(body.substr(epos + 3, ppos - epos - 3));
                (void)detail::parse_canonical(e.payload);  // reject malformed payloads
            } catch (const std::exception&) {
                ++corrupt_;
                continue;
            }
            map_[body.substr(2, epos - 2)] = std::move(e);
        }
    }

    std::filesystem::path dir_;
    std::filesystem::path file_;
    std::mutex mu_;
    std::unordered_map<std::string, Entry> map_;
    std::size_t corrupt_ = 0;
};

} // namespace ceresa
