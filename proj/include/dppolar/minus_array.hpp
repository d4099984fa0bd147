// The minus array minus_L(n,k): for each code size (n,k) and a fixed list
// size L, how many information bits the construction assigns to the first
// (minus) half of the message vector. Includes the text persistence format:
//
//   # minus-array L=<int> version=1
//   <n>\t<k>\t<minus>          (sorted by (n,k), k = 0..n inclusive per n)
//
// plus an optional cursor comment used by resumable training runs.
#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"

namespace dppolar {

struct MinusArrayError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline long minus_range_lo(std::size_t n, std::size_t k) {
    const long v = static_cast<long>(k) - static_cast<long>(n / 2);
    return v > 0 ? v : 0;
}

inline long minus_range_hi(std::size_t n, std::size_t k) {
    return static_cast<long>(k < n / 2 ? k : n / 2);
}

struct MinusArray {
    int list_size = 0;
    // entries[n][k] = minus value; rows may be partial only inside training
    // checkpoints, every load/save path validates completeness.
    std::map<std::size_t, std::map<std::size_t, int>> entries;

    bool has(std::size_t n, std::size_t k) const {
        auto it = entries.find(n);
        return it != entries.end() && it->second.count(k) > 0;
    }

    int minus(std::size_t n, std::size_t k) const {
        auto it = entries.find(n);
        if (it == entries.end()) throw MinusArrayError("minus array has no row for n=" + std::to_string(n));
        auto jt = it->second.find(k);
        if (jt == it->second.end())
            throw MinusArrayError("minus array missing entry (n=" + std::to_string(n) +
                                  ", k=" + std::to_string(k) + ")");
        return jt->second;
    }

    void set(std::size_t n, std::size_t k, int value) {
        if (!is_power_of_two(n) || n < 2) throw std::invalid_argument("n must be a power of two >= 2");
        if (k > n) throw std::invalid_argument("k must be in [0, n]");
        if (value < minus_range_lo(n, k) || value > minus_range_hi(n, k))
            throw MinusArrayError("minus value out of range at (n=" + std::to_string(n) +
                                  ", k=" + std::to_string(k) + "): " + std::to_string(value));
        entries[n][k] = value;
    }

    std::size_t max_n() const { return entries.empty() ? 0 : entries.rbegin()->first; }

    std::size_t entry_count() const {
        std::size_t c = 0;
        for (const auto& [n, row] : entries) c += row.size();
        return c;
    }
};

// Range check every entry and require each present n-row to cover k = 0..n.
inline void validate_minus_array(const MinusArray& arr) {
    for (const auto& [n, row] : arr.entries) {
        if (!is_power_of_two(n) || n < 2) throw MinusArrayError("invalid row length n=" + std::to_string(n));
        if (row.size() != n + 1)
            throw MinusArrayError("gap in coverage: row n=" + std::to_string(n) + " has " +
                                  std::to_string(row.size()) + " of " + std::to_string(n + 1) + " entries");
        for (const auto& [k, v] : row) {
            if (k > n) throw MinusArrayError("entry k out of range at n=" + std::to_string(n));
            if (v < minus_range_lo(n, k) || v > minus_range_hi(n, k))
                throw MinusArrayError("minus value out of range at (n=" + std::to_string(n) +
                                      ", k=" + std::to_string(k) + "): " + std::to_string(v));
        }
    }
}

// Additionally require the contiguous power-of-two chain 2, 4, ..., max_n,
// which is what the recursive construction consumes.
inline void validate_minus_array_chain(const MinusArray& arr) {
    validate_minus_array(arr);
    if (arr.entries.empty()) throw MinusArrayError("minus array is empty");
    for (std::size_t n = 2; n <= arr.max_n(); n <<= 1)
        if (!arr.entries.count(n))
            throw MinusArrayError("minus array chain is missing n=" + std::to_string(n));
}

struct TrainingCursor {
    std::size_t n = 0, k = 0;            // next entry to compute
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double ebn0_db = 0.0;
};

namespace detail {

struct ParsedMinusFile {
    MinusArray arr;
    std::optional<TrainingCursor> cursor;
};

inline ParsedMinusFile parse_minus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MinusArrayError("cannot open minus-array file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw MinusArrayError("malformed minus-array file (empty): " + path);
    ParsedMinusFile out;
    int version = 0;
    if (std::sscanf(line.c_str(), "# minus-array L=%d version=%d", &out.arr.list_size, &version) != 2 ||
        out.arr.list_size < 1 || version != 1)
        throw MinusArrayError("malformed minus-array header in " + path + ": " + line);
    std::size_t prev_n = 0, prev_k = 0;
    bool any = false;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            TrainingCursor c;
            if (std::sscanf(line.c_str(), "# cursor n=%zu k=%zu seed=%llu trials=%zu ebn0=%lf", &c.n, &c.k,
                            reinterpret_cast<unsigned long long*>(&c.seed), &c.trials, &c.ebn0_db) == 5)
                out.cursor = c;
            continue;  // other comments are labels
        }
        std::size_t n = 0, k = 0;
        long long v = 0;
        char extra = 0;
        if (std::sscanf(line.c_str(), "%zu\t%zu\t%lld %c", &n, &k, &v, &extra) != 3)
            throw MinusArrayError("malformed minus-array line " + std::to_string(lineno) + " in " + path +
                                  ": " + line);
        if (any && (n < prev_n || (n == prev_n && k <= prev_k)))
            throw MinusArrayError("minus-array entries out of order at line " + std::to_string(lineno) +
                                  " in " + path);
        try {
            out.arr.set(n, k, static_cast<int>(v));
        } catch (const std::invalid_argument& e) {
            throw MinusArrayError(std::string(e.what()) + " at line " + std::to_string(lineno) + " in " + path);
        }
        prev_n = n;
        prev_k = k;
        any = true;
    }
    return out;
}

}  // namespace detail

inline MinusArray load_minus_array(const std::string& path) {
    auto parsed = detail::parse_minus_file(path);
    validate_minus_array(parsed.arr);
    return std::move(parsed.arr);
}

inline void save_minus_array_impl(const MinusArray& arr, const std::string& path,
                                  const std::optional<TrainingCursor>& cursor) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw MinusArrayError("cannot write minus-array file: " + tmp);
        out << "# minus-array L=" << arr.list_size << " version=1\n";
        if (cursor) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "# cursor n=%zu k=%zu seed=%llu trials=%zu ebn0=%.17g\n", cursor->n,
                          cursor->k, static_cast<unsigned long long>(cursor->seed), cursor->trials,
                          cursor->ebn0_db);
            out << buf;
        }
        for (const auto& [n, row] : arr.entries)
            for (const auto& [k, v] : row) out << n << '\t' << k << '\t' << v << '\n';
        if (!out) throw MinusArrayError("write failure on " + tmp);
    }
    std::filesystem::rename(tmp, path);  // atomic replace: interrupted runs never corrupt the file
}

inline void save_minus_array(const MinusArray& arr, const std::string& path) {
    validate_minus_array(arr);
    save_minus_array_impl(arr, path, std::nullopt);
}

// Checkpoints may hold a partial final row; only range/order are enforced.
inline void save_checkpoint(const MinusArray& arr, const TrainingCursor& cursor, const std::string& path) {
    save_minus_array_impl(arr, path, cursor);
}

inline detail::ParsedMinusFile load_checkpoint(const std::string& path) { return detail::parse_minus_file(path); }

// Union of several arrays (same list size); disagreeing duplicates are an error.
inline MinusArray merge_minus_arrays(const std::vector<MinusArray>& parts) {
    if (parts.empty()) throw MinusArrayError("no minus arrays to merge");
    MinusArray out;
    out.list_size = parts.front().list_size;
    for (const auto& part : parts) {
        if (part.list_size != out.list_size)
            throw MinusArrayError("cannot merge minus arrays with different list sizes");
        for (const auto& [n, row] : part.entries)
            for (const auto& [k, v] : row) {
                if (out.has(n, k) && out.minus(n, k) != v)
                    throw MinusArrayError("conflicting values for (n=" + std::to_string(n) +
                                          ", k=" + std::to_string(k) + ") while merging");
                out.set(n, k, v);
            }
    }
    return out;
}

}  // namespace dppolar
