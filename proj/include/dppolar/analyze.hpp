// Set-overlap analysis: how close the trained construction comes to the
// Reed-Muller choice and to the reliability-ranked (genie Monte Carlo)
// choice for matching code parameters.
#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "construct.hpp"
#include "core.hpp"
#include "minus_array.hpp"

namespace dppolar {

// |a ∩ b| / k for two information sets of equal size k.
inline double similarity(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("similarity requires equally sized sets");
    if (a.empty()) return 1.0;
    std::unordered_set<std::size_t> sa(a.begin(), a.end());
    if (sa.size() != a.size()) throw std::invalid_argument("similarity requires duplicate-free sets");
    std::size_t hits = 0;
    for (std::size_t i : b)
        if (sa.count(i)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(a.size());
}

// Smallest Reed-Muller order r with dim RM(r, m) == k, if any.
inline std::optional<int> rm_order_for(int m, std::size_t k) {
    for (int r = 0; r <= m; ++r)
        if (rm_info_set(m, r).k == k) return r;
    return std::nullopt;
}

struct SimilarityCase {
    int m = 0;  // block length 2^m
    int r = 0;  // Reed-Muller reference order
};

struct SimilarityRow {
    int list_size = 0;
    std::size_t n = 0, k = 0;
    int rm_order = 0;
    double s_rm = 0.0;     // overlap with the Reed-Muller set
    double s_polar = 0.0;  // overlap with the reliability-ranked set
};

struct SimilarityReport {
    std::vector<SimilarityRow> rows;
};

struct SimilarityConfig {
    double design_ebn0_db = 2.0;  // operating point of the reliability ranking
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

// One row per (array, case); cases larger than an array's coverage are
// skipped. The reliability-ranked reference is recomputed per (n, k), so
// rows with the same case but different list sizes share it.
inline SimilarityReport similarity_report(const std::vector<MinusArray>& arrays,
                                          const std::vector<SimilarityCase>& cases,
                                          const SimilarityConfig& cfg = {}) {
    SimilarityReport rep;
    for (const auto& cs : cases) {
        if (cs.m < 1 || cs.r < 0 || cs.r > cs.m) throw std::invalid_argument("invalid similarity case");
        const CodeSpec rm = rm_info_set(cs.m, cs.r);
        const std::vector<std::size_t> ranked =
            standard_construct(rm.n, rm.k, cfg.design_ebn0_db, cfg.trials, cfg.seed, cfg.workers);
        for (const auto& arr : arrays) {
            if (arr.max_n() < rm.n) continue;
            const std::vector<std::size_t> dp = minus_construct(rm.n, rm.k, arr);
            SimilarityRow row;
            row.list_size = arr.list_size;
            row.n = rm.n;
            row.k = rm.k;
            row.rm_order = cs.r;
            row.s_rm = similarity(dp, rm.info_set);
            row.s_polar = similarity(dp, ranked);
            rep.rows.push_back(row);
        }
    }
    return rep;
}

inline std::string render_similarity_csv(const SimilarityReport& rep) {
    std::string out = "list_size,n,k,rm_order,s_rm,s_polar\n";
    char buf[160];
    for (const auto& r : rep.rows) {
        std::snprintf(buf, sizeof buf, "%d,%zu,%zu,%d,%.2f,%.2f\n", r.list_size, r.n, r.k, r.rm_order, r.s_rm,
                      r.s_polar);
        out += buf;
    }
    return out;
}

inline std::string render_similarity_text(const SimilarityReport& rep) {
    std::string out = "list    code           RM ref    S_RM    S_polar\n";
    char buf[160];
    for (const auto& r : rep.rows) {
        std::snprintf(buf, sizeof buf, "L=%-5d (%zu,%zu)%*s r=%-7d %.2f    %.2f\n", r.list_size, r.n, r.k,
                      static_cast<int>(10 - std::to_string(r.n).size() - std::to_string(r.k).size()), "",
                      r.rm_order, r.s_rm, r.s_polar);
        out += buf;
    }
    return out;
}

}  // namespace dppolar
