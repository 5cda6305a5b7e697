#pragma once

// Desk-scale scan of purely singular splittings of Z_{nk+1} by S(k).

#include <optional>
#include <vector>

#include "splitkit/search.hpp"

namespace splitkit {

struct CandidateOrder {
    Int k = 0;
    Int n = 0;
    Int N = 0;  // n * k + 1
    Factorization factorization;  // every prime <= k
};

// N = nk + 1, 1 <= n <= n_max, with all prime divisors <= k, ascending.
std::vector<CandidateOrder> purely_singular_candidates(Int k, Int n_max);

enum class ScanVerdict { trivial_expected, conjecture_consistent, conjecture_violation, inconclusive };

struct ScanRecord {
    CandidateOrder candidate;
    SearchResult result = SearchResult::exhausted_no_solution;
    SearchStats stats;
    ScanVerdict verdict = ScanVerdict::conjecture_consistent;
    std::optional<SplittingCertificate> certificate;  // set iff a splitting was found
};

struct ScanTotals {
    std::size_t records = 0;
    std::size_t found = 0;
    std::size_t exhausted = 0;
    std::size_t resource_limited = 0;
    std::size_t trivial = 0;
    std::size_t violations = 0;
    std::uint64_t nodes = 0;

    friend bool operator==(const ScanTotals&, const ScanTotals&) = default;
};

enum class OverallVerdict { consistent, violation, inconclusive };

struct ScanParameters {
    Int k_min = 1;
    Int k_max = 1;
    Int n_max = 0;  // 0: 2k for each k
    std::uint64_t node_limit = SearchConfig{}.node_limit;
    std::int64_t time_limit_ms = SearchConfig{}.time_limit.count();

    Int n_max_for(Int k) const { return n_max > 0 ? n_max : 2 * k; }
    friend bool operator==(const ScanParameters&, const ScanParameters&) = default;
};

struct ScanReport {
    ScanParameters params;
    std::vector<ScanRecord> records;  // sorted by (k, N)
    bool complete = false;
    ScanTotals totals;
    double wall_ms = 0.0;

    OverallVerdict overall() const;
};

struct ScanOptions {
    SearchConfig search;
    int threads = 0;                // 0: OpenMP default; 1: serial reference path
    std::size_t max_new_records = 0;  // 0: no cap; otherwise stop early with complete = false
};

ScanVerdict classify_record(Int k, Int N, SearchResult result);
ScanTotals tally(const std::vector<ScanRecord>& records);

// Parallel scan; records are independent tasks merged in (k, N) order.
// With `resume`, completed (k, N) pairs are copied over; throws
// std::invalid_argument if its parameters differ.
ScanReport scan(const ScanParameters& params, const ScanOptions& options, const ScanReport* resume = nullptr);
// Single-threaded reference with identical output.
ScanReport scan_serial(const ScanParameters& params, const ScanOptions& options, const ScanReport* resume = nullptr);

// No found record with n >= 3 has k > n - 2.
bool check_k_le_n_minus_2(const ScanReport& report);
// Every found record has k >= n.
bool check_k_ge_n(const ScanReport& report);
// Together the two checks leave only n <= 2.
bool check_found_n_le_2(const ScanReport& report);

std::string to_string(ScanVerdict v);
std::optional<ScanVerdict> parse_scan_verdict(const std::string& s);
std::string to_string(OverallVerdict v);

}  // namespace splitkit
