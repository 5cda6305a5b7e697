#pragma once

// Exact-cover search for splitter sets of cyclic groups.
//
// The universe is Z_N \ {0}; each candidate row is the orbit M*s of a
// splitter s whose orbit avoids 0 and has no repeats. The search always
// branches on the least uncovered element and tries rows in ascending s, so
// the first solution found is reproducible.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splitkit/splitting.hpp"

namespace splitkit {

struct SearchConfig {
    std::uint64_t node_limit = 100'000'000;
    std::chrono::milliseconds time_limit{60'000};
    // Prune rows whose element order would exceed the per-order splitter
    // counts forced by counting elements of each order.
    bool order_profile_pruning = true;
    // Fix the row s = 1 at the root when 1 is a multiplier (u*S splits
    // whenever S does, for every unit u).
    bool unit_symmetry = true;
    // Keep one row per distinct orbit set.
    bool dedupe_orbits = true;
};

enum class SearchResult { found, exhausted_no_solution, resource_limit };

struct SearchStats {
    std::uint64_t nodes = 0;
    int max_depth = 0;
    double elapsed_ms = 0.0;
    // Nonexistence settled by the order profile alone, before branching.
    bool refuted_by_counting = false;
};

struct SearchOutcome {
    SearchResult result = SearchResult::exhausted_no_solution;
    std::optional<SplitterSet> splitters;  // set iff result == found
    SearchStats stats;
};

// Number of splitters of each element order that any splitting of Z_N by M
// must have. `determined` is false when the triangular system has a zero
// pivot (possible only when 1 is not a multiplier residue); `feasible` is
// false when the forced counts are not nonnegative integers.
struct OrderProfile {
    bool determined = true;
    bool feasible = true;
    std::vector<Int> orders;  // divisors of N greater than 1, ascending
    std::vector<Int> counts;  // parallel to orders
};

OrderProfile splitter_order_profile(Int N, const MultiplierSet& M);

// Precondition: G cyclic, |M| divides |G| - 1. Throws std::invalid_argument otherwise.
SearchOutcome search_splitter(const FiniteAbelianGroup& G, const MultiplierSet& M, const SearchConfig& config = {});

struct EnumerationBudget {
    std::uint64_t node_limit = 50'000'000;
    std::size_t max_certificates = 5'000'000;
};

struct EnumerationResult {
    std::vector<SplittingCertificate> certificates;  // sorted by (M, S)
    bool complete = true;                            // false on budget breach
    std::uint64_t nodes = 0;
};

// All (M, S) with M a subset of [1, N-1] of the given size and S a splitter
// set for it. Throws std::invalid_argument unless size_of_m divides N - 1.
EnumerationResult enumerate_all_splittings(Int N, Int size_of_m, const EnumerationBudget& budget = {});

// For Z_{p^t}, p odd: M or S consists entirely of elements prime to p.
// Throws std::invalid_argument on groups that are not cyclic of odd prime-power order.
bool s87_property_check(const SplittingCertificate& cert);

std::string to_string(SearchResult r);
std::optional<SearchResult> parse_search_result(const std::string& s);

}  // namespace splitkit
