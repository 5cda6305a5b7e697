#pragma once

// Internal exact-cover engine shared by search_splitter and the splitting
// enumerator. Elements of Z_N \ {0} are the columns; rows are clean orbits.

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "splitkit/search.hpp"

namespace splitkit::detail {

struct CoverOptions {
    bool dedupe_orbits = true;
    bool unit_symmetry = true;
    bool order_profile_pruning = true;
    std::uint64_t node_limit = 0;  // 0 = unlimited
    std::chrono::milliseconds time_limit{0};  // 0 = unlimited
};

class CoverSolver {
public:
    // Stop enumeration by returning false.
    using SolutionSink = std::function<bool(const std::vector<Int>& splitters)>;

    CoverSolver(Int n, std::vector<Int> multiplier_residues, const CoverOptions& options);

    enum class Status { finished, stopped_by_sink, budget_exceeded };
    Status run(const SolutionSink& sink);

    // Profile was infeasible, so no row set can work; run() returns at once.
    bool refuted_by_counting() const { return refuted_; }
    std::uint64_t nodes() const { return nodes_; }
    int max_depth() const { return max_depth_; }
    std::size_t row_count() const { return row_s_.size(); }

private:
    bool dfs(int depth, Int from);
    bool budget_exhausted();

    bool test(Int x) const { return (covered_[static_cast<std::size_t>(x >> 6)] >> (x & 63)) & 1U; }
    void flip(Int x) { covered_[static_cast<std::size_t>(x >> 6)] ^= (std::uint64_t{1} << (x & 63)); }

    Int n_;
    std::size_t width_;  // elements per row
    CoverOptions opt_;

    std::vector<Int> row_s_;
    std::vector<int> row_class_;
    std::vector<std::int32_t> row_elems_;  // flat, width_ per row
    std::vector<std::vector<std::int32_t>> col_rows_;
    std::vector<Int> quota_;
    std::vector<Int> used_;
    bool use_quota_ = false;
    bool refuted_ = false;
    std::int32_t root_row_ = -1;  // forced first row under unit symmetry

    std::vector<std::uint64_t> covered_;
    std::vector<std::int32_t> chosen_;
    std::vector<Int> solution_;
    const SolutionSink* sink_ = nullptr;

    std::uint64_t nodes_ = 0;
    int max_depth_ = 0;
    bool aborted_ = false;
    bool stopped_ = false;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace splitkit::detail
