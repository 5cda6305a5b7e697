#include "splitkit/sweeps.hpp"

#include <omp.h>

#include <numeric>
#include <optional>
#include <vector>

#include "splitkit/proof_checks.hpp"

namespace splitkit {

namespace {

std::vector<Int> primes_up_to(Int n) {
    std::vector<Int> out;
    for (Int q = 2; q <= n; ++q)
        if (is_prime(q)) out.push_back(q);
    return out;
}

struct PointResult {
    bool in_grid = false;
    std::uint64_t weight = 0;
    bool ok = true;
};

PointResult abcde_point(Int k, Int p, const AbcdeGrid& grid) {
    PointResult r;
    const KDecomposition dec = decompose_k(k, p, 1);
    const Factorization mp = factorize(dec.m_prime);
    if (static_cast<int>(mp.pairs.size()) > grid.max_primes) return r;
    std::vector<PrimeExponents> primes;
    std::uint64_t weight = 1;
    for (const auto& [q, e] : mp.pairs) {
        if (q <= p || q > grid.p_max || e > grid.max_exponent) return r;
        primes.push_back({q, e, e});
        weight *= static_cast<std::uint64_t>(grid.max_exponent - e + 1);
    }
    r.in_grid = true;
    r.weight = weight;
    // alpha_i only enters through the prime set of |G|, which is the same for
    // every alpha_i >= beta_i; one enumeration covers all exponent choices.
    const AbcdeProfile prof = abcde_profile(k, p, primes);
    r.ok = prof.preconditions_met && prof.identities_hold();
    return r;
}

void merge(SweepSummary& into, const SweepSummary& part) {
    into.instances += part.instances;
    into.grid_points += part.grid_points;
    into.failures += part.failures;
    if (part.failures && (into.first_failure_k == 0 || std::pair(part.first_failure_k, part.first_failure_p) <
                                                           std::pair(into.first_failure_k, into.first_failure_p))) {
        into.first_failure_k = part.first_failure_k;
        into.first_failure_p = part.first_failure_p;
    }
}

void note_failure(SweepSummary& s, Int k, Int p) {
    if (s.failures++ == 0 || std::pair(k, p) < std::pair(s.first_failure_k, s.first_failure_p)) {
        s.first_failure_k = k;
        s.first_failure_p = p;
    }
}

template <class PointFn>
SweepSummary run_parallel(Int k_max, const std::vector<Int>& ps, int threads, PointFn&& point) {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
    std::vector<SweepSummary> parts(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
    {
        SweepSummary& mine = parts[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
        for (Int k = 1; k <= k_max; ++k)
            for (Int p : ps) point(mine, k, p);
    }
    SweepSummary total;
    for (const auto& part : parts) merge(total, part);
    return total;
}

template <class PointFn>
SweepSummary run_serial(Int k_max, const std::vector<Int>& ps, PointFn&& point) {
    SweepSummary s;
    for (Int k = 1; k <= k_max; ++k)
        for (Int p : ps) point(s, k, p);
    return s;
}

auto abcde_kernel(const AbcdeGrid& grid) {
    return [grid](SweepSummary& s, Int k, Int p) {
        const PointResult r = abcde_point(k, p, grid);
        if (!r.in_grid) return;
        ++s.instances;
        s.grid_points += r.weight;
        if (!r.ok) note_failure(s, k, p);
    };
}

void digit_kernel(SweepSummary& s, Int k, Int p) {
    ++s.instances;
    ++s.grid_points;
    if (!digit_pattern_check(decompose_k(k, p, 1))) note_failure(s, k, p);
}

}  // namespace

SweepSummary abcde_sweep(const AbcdeGrid& grid, int threads) {
    return run_parallel(grid.k_max, primes_up_to(grid.p_max), threads, abcde_kernel(grid));
}

SweepSummary abcde_sweep_serial(const AbcdeGrid& grid) {
    return run_serial(grid.k_max, primes_up_to(grid.p_max), abcde_kernel(grid));
}

SweepSummary digit_pattern_sweep(Int k_max, Int p_max, int threads) {
    return run_parallel(k_max, primes_up_to(p_max), threads, digit_kernel);
}

SweepSummary digit_pattern_sweep_serial(Int k_max, Int p_max) {
    return run_serial(k_max, primes_up_to(p_max), digit_kernel);
}

}  // namespace splitkit
