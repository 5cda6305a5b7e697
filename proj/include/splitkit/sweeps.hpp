#pragma once

// Parameter-grid sweeps over the pure integer identities. Each sweep has an
// OpenMP kernel and a serial reference that must agree exactly.

#include <cstdint>
#include <string>

#include "splitkit/group.hpp"

namespace splitkit {

struct SweepSummary {
    std::uint64_t instances = 0;    // (k, p) pairs evaluated
    std::uint64_t grid_points = 0;  // instances weighted by exponent choices
    std::uint64_t failures = 0;
    Int first_failure_k = 0;        // smallest failing (k, p), 0 if none
    Int first_failure_p = 0;

    bool passed() const { return failures == 0; }
    friend bool operator==(const SweepSummary&, const SweepSummary&) = default;
};

struct AbcdeGrid {
    Int k_max = 10'000;
    Int p_max = 97;        // p < p_1 < p_2 <= p_max
    int max_primes = 2;    // number of p_i
    int max_exponent = 3;  // beta_i <= alpha_i <= max_exponent
};

// For every k and prime p whose m' = (k - floor(k/p)) / (p^beta d) factors
// over at most max_primes primes in (p, p_max] with exponents <= max_exponent,
// checks |A| = |B| + |C| and |D| = |C| = closed form by direct enumeration.
// Each alpha_i in [beta_i, max_exponent] counts as one grid point.
SweepSummary abcde_sweep(const AbcdeGrid& grid, int threads = 0);
SweepSummary abcde_sweep_serial(const AbcdeGrid& grid);

// digit_pattern_check for all 1 <= k <= k_max and primes p <= p_max.
SweepSummary digit_pattern_sweep(Int k_max, Int p_max, int threads = 0);
SweepSummary digit_pattern_sweep_serial(Int k_max, Int p_max);

}  // namespace splitkit
