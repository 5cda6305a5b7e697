#pragma once

// Executable counting machinery for purely singular splittings of cyclic
// groups by S(k): p-adic strata, the stratum counting identity, the base-p
// digit pattern of k, the A..E interval counts and the T*W_i disjointness check.

#include <optional>
#include <string>
#include <vector>

#include "splitkit/splitting.hpp"

namespace splitkit {

struct DigitExpansion {
    Int base = 0;
    std::vector<Int> digits;  // little-endian, top digit nonzero

    Int value() const;
    Int digit(std::size_t i) const { return i < digits.size() ? digits[i] : 0; }
};

DigitExpansion base_p_digits(Int k, Int p);

// k - floor(k/p) = p^beta * d * m_prime with d = gcd(k - floor(k/p), p - 1).
struct KDecomposition {
    Int k = 0;
    Int p = 0;
    Int m = 0;
    int beta = 0;
    Int d = 0;
    Int m_prime = 0;
    // False is a hypothesis failure, not an error: no splitting can produce it.
    bool m_prime_divides_m = false;

    Int reduced() const { return k - k / p; }
};

KDecomposition decompose_k(Int k, Int p, Int m);

// b_beta = ... = b_0, and b_{beta+1} != b_beta when k has more than beta+1 digits.
bool digit_pattern_check(const KDecomposition& dec);

struct StratificationProfile {
    Int p = 0;
    int alpha = 0;
    std::vector<Int> g_counts;  // |G_i|, 0 <= i <= alpha
    std::vector<Int> s_counts;  // |S_i|
};

StratificationProfile stratify(const SplittingCertificate& cert, Int p);

struct CountingIdentity {
    int stratum = 0;
    Int lhs = 0;  // sum_{j >= i} #{m in M : p^{j-i} || m} * |S_j|
    Int rhs = 0;  // |G_i|
    bool holds() const { return lhs == rhs; }
};

// Requires a valid certificate over a cyclic group with p | |G| and 1 <= i <= alpha.
CountingIdentity check_counting_identity(const SplittingCertificate& cert, Int p, int i);

struct PrimeExponents {
    Int prime = 0;
    int alpha = 0;  // exponent in m
    int beta = 0;   // exponent in m'; 0 means the prime divides m only
};

struct AbcdeProfile {
    Int k = 0;
    Int p = 0;
    std::vector<PrimeExponents> primes;
    int beta = 0;
    Int d = 0;
    Int a = 0, b = 0, c = 0, d_count = 0, e = 0;
    Int closed_form_d = 0;  // p^beta d prod p_i^{beta_i - 1}(p_i - 1)
    // k - floor(k/p) == p^beta d prod p_i^{beta_i}, the setting the identities assume
    bool preconditions_met = false;

    bool a_eq_b_plus_c() const { return a == b + c; }
    bool d_eq_c() const { return d_count == c; }
    bool d_eq_closed_form() const { return d_count == closed_form_d; }
    bool identities_hold() const { return a_eq_b_plus_c() && d_eq_c() && d_eq_closed_form(); }
};

// Throws std::invalid_argument unless p < p_1 < ... are primes, alpha_i >= 1 and beta_i <= alpha_i.
AbcdeProfile abcde_profile(Int k, Int p, const std::vector<PrimeExponents>& primes);

struct TwReport {
    Int p = 0;
    int alpha = 0;
    Int m = 0;
    KDecomposition decomposition;
    std::vector<Int> subgroup;                // M'
    std::vector<Int> unit_splitters;          // s_1..s_r
    std::vector<std::vector<Int>> w_sets;     // W_i, ascending
    std::vector<std::vector<Int>> tw_sets;    // T*W_i, ascending
    Int w_formula = 0;                        // p^beta prod u_j
    Int units = 0;                            // |Z_N^*|
    Int d_count = 0;                          // |D|
    Int e_count = 0;                          // |E|
    bool pairwise_disjoint = false;
    bool inside_units = false;
    bool tw_is_d_times_w = false;
    bool w_matches_formula = false;
    bool equality_chain = false;              // |TW_i| = |D| = |E| and r|E| = |units|

    std::size_t r() const { return unit_splitters.size(); }
    bool passed() const {
        return decomposition.m_prime_divides_m && pairwise_disjoint && inside_units && tw_is_d_times_w &&
               w_matches_formula && equality_chain;
    }
};

// Requires a valid S(k) certificate over a cyclic group with gcd(|G|, 6) = 1
// that is purely singular; throws std::invalid_argument otherwise.
TwReport tw_disjointness_check(const SplittingCertificate& cert);

}  // namespace splitkit
