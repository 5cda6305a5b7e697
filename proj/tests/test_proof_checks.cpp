#include <stdexcept>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "splitkit/proof_checks.hpp"
#include "splitkit/search.hpp"
#include "splitkit/sweeps.hpp"

using namespace splitkit;

namespace {

SplittingCertificate cert(Int N, Int k, std::vector<Int> S) {
    return make_certificate(FiniteAbelianGroup::cyclic(N), MultiplierSet::interval(k), SplitterSet::from_residues(S));
}

Int vp(Int n, Int p) {
    Int e = 0;
    while (n % p == 0) n /= p, ++e;
    return e;
}

// |{x in [lo, hi] : gcd(x, P) = 1}|
Int coprime_count(Int hi, Int P) {
    Int c = 0;
    for (Int x = 1; x <= hi; ++x) c += std::gcd(x, P) == 1;
    return c;
}

}  // namespace

TEST_CASE("base_p_digits") {
    CHECK(base_p_digits(8, 3).digits == std::vector<Int>{2, 2});
    CHECK(base_p_digits(24, 5).digits == std::vector<Int>{4, 4});
    CHECK(base_p_digits(1, 7).digits == std::vector<Int>{1});
    for (Int k = 1; k < 3000; k += 7)
        for (Int p : {2, 3, 5, 7, 97}) CHECK(base_p_digits(k, p).value() == k);
}

TEST_CASE("decompose_k") {
    auto d = decompose_k(8, 3, 1);
    CHECK(d.beta == 1);
    CHECK(d.d == 2);
    CHECK(d.m_prime == 1);
    CHECK(d.m_prime_divides_m);
    d = decompose_k(24, 5, 1);
    CHECK(d.beta == 1);
    CHECK(d.d == 4);
    CHECK(d.m_prime == 1);
    d = decompose_k(5, 11, 1);
    CHECK(d.beta == 0);
    CHECK(d.d == 5);
    CHECK(d.m_prime == 1);
    d = decompose_k(10, 3, 1);  // 7 = 3^0 * 1 * 7, and 7 does not divide 1
    CHECK(d.m_prime == 7);
    CHECK_FALSE(d.m_prime_divides_m);
    CHECK_THROWS_AS(decompose_k(10, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(decompose_k(10, 3, 6), std::invalid_argument);
    for (Int k = 1; k < 2000; ++k)
        for (Int p : {2, 3, 5, 13}) {
            const auto e = decompose_k(k, p, 1);
            CHECK(ipow(p, e.beta) * e.d * e.m_prime == k - k / p);
            CHECK(e.d == std::gcd(k - k / p, p - 1));
        }
}

TEST_CASE("digit_pattern_check") {
    CHECK(digit_pattern_check(decompose_k(8, 3, 1)));
    CHECK(digit_pattern_check(decompose_k(24, 5, 1)));
    // synthetic decomposition with a wrong beta must fail
    auto d = decompose_k(8, 3, 1);
    d.beta = 0;
    d.k = 7;  // digits [1,2]: b_0 = 1, b_1 = 2 is fine for beta = 0
    CHECK(digit_pattern_check(d));
    d.beta = 1;  // now b_1 = b_0 is required
    CHECK_FALSE(digit_pattern_check(d));
}

TEST_CASE("digit pattern sweep, serial equals parallel") {
    const auto a = digit_pattern_sweep_serial(3000, 50);
    const auto b = digit_pattern_sweep(3000, 50, 3);
    CHECK(a == b);
    CHECK(a.passed());
    CHECK(a.instances == 3000 * 15);
}

TEST_CASE("stratify") {
    auto s = stratify(cert(9, 8, {1}), 3);
    CHECK(s.alpha == 2);
    CHECK(s.g_counts == std::vector<Int>{1, 2, 6});
    CHECK(s.s_counts == std::vector<Int>{0, 0, 1});
    s = stratify(cert(11, 5, {1, 10}), 11);
    CHECK(s.s_counts == std::vector<Int>{0, 2});
    CHECK(s.g_counts == std::vector<Int>{1, 10});
    s = stratify(cert(25, 24, {1}), 5);
    CHECK(s.g_counts == std::vector<Int>{1, 4, 20});
    CHECK(s.s_counts == std::vector<Int>{0, 0, 1});
    CHECK_THROWS_AS(stratify(cert(9, 8, {1}), 5), std::invalid_argument);
}

TEST_CASE("stratify against element enumeration") {
    for (Int N = 2; N <= 120; ++N)
        for (Int k = 1; k < N; ++k) {
            if ((N - 1) % k != 0) continue;
            const auto o = search_splitter(FiniteAbelianGroup::cyclic(N), MultiplierSet::interval(k));
            if (!o.splitters) continue;
            const auto c = make_certificate(FiniteAbelianGroup::cyclic(N), MultiplierSet::interval(k), *o.splitters);
            for (const auto& [p, alpha] : factorize(N).pairs) {
                const auto prof = stratify(c, p);
                std::vector<Int> g(static_cast<std::size_t>(alpha) + 1, 0), s(g.size(), 0);
                for (Int x = 0; x < N; ++x) ++g[static_cast<std::size_t>(vp(N / std::gcd(x, N), p))];
                for (Int x : c.splitters.residues()) ++s[static_cast<std::size_t>(vp(N / std::gcd(x, N), p))];
                CHECK(prof.g_counts == g);
                CHECK(prof.s_counts == s);
                // |G_alpha| = p^(alpha-1) (p-1) m
                CHECK(g.back() == ipow(p, alpha - 1) * (p - 1) * (N / ipow(p, alpha)));
                for (int i = 1; i <= alpha; ++i) CHECK(check_counting_identity(c, p, i).holds());
            }
        }
}

TEST_CASE("counting identity worked instances") {
    auto ci = check_counting_identity(cert(9, 8, {1}), 3, 2);
    CHECK(ci.lhs == 6);
    CHECK(ci.rhs == 6);
    ci = check_counting_identity(cert(25, 24, {1}), 5, 1);
    CHECK(ci.lhs == 4);
    CHECK(ci.rhs == 4);
    CHECK(check_counting_identity(cert(25, 24, {1}), 5, 2).holds());
    ci = check_counting_identity(cert(11, 5, {1, 10}), 11, 1);
    CHECK(ci.lhs == 10);
    CHECK(ci.holds());
    CHECK_THROWS_AS(check_counting_identity(cert(9, 8, {1}), 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(check_counting_identity(cert(9, 8, {1}), 3, 0), std::invalid_argument);
}

TEST_CASE("abcde examples") {
    auto a = abcde_profile(8, 3, {});
    CHECK(a.a == 8);
    CHECK(a.b == 2);
    CHECK(a.c == 6);
    CHECK(a.d_count == 6);
    CHECK(a.closed_form_d == 6);
    CHECK(a.identities_hold());
    a = abcde_profile(24, 5, {});
    CHECK(a.a == 24);
    CHECK(a.b == 4);
    CHECK(a.c == 20);
    CHECK(a.d_count == 20);
    CHECK(a.closed_form_d == 20);
    CHECK_THROWS_AS(abcde_profile(20, 5, {{3, 1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(abcde_profile(20, 3, {{5, 1, 2}}), std::invalid_argument);
}

TEST_CASE("abcde against a gcd oracle") {
    // k = 20, p = 3 with p_1 = 5: every count from first principles
    const auto a = abcde_profile(20, 3, {{5, 1, 1}});
    CHECK(a.a == coprime_count(20, 5));
    CHECK(a.b == coprime_count(20 / 3, 5));
    CHECK(a.c == coprime_count(20 - 20 / 3, 5));
    CHECK(a.d_count == coprime_count(20, 15));
    CHECK(a.e == coprime_count(20, 3 * 5));
    // 20 - 6 = 14 has the factor 7, so this point is outside the identities' setting
    CHECK_FALSE(a.preconditions_met);
    CHECK(a.a == 16);
    CHECK(a.b == 5);
    CHECK(a.c == 12);

    // k - floor(k/p) = 3 * 2 * 7 = 42 for k = 63, p = 3; 7 is the only extra prime
    const auto b = abcde_profile(63, 3, {{7, 2, 1}});
    CHECK(b.preconditions_met);
    CHECK(b.a == coprime_count(63, 7));
    CHECK(b.b == coprime_count(21, 7));
    CHECK(b.c == coprime_count(42, 7));
    CHECK(b.d_count == coprime_count(63, 21));
    CHECK(b.e == coprime_count(63, 3 * 49));
    CHECK(b.closed_form_d == 3 * 2 * 6);
    CHECK(b.identities_hold());
}

TEST_CASE("abcde sweep, serial equals parallel") {
    const AbcdeGrid g{1500, 31, 2, 3};
    const auto a = abcde_sweep_serial(g);
    const auto b = abcde_sweep(g, 3);
    CHECK(a == b);
    CHECK(a.passed());
    CHECK(a.instances > 0);
    CHECK(a.grid_points >= a.instances);
}

TEST_CASE("tw disjointness instances") {
    auto r = tw_disjointness_check(cert(25, 24, {1}));
    CHECK(r.subgroup == std::vector<Int>{0, 5, 10, 15, 20});
    REQUIRE(r.w_sets.size() == 1);
    CHECK(r.w_sets[0] == std::vector<Int>{1, 6, 11, 16, 21});
    CHECK(r.tw_sets[0].size() == 20);
    CHECK(r.units == 20);
    CHECK(r.r() == 1);
    CHECK(r.passed());

    r = tw_disjointness_check(cert(49, 48, {1}));
    CHECK(r.subgroup.size() == 7);
    CHECK(r.w_sets[0].size() == 7);
    CHECK(r.decomposition.d == 6);
    CHECK(r.tw_sets[0].size() == 42);
    CHECK(r.units == 42);
    CHECK(r.passed());

    CHECK_THROWS_AS(tw_disjointness_check(cert(9, 8, {1})), std::invalid_argument);
    // nonsingular: 11 > 5
    CHECK_THROWS_AS(tw_disjointness_check(cert(11, 5, {1, 10})), std::invalid_argument);
}

TEST_CASE("tw passes on every small purely singular splitting coprime to 6") {
    int checked = 0;
    for (Int N = 5; N <= 400; ++N) {
        if (std::gcd(N, Int{6}) != 1) continue;
        for (Int k = 1; k < N; ++k) {
            if ((N - 1) % k != 0 || oracle::largest_prime_factor(N) > k) continue;
            const auto o = search_splitter(FiniteAbelianGroup::cyclic(N), MultiplierSet::interval(k));
            if (!o.splitters) continue;
            const auto r = tw_disjointness_check(
                make_certificate(FiniteAbelianGroup::cyclic(N), MultiplierSet::interval(k), *o.splitters));
            INFO("N=" << N << " k=" << k);
            CHECK(r.passed());
            ++checked;
        }
    }
    CHECK(checked > 10);
}
