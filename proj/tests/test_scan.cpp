#include <stdexcept>
#include "doctest.h"
#include "oracles.hpp"
#include "splitkit/io.hpp"
#include "splitkit/scan.hpp"

using namespace splitkit;

namespace {

std::vector<Int> orders(const std::vector<CandidateOrder>& c) {
    std::vector<Int> out;
    for (const auto& x : c) out.push_back(x.N);
    return out;
}

ScanRecord fake_found(Int k, Int n) {
    ScanRecord r;
    r.candidate.k = k;
    r.candidate.n = n;
    r.candidate.N = n * k + 1;
    r.candidate.factorization = factorize(r.candidate.N);
    r.result = SearchResult::found;
    r.verdict = classify_record(k, r.candidate.N, r.result);
    return r;
}

}  // namespace

TEST_CASE("candidate examples") {
    CHECK(orders(purely_singular_candidates(8, 13)) == std::vector<Int>{9, 25, 49, 81, 105});
    CHECK(purely_singular_candidates(1, 5).empty());
    CHECK(purely_singular_candidates(2, 5).empty());
    CHECK(orders(purely_singular_candidates(3, 3)) == std::vector<Int>{4});
    for (const auto& c : purely_singular_candidates(30, 60)) {
        CHECK(c.N == c.n * c.k + 1);
        CHECK(c.factorization.value() == c.N);
        for (Int p : c.factorization.primes()) CHECK(p <= 30);
    }
}

TEST_CASE("candidates agree with a brute-force smoothness filter") {
    for (Int k = 1; k <= 50; ++k)
        for (Int n_max : {1, 7, 50, 100}) {
            std::vector<Int> expect;
            for (Int n = 1; n <= n_max; ++n) {
                const Int N = n * k + 1;
                if (oracle::largest_prime_factor(N) <= k) expect.push_back(N);
            }
            INFO("k=" << k << " n_max=" << n_max);
            CHECK(orders(purely_singular_candidates(k, n_max)) == expect);
        }
}

TEST_CASE("verdict labelling") {
    CHECK(classify_record(8, 9, SearchResult::found) == ScanVerdict::trivial_expected);
    CHECK(classify_record(8, 17, SearchResult::found) == ScanVerdict::trivial_expected);
    CHECK(classify_record(8, 25, SearchResult::exhausted_no_solution) == ScanVerdict::conjecture_consistent);
    CHECK(classify_record(8, 25, SearchResult::found) == ScanVerdict::conjecture_violation);
    CHECK(classify_record(8, 25, SearchResult::resource_limit) == ScanVerdict::inconclusive);
    CHECK(to_string(ScanVerdict::conjecture_violation) == "CONJECTURE_VIOLATION");
    for (auto v : {ScanVerdict::trivial_expected, ScanVerdict::conjecture_consistent, ScanVerdict::conjecture_violation,
                   ScanVerdict::inconclusive})
        CHECK(parse_scan_verdict(to_string(v)) == v);
}

TEST_CASE("scan k = 8") {
    ScanParameters p{8, 8, 13};
    const auto rep = scan_serial(p, {});
    REQUIRE(rep.records.size() == 5);
    CHECK(rep.complete);
    CHECK(rep.records[0].candidate.N == 9);
    CHECK(rep.records[0].result == SearchResult::found);
    for (std::size_t i = 1; i < rep.records.size(); ++i) CHECK(rep.records[i].result == SearchResult::exhausted_no_solution);
    CHECK(rep.overall() == OverallVerdict::consistent);
    CHECK(check_k_ge_n(rep));
    CHECK(check_k_le_n_minus_2(rep));
}

TEST_CASE("scan small examples") {
    auto rep = scan_serial({24, 24, 1}, {});
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].candidate.N == 25);
    REQUIRE(rep.records[0].certificate);
    CHECK(rep.records[0].certificate->splitters.residues() == std::vector<Int>{1});

    rep = scan_serial({3, 3, 3}, {});
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].candidate.N == 4);
    CHECK(rep.records[0].verdict == ScanVerdict::trivial_expected);
}

TEST_CASE("k versus n bound checks on synthetic reports") {
    ScanReport empty;
    empty.complete = true;
    CHECK(check_k_ge_n(empty));
    CHECK(check_k_le_n_minus_2(empty));
    CHECK(check_found_n_le_2(empty));

    ScanReport bad;
    bad.records.push_back(fake_found(5, 3));
    CHECK_FALSE(check_k_le_n_minus_2(bad));
    ScanReport bad2;
    bad2.records.push_back(fake_found(2, 5));
    CHECK_FALSE(check_k_ge_n(bad2));
    CHECK_FALSE(check_found_n_le_2(bad2));
}

TEST_CASE("parallel scan and resume match serial") {
    ScanParameters p{1, 16, 0};
    const auto serial = scan_serial(p, {});
    ScanOptions par;
    par.threads = 4;
    const auto parallel = scan(p, par);
    CHECK(serialize_scan_report(serial) == serialize_scan_report(parallel));

    ScanOptions partial;
    partial.max_new_records = 20;
    const auto half = scan(p, partial);
    CHECK_FALSE(half.complete);
    CHECK(half.records.size() == 20);
    const auto resumed = scan(p, par, &half);
    CHECK(serialize_scan_report(resumed) == serialize_scan_report(serial));

    ScanParameters other = p;
    other.k_max = 15;
    CHECK_THROWS_AS(scan(other, par, &half), std::invalid_argument);
    CHECK_THROWS_AS(scan({5, 3, 0}, par), std::invalid_argument);
}

TEST_CASE("budget-limited records make the scan inconclusive") {
    ScanParameters p{8, 8, 13, 1, 60'000};
    ScanOptions o;
    o.search.order_profile_pruning = false;
    o.search.unit_symmetry = false;
    const auto rep = scan_serial(p, o);
    CHECK(rep.totals.resource_limited > 0);
    CHECK(rep.overall() == OverallVerdict::inconclusive);
}

TEST_CASE("tally matches records") {
    const auto rep = scan_serial({1, 12, 0}, {});
    const auto t = tally(rep.records);
    CHECK(t == rep.totals);
    CHECK(t.records == t.found + t.exhausted + t.resource_limited);
}
