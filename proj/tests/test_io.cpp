#include <stdexcept>
#include "doctest.h"
#include "splitkit/io.hpp"

using namespace splitkit;
using nlohmann::json;

TEST_CASE("certificate round trip") {
    for (Int k = 1; k <= 30; ++k)
        for (auto w : {TrivialOrder::k_plus_1, TrivialOrder::two_k_plus_1}) {
            const auto c = trivial_certificate(k, w);
            const std::string text = serialize_certificate(c);
            const auto back = parse_certificate(text);
            CHECK(back == c);
            CHECK(serialize_certificate(back) == text);
        }
}

TEST_CASE("explicit multipliers and non-cyclic groups round trip") {
    const auto G = FiniteAbelianGroup::cyclic(7);
    const auto c = make_certificate(G, MultiplierSet::explicit_set({1, -1}), SplitterSet::from_residues({1, 2, 3}));
    const auto j = to_json(c);
    CHECK(j["multipliers"]["kind"] == "explicit");
    CHECK(j["multipliers"]["values"] == json::array({-1, 1}));
    CHECK(j["multipliers"]["residues"] == json::array({1, 6}));
    CHECK(parse_certificate(serialize_certificate(c)) == c);

    const FiniteAbelianGroup H({3, 3});
    const auto S = SplitterSet::from_elements({H.element({0, 1}), H.element({1, 0}), H.element({1, 1}), H.element({1, 2})});
    const auto d = make_certificate(H, MultiplierSet::interval(2), S);
    CHECK(parse_certificate(serialize_certificate(d)) == d);
}

TEST_CASE("malformed certificates") {
    CHECK_THROWS_AS(parse_certificate(""), ParseError);
    CHECK_THROWS_AS(parse_certificate("{}"), ParseError);
    CHECK_THROWS_AS(parse_certificate("[1,2]"), ParseError);
    auto j = to_json(trivial_certificate(4, TrivialOrder::k_plus_1));
    j["format_version"] = 99;
    CHECK_THROWS_AS(certificate_from_json(j), ParseError);
    j = to_json(trivial_certificate(4, TrivialOrder::k_plus_1));
    j["splitters"] = json::array({json::array({7})});
    CHECK_THROWS_AS(certificate_from_json(j), ParseError);
    j = to_json(trivial_certificate(4, TrivialOrder::k_plus_1));
    j["classification"]["tag"] = "weird";
    CHECK_THROWS_AS(certificate_from_json(j), ParseError);
    j = to_json(trivial_certificate(4, TrivialOrder::k_plus_1));
    j["multipliers"]["kind"] = "other";
    CHECK_THROWS_AS(certificate_from_json(j), ParseError);
    j = to_json(trivial_certificate(4, TrivialOrder::k_plus_1));
    j["group_factors"] = json::array({0});
    CHECK_THROWS_AS(certificate_from_json(j), ParseError);
}

TEST_CASE("tampered certificates parse but do not verify") {
    auto j = to_json(trivial_certificate(2, TrivialOrder::two_k_plus_1));
    j["splitters"] = json::array({json::array({1}), json::array({2})});
    const auto c = certificate_from_json(j);
    CHECK_FALSE(verify_splitting(c).valid());
}

TEST_CASE("scan report round trip") {
    const auto rep = scan_serial({1, 12, 0}, {});
    const std::string text = serialize_scan_report(rep);
    const auto back = parse_scan_report(text);
    CHECK(serialize_scan_report(back) == text);
    CHECK(back.totals == rep.totals);
    CHECK(back.params == rep.params);

    const std::string timed = serialize_scan_report(rep, true);
    CHECK(timed.find("wall_ms") != std::string::npos);
    CHECK(text.find("wall_ms") == std::string::npos);
    CHECK(serialize_scan_report(parse_scan_report(timed)) == text);
}

TEST_CASE("scan report rejects inconsistent records") {
    auto j = to_json(scan_serial({8, 8, 13}, {}));
    j["records"][1]["N"] = 26;
    CHECK_THROWS_AS(scan_report_from_json(j), ParseError);
    j = to_json(scan_serial({8, 8, 13}, {}));
    j["records"][0].erase("certificate");
    CHECK_THROWS_AS(scan_report_from_json(j), ParseError);
    j = to_json(scan_serial({8, 8, 13}, {}));
    j["records"][0]["certificate"]["splitters"] = json::array({json::array({3})});
    CHECK_THROWS_AS(scan_report_from_json(j), ParseError);
}

TEST_CASE("csv export") {
    const auto rep = scan_serial({8, 8, 13}, {});
    const std::string csv = scan_report_csv(rep);
    CHECK(csv.rfind("k,n,N,factorization,verdict,nodes,millis\n", 0) == 0);
    CHECK(csv.find("8,1,9,3^2,trivial_expected,") != std::string::npos);
    CHECK(csv.find("8,13,105,3*5*7,conjecture_consistent,") != std::string::npos);
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 6);
}

TEST_CASE("check report document") {
    CheckReport r{"digits", {{"k", 8}}, {{"pattern", true}}, {{"pattern", true}}, true};
    const auto j = to_json(r);
    CHECK(j["type"] == "check_report");
    CHECK(j["verdict"] == "pass");
    CHECK(j["format_version"] == kFormatVersion);
}

TEST_CASE("tiling export format") {
    const auto t = lattice_from_splitting(trivial_certificate(2, TrivialOrder::two_k_plus_1));
    const Box box{{0, 0}, {4, 4}};
    const auto tr = export_translates(t.lattice, semi_cross(2, 2), box);
    const std::string text = tiling_export(TilingHeader{2, 2, 5, {1, 4}}, t.lattice, box, tr);
    const auto nl = text.find('\n');
    REQUIRE(text.rfind("# ", 0) == 0);
    const auto header = json::parse(text.substr(2, nl - 2));
    CHECK(header["N"] == 5);
    CHECK(header["basis_rows"] == json::array({json::array({5, 1}), json::array({0, 1})}));
    CHECK(header["translates"] == 5);
    const auto rest = text.substr(nl + 1);
    CHECK(rest.rfind("a1,a2,x1,x2\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : rest) lines += ch == '\n';
    CHECK(lines == 1 + 25);
}
