#pragma once

// Structured (JSON) documents for certificates, scan reports and check
// reports, plus the flat CSV exports. Objects are emitted with sorted keys so
// equal values serialize to identical bytes.

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "splitkit/scan.hpp"
#include "splitkit/search.hpp"
#include "splitkit/splitting.hpp"
#include "splitkit/tiling.hpp"

namespace splitkit {

inline constexpr int kFormatVersion = 1;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const SplittingCertificate& cert);
// Throws ParseError on malformed documents. The stored classification is
// returned as written; callers compare it against classify_multipliers.
SplittingCertificate certificate_from_json(const nlohmann::json& j);

std::string serialize_certificate(const SplittingCertificate& cert);
SplittingCertificate parse_certificate(const std::string& text);

// Nonexistence (or budget) attestation written by `search` when nothing is found.
nlohmann::json search_attestation(const FiniteAbelianGroup& G, const MultiplierSet& M, const SearchOutcome& outcome);

// Timing fields (per-record millis, wall clock) are included only on request,
// so that the default serialization is reproducible byte for byte.
nlohmann::json to_json(const ScanReport& report, bool with_timing = false);
ScanReport scan_report_from_json(const nlohmann::json& j);
std::string serialize_scan_report(const ScanReport& report, bool with_timing = false);
ScanReport parse_scan_report(const std::string& text);
// Columns: k,n,N,factorization,verdict,nodes,millis (millis is "NA" without timing).
std::string scan_report_csv(const ScanReport& report, bool with_timing = false);

struct CheckReport {
    std::string check_name;
    nlohmann::json inputs;
    nlohmann::json expected;
    nlohmann::json actual;
    bool verdict = false;
};

nlohmann::json to_json(const CheckReport& report);

struct TilingHeader {
    Int n = 0;
    Int k = 0;
    Int N = 0;
    std::vector<Int> weights;
};

// "# {json header}" line, a CSV column header, then one row per covered cell:
// anchor coordinates followed by cell coordinates.
std::string tiling_export(const TilingHeader& header, const IntegerLattice& lattice, const Box& box,
                          const std::vector<Translate>& translates);

std::string dump_document(const nlohmann::json& j);

}  // namespace splitkit
