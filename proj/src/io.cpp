#include "splitkit/io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace splitkit {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad field '") + key + "': " + e.what());
    }
}

void expect_header(const json& j, const char* type) {
    if (!j.is_object()) throw ParseError("document is not an object");
    if (field<std::string>(j, "type") != type) throw ParseError(std::string("expected a ") + type + " document");
    const int version = field<int>(j, "format_version");
    if (version != kFormatVersion) throw ParseError("unsupported format_version " + std::to_string(version));
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("not a JSON document: ") + e.what());
    }
}

json classification_json(const SingularityClass& c) {
    json w = json::array();
    for (const auto& pw : c.witnesses)
        w.push_back({{"prime", pw.prime}, {"multiplier", pw.multiplier ? json(*pw.multiplier) : json(nullptr)}});
    return {{"tag", to_string(c.tag)}, {"witnesses", w}};
}

SingularityClass classification_from_json(const json& j) {
    SingularityClass c;
    const auto tag = parse_singularity_tag(field<std::string>(j, "tag"));
    if (!tag) throw ParseError("unknown classification tag");
    c.tag = *tag;
    for (const auto& w : field<json>(j, "witnesses")) {
        PrimeWitness pw{field<Int>(w, "prime"), std::nullopt};
        if (!w.contains("multiplier")) throw ParseError("witness without multiplier field");
        if (!w.at("multiplier").is_null()) pw.multiplier = field<Int>(w, "multiplier");
        c.witnesses.push_back(pw);
    }
    return c;
}

std::string format_ms(double ms) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << ms;
    return os.str();
}

}  // namespace

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

json to_json(const SplittingCertificate& cert) {
    json mult;
    if (cert.multipliers.kind() == MultiplierKind::interval) {
        mult = {{"kind", "interval"}, {"k", cert.multipliers.k()}};
    } else {
        mult = {{"kind", "explicit"}, {"values", cert.multipliers.values()}};
        if (cert.group.is_cyclic()) {
            std::vector<Int> res = cert.multipliers.residues(cert.group.order());
            std::sort(res.begin(), res.end());
            mult["residues"] = res;
        }
    }
    json splitters = json::array();
    for (const auto& s : cert.splitters.elements) splitters.push_back(s.coords);
    return {{"type", "splitting_certificate"},
            {"format_version", kFormatVersion},
            {"group_factors", cert.group.factors()},
            {"multipliers", mult},
            {"splitters", splitters},
            {"classification", classification_json(cert.classification)}};
}

SplittingCertificate certificate_from_json(const json& j) {
    expect_header(j, "splitting_certificate");
    try {
        FiniteAbelianGroup G(field<std::vector<Int>>(j, "group_factors"));
        const json& mj = field<json>(j, "multipliers");
        const auto kind = field<std::string>(mj, "kind");
        MultiplierSet M = kind == "interval"   ? MultiplierSet::interval(field<Int>(mj, "k"))
                          : kind == "explicit" ? MultiplierSet::explicit_set(field<std::vector<Int>>(mj, "values"))
                                               : throw ParseError("unknown multiplier kind '" + kind + "'");
        std::vector<GroupElement> elems;
        for (const auto& s : field<json>(j, "splitters")) {
            GroupElement g{s.get<std::vector<Int>>()};
            if (!G.contains(g)) throw ParseError("splitter " + s.dump() + " is not a reduced element of the group");
            elems.push_back(std::move(g));
        }
        SplitterSet S = SplitterSet::from_elements(std::move(elems));
        SingularityClass c = classification_from_json(field<json>(j, "classification"));
        return SplittingCertificate{std::move(G), std::move(M), std::move(S), std::move(c)};
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

std::string serialize_certificate(const SplittingCertificate& cert) { return dump_document(to_json(cert)); }

SplittingCertificate parse_certificate(const std::string& text) { return certificate_from_json(parse_text(text)); }

json search_attestation(const FiniteAbelianGroup& G, const MultiplierSet& M, const SearchOutcome& outcome) {
    json mult = M.kind() == MultiplierKind::interval ? json{{"kind", "interval"}, {"k", M.k()}}
                                                     : json{{"kind", "explicit"}, {"values", M.values()}};
    return {{"type", "search_attestation"},
            {"format_version", kFormatVersion},
            {"group_factors", G.factors()},
            {"multipliers", mult},
            {"result", to_string(outcome.result)},
            {"nodes", outcome.stats.nodes},
            {"max_depth", outcome.stats.max_depth},
            {"refuted_by_counting", outcome.stats.refuted_by_counting}};
}

json to_json(const ScanReport& report, bool with_timing) {
    json records = json::array();
    for (const auto& r : report.records) {
        json rec = {{"k", r.candidate.k},
                    {"n", r.candidate.n},
                    {"N", r.candidate.N},
                    {"factorization", r.candidate.factorization.to_string()},
                    {"result", to_string(r.result)},
                    {"verdict", to_string(r.verdict)},
                    {"nodes", r.stats.nodes},
                    {"max_depth", r.stats.max_depth},
                    {"refuted_by_counting", r.stats.refuted_by_counting}};
        if (r.certificate) rec["certificate"] = to_json(*r.certificate);
        if (with_timing) rec["millis"] = std::round(r.stats.elapsed_ms * 1000.0) / 1000.0;
        records.push_back(std::move(rec));
    }
    const auto& t = report.totals;
    json j = {{"type", "scan_report"},
              {"format_version", kFormatVersion},
              {"parameters",
               {{"k_min", report.params.k_min},
                {"k_max", report.params.k_max},
                {"n_max", report.params.n_max},
                {"node_limit", report.params.node_limit},
                {"time_limit_ms", report.params.time_limit_ms}}},
              {"complete", report.complete},
              {"overall", to_string(report.overall())},
              {"totals",
               {{"records", t.records},
                {"found", t.found},
                {"exhausted", t.exhausted},
                {"resource_limited", t.resource_limited},
                {"trivial", t.trivial},
                {"violations", t.violations},
                {"nodes", t.nodes}}},
              {"records", records}};
    if (with_timing) j["wall_ms"] = std::round(report.wall_ms * 1000.0) / 1000.0;
    return j;
}

ScanReport scan_report_from_json(const json& j) {
    expect_header(j, "scan_report");
    ScanReport report;
    const json& pj = field<json>(j, "parameters");
    report.params.k_min = field<Int>(pj, "k_min");
    report.params.k_max = field<Int>(pj, "k_max");
    report.params.n_max = field<Int>(pj, "n_max");
    report.params.node_limit = field<std::uint64_t>(pj, "node_limit");
    report.params.time_limit_ms = field<std::int64_t>(pj, "time_limit_ms");
    report.complete = field<bool>(j, "complete");
    report.wall_ms = j.contains("wall_ms") ? field<double>(j, "wall_ms") : 0.0;
    for (const auto& rj : field<json>(j, "records")) {
        ScanRecord r;
        r.candidate.k = field<Int>(rj, "k");
        r.candidate.n = field<Int>(rj, "n");
        r.candidate.N = field<Int>(rj, "N");
        if (r.candidate.N != r.candidate.n * r.candidate.k + 1) throw ParseError("record with N != nk + 1");
        r.candidate.factorization = factorize(r.candidate.N);
        if (r.candidate.factorization.to_string() != field<std::string>(rj, "factorization"))
            throw ParseError("record factorization does not match N");
        const auto result = parse_search_result(field<std::string>(rj, "result"));
        const auto verdict = parse_scan_verdict(field<std::string>(rj, "verdict"));
        if (!result || !verdict) throw ParseError("unknown result or verdict in record");
        r.result = *result;
        r.verdict = *verdict;
        r.stats.nodes = field<std::uint64_t>(rj, "nodes");
        r.stats.max_depth = field<int>(rj, "max_depth");
        r.stats.refuted_by_counting = field<bool>(rj, "refuted_by_counting");
        if (rj.contains("millis")) r.stats.elapsed_ms = field<double>(rj, "millis");
        if (rj.contains("certificate")) {
            r.certificate = certificate_from_json(rj.at("certificate"));
            if (!verify_splitting(*r.certificate).valid()) throw ParseError("record certificate does not verify");
        }
        if ((r.result == SearchResult::found) != r.certificate.has_value())
            throw ParseError("found records must carry a certificate, others must not");
        report.records.push_back(std::move(r));
    }
    report.totals = tally(report.records);
    return report;
}

std::string serialize_scan_report(const ScanReport& report, bool with_timing) {
    return dump_document(to_json(report, with_timing));
}

ScanReport parse_scan_report(const std::string& text) { return scan_report_from_json(parse_text(text)); }

std::string scan_report_csv(const ScanReport& report, bool with_timing) {
    std::ostringstream os;
    os << "k,n,N,factorization,verdict,nodes,millis\n";
    for (const auto& r : report.records) {
        os << r.candidate.k << ',' << r.candidate.n << ',' << r.candidate.N << ',' << r.candidate.factorization.to_string()
           << ',' << to_string(r.verdict) << ',' << r.stats.nodes << ',' << (with_timing ? format_ms(r.stats.elapsed_ms) : "NA")
           << '\n';
    }
    return os.str();
}

json to_json(const CheckReport& report) {
    return {{"type", "check_report"},      {"format_version", kFormatVersion}, {"check_name", report.check_name},
            {"inputs", report.inputs},     {"expected", report.expected},      {"actual", report.actual},
            {"verdict", report.verdict ? "pass" : "fail"}};
}

std::string tiling_export(const TilingHeader& header, const IntegerLattice& lattice, const Box& box,
                          const std::vector<Translate>& translates) {
    std::vector<std::vector<Int>> basis;
    for (std::size_t r = 0; r < lattice.dimension(); ++r) {
        std::vector<Int> row;
        for (std::size_t c = 0; c < lattice.dimension(); ++c) row.push_back(lattice.basis()(r, c));
        basis.push_back(std::move(row));
    }
    const json h = {{"n", header.n},
                    {"k", header.k},
                    {"N", header.N},
                    {"weights", header.weights},
                    {"basis_rows", basis},
                    {"index", lattice.index()},
                    {"box_lo", box.lo},
                    {"box_hi", box.hi},
                    {"translates", translates.size()}};
    std::ostringstream os;
    os << "# " << h.dump() << '\n';
    const std::size_t n = lattice.dimension();
    for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << 'a' << i + 1;
    for (std::size_t i = 0; i < n; ++i) os << ",x" << i + 1;
    os << '\n';
    for (const auto& tr : translates) {
        for (const auto& cell : tr.points) {
            for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << tr.anchor[i];
            for (std::size_t i = 0; i < n; ++i) os << ',' << cell[i];
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace splitkit
