#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "splitkit/io.hpp"
#include "splitkit/proof_checks.hpp"
#include "splitkit/scan.hpp"
#include "splitkit/search.hpp"
#include "splitkit/tiling.hpp"

namespace splitkit::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
    if (!f) throw UsageError("failed writing '" + path + "'");
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v, &end, 10);
    if (*end != '\0' || x == 0) throw UsageError(std::string("environment variable ") + name + " must be a positive integer");
    return x;
}

struct Budget {
    std::uint64_t node_limit = 0;
    std::int64_t time_limit_ms = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--node-limit", node_limit, "Search node budget per instance (env SPLITKIT_NODE_LIMIT)");
        cmd->add_option("--time-limit-ms", time_limit_ms, "Search time budget per instance in ms (env SPLITKIT_TIME_LIMIT_MS)");
    }
    void resolve() {
        if (node_limit == 0) node_limit = env_u64("SPLITKIT_NODE_LIMIT", SearchConfig{}.node_limit);
        if (time_limit_ms == 0)
            time_limit_ms = static_cast<std::int64_t>(
                env_u64("SPLITKIT_TIME_LIMIT_MS", static_cast<std::uint64_t>(SearchConfig{}.time_limit.count())));
        if (time_limit_ms < 0) throw UsageError("--time-limit-ms must be positive");
    }
};

void summary(std::ostream& out, const std::string& command, const std::vector<std::pair<std::string, std::string>>& kv,
             int code) {
    out << "summary command=" << command;
    for (const auto& [k, v] : kv) out << ' ' << k << '=' << v;
    out << " exit=" << code << '\n';
}

SplittingCertificate load_certificate(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_certificate(text);
    } catch (const ParseError& e) {
        throw UsageError("malformed certificate '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& path, std::ostream& out) {
    const SplittingCertificate cert = load_certificate(path);
    const VerificationReport rep = verify_splitting(cert);
    const SingularityClass actual = classify_multipliers(cert.group, cert.multipliers);
    int code = kAffirmative;
    std::string result = "valid";
    out << "group: " << to_string(cert.group) << '\n';
    out << "splitting: " << rep.describe() << '\n';
    if (!rep.valid()) {
        code = kNegative;
        result = "invalid";
    } else if (!(actual == cert.classification)) {
        code = kNegative;
        result = "classification_mismatch";
        out << "classification: stored " << to_string(cert.classification.tag) << ", computed " << to_string(actual.tag)
            << '\n';
    } else {
        out << "classification: " << to_string(actual.tag) << '\n';
    }
    summary(out, "verify", {{"result", result}, {"order", std::to_string(cert.group.order())}}, code);
    return code;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
    Int N = 0;
    Int k = 0;
    std::string out_path;
    bool no_profile = false;
    bool no_symmetry = false;
    Budget budget;
};

int cmd_search(SearchArgs a, std::ostream& out) {
    if (a.N < 1 || a.k < 1) throw UsageError("--N and --k must be positive");
    if ((a.N - 1) % a.k != 0) throw UsageError("k = " + std::to_string(a.k) + " does not divide N - 1 = " + std::to_string(a.N - 1));
    a.budget.resolve();
    SearchConfig cfg;
    cfg.node_limit = a.budget.node_limit;
    cfg.time_limit = std::chrono::milliseconds(a.budget.time_limit_ms);
    cfg.order_profile_pruning = !a.no_profile;
    cfg.unit_symmetry = !a.no_symmetry;
    const auto G = FiniteAbelianGroup::cyclic(a.N);
    const auto M = MultiplierSet::interval(a.k);
    const SearchOutcome o = search_splitter(G, M, cfg);

    int code = kAffirmative;
    std::string doc;
    if (o.result == SearchResult::found) {
        doc = serialize_certificate(make_certificate(G, M, *o.splitters));
    } else {
        doc = dump_document(search_attestation(G, M, o));
        code = o.result == SearchResult::exhausted_no_solution ? kNegative : kBudgetExceeded;
    }
    write_output(a.out_path, doc, out);
    summary(out, "search",
            {{"N", std::to_string(a.N)},
             {"k", std::to_string(a.k)},
             {"result", to_string(o.result)},
             {"nodes", std::to_string(o.stats.nodes)}},
            code);
    return code;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
    Int k_min = 1;
    Int k_max = 0;
    Int n_max = 0;
    std::string out_path;
    std::string csv_path;
    std::string resume_path;
    int threads = 0;
    bool timing = false;
    std::size_t max_records = 0;
    std::size_t checkpoint_every = 0;
    Budget budget;
};

int cmd_scan(ScanArgs a, std::ostream& out) {
    if (a.k_min < 1 || a.k_max < a.k_min) throw UsageError("need 1 <= k-min <= k-max");
    if (a.n_max < 0) throw UsageError("--n-max must be nonnegative");
    if (a.threads < 0) throw UsageError("--threads must be nonnegative");
    a.budget.resolve();
    ScanParameters params{a.k_min, a.k_max, a.n_max, a.budget.node_limit, a.budget.time_limit_ms};

    std::optional<ScanReport> prior;
    if (!a.resume_path.empty()) {
        try {
            prior = parse_scan_report(read_file(a.resume_path));
        } catch (const ParseError& e) {
            throw UsageError("malformed resume report: " + std::string(e.what()));
        }
        if (!(prior->params == params)) throw UsageError("resume report was produced with different parameters");
    }

    ScanOptions opt;
    opt.threads = a.threads;
    ScanReport report;
    std::size_t budget_left = a.max_records;
    while (true) {
        std::size_t chunk = a.checkpoint_every;
        if (a.max_records) chunk = chunk ? std::min(chunk, budget_left) : budget_left;
        opt.max_new_records = chunk;
        const std::size_t before = prior ? prior->records.size() : 0;
        try {
            report = scan(params, opt, prior ? &*prior : nullptr);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        const std::size_t added = report.records.size() - before;
        if (a.max_records) budget_left -= std::min(budget_left, added);
        if (report.complete || (a.max_records && budget_left == 0)) break;
        if (!a.out_path.empty()) write_output(a.out_path, serialize_scan_report(report, a.timing), out);
        prior = report;
    }

    if (!a.out_path.empty()) write_output(a.out_path, serialize_scan_report(report, a.timing), out);
    if (!a.csv_path.empty()) write_output(a.csv_path, scan_report_csv(report, a.timing), out);

    const OverallVerdict v = report.overall();
    const int code = v == OverallVerdict::consistent ? kAffirmative
                     : v == OverallVerdict::violation ? kNegative
                                                      : kBudgetExceeded;
    const bool bounds = check_k_ge_n(report) && check_k_le_n_minus_2(report);
    out << "records=" << report.totals.records << " found=" << report.totals.found
        << " exhausted=" << report.totals.exhausted << " resource_limited=" << report.totals.resource_limited << '\n';
    summary(out, "scan",
            {{"overall", to_string(v)},
             {"k_min", std::to_string(a.k_min)},
             {"k_max", std::to_string(a.k_max)},
             {"records", std::to_string(report.totals.records)},
             {"violations", std::to_string(report.totals.violations)},
             {"complete", report.complete ? "true" : "false"},
             {"bound_checks", bounds ? "pass" : "fail"}},
            code);
    return code;
}

// ---------------------------------------------------------------- tile

struct TileArgs {
    std::string cert_path;
    std::string out_path;
    std::vector<Int> box_lo;
    std::vector<Int> box_hi;
    Int box_size = 10;
};

int cmd_tile(const TileArgs& a, std::ostream& out) {
    const SplittingCertificate cert = load_certificate(a.cert_path);
    if (!cert.group.is_cyclic()) throw UsageError("tile needs a certificate over a cyclic group");
    if (cert.multipliers.kind() != MultiplierKind::interval) throw UsageError("tile needs multiplier set S(k)");
    const VerificationReport rep = verify_splitting(cert);
    if (!rep.valid()) {
        out << "splitting: " << rep.describe() << '\n';
        summary(out, "tile", {{"result", "invalid_certificate"}}, kNegative);
        return kNegative;
    }
    const InducedTiling t = lattice_from_splitting(cert);
    const Int n = static_cast<Int>(cert.splitters.size());
    const Int k = cert.multipliers.k();
    const ErrorBallShape shape = error_ball(n, 1, k, 0);
    const TilingCertificate tc = verify_lattice_tiling(shape, t.hom);
    if (!tc.verdict) {
        summary(out, "tile", {{"result", "not_a_tiling"}}, kNegative);
        return kNegative;
    }

    Box box;
    if (!a.box_hi.empty()) {
        box.hi = a.box_hi;
        box.lo = a.box_lo.empty() ? std::vector<Int>(box.hi.size(), 0) : a.box_lo;
    } else {
        if (a.box_size < 0) throw UsageError("--box-size must be nonnegative");
        box.lo.assign(static_cast<std::size_t>(n), 0);
        box.hi.assign(static_cast<std::size_t>(n), a.box_size - 1);
    }
    if (box.lo.size() != static_cast<std::size_t>(n) || box.hi.size() != static_cast<std::size_t>(n))
        throw UsageError("box dimension must equal the number of splitters (" + std::to_string(n) + ")");
    if (box.volume() > 10'000'000) throw UsageError("box has more than 10^7 cells");

    const auto translates = export_translates(t.lattice, shape, box);
    write_output(a.out_path, tiling_export(TilingHeader{n, k, cert.group.order(), t.hom.weights}, t.lattice, box, translates),
                 out);
    summary(out, "tile",
            {{"result", "tiling"},
             {"n", std::to_string(n)},
             {"k", std::to_string(k)},
             {"index", std::to_string(t.lattice.index())},
             {"translates", std::to_string(translates.size())},
             {"cells", std::to_string(box.volume())}},
            kAffirmative);
    return kAffirmative;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
    std::string name;
    Int k = 0;
    Int p = 0;
    Int m = 1;
    Int N = 0;
    int stratum = 0;
    std::vector<std::string> primes;  // "q:alpha:beta"
    std::string cert_path;
    std::string out_path;
};

const std::vector<std::string> kCheckNames{"abcde", "digits", "strata", "tw", "s87"};

std::vector<PrimeExponents> parse_prime_specs(const std::vector<std::string>& specs) {
    std::vector<PrimeExponents> out;
    for (const auto& s : specs) {
        PrimeExponents pe;
        char c1 = 0, c2 = 0;
        std::istringstream is(s);
        if (!(is >> pe.prime >> c1 >> pe.alpha >> c2 >> pe.beta) || c1 != ':' || c2 != ':' || !is.eof())
            throw UsageError("--prime expects q:alpha:beta, got '" + s + "'");
        out.push_back(pe);
    }
    return out;
}

CheckReport check_abcde(const CheckArgs& a) {
    if (a.k < 1 || a.p < 2) throw UsageError("abcde needs --k and --p");
    const auto primes = parse_prime_specs(a.primes);
    const AbcdeProfile prof = abcde_profile(a.k, a.p, primes);
    json pj = json::array();
    for (const auto& q : primes) pj.push_back({{"prime", q.prime}, {"alpha", q.alpha}, {"beta", q.beta}});
    CheckReport r;
    r.check_name = "abcde";
    r.inputs = {{"k", a.k}, {"p", a.p}, {"primes", pj}};
    r.expected = {{"A", prof.b + prof.c}, {"D", prof.c}, {"closed_form_D", prof.closed_form_d}};
    r.actual = {{"A", prof.a},      {"B", prof.b}, {"C", prof.c},   {"D", prof.d_count},
                {"E", prof.e},      {"beta", prof.beta}, {"d", prof.d}, {"preconditions_met", prof.preconditions_met}};
    r.verdict = prof.preconditions_met && prof.identities_hold();
    return r;
}

CheckReport check_digits(const CheckArgs& a) {
    if (a.k < 1 || a.p < 2) throw UsageError("digits needs --k and --p");
    const KDecomposition dec = decompose_k(a.k, a.p, a.m);
    const DigitExpansion e = base_p_digits(a.k, a.p);
    CheckReport r;
    r.check_name = "digits";
    r.inputs = {{"k", a.k}, {"p", a.p}, {"m", a.m}};
    r.expected = {{"pattern", true}};
    r.actual = {{"digits", e.digits},
                {"beta", dec.beta},
                {"d", dec.d},
                {"m_prime", dec.m_prime},
                {"m_prime_divides_m", dec.m_prime_divides_m},
                {"pattern", digit_pattern_check(dec)}};
    r.verdict = digit_pattern_check(dec);
    return r;
}

CheckReport check_strata(const CheckArgs& a) {
    if (a.cert_path.empty()) throw UsageError("strata needs --cert");
    const SplittingCertificate cert = load_certificate(a.cert_path);
    if (!cert.group.is_cyclic()) throw UsageError("strata needs a cyclic certificate");
    Int p = a.p;
    if (p == 0) {
        if (cert.group.order() == 1) throw UsageError("trivial group has no prime divisor");
        p = cert.group.order_factorization().pairs.front().prime;
    }
    const StratificationProfile prof = stratify(cert, p);
    CheckReport r;
    r.check_name = "strata";
    r.inputs = {{"group_factors", cert.group.factors()}, {"p", p}};
    json ids = json::array();
    json lhs = json::array();
    r.verdict = true;
    for (int i = 1; i <= prof.alpha; ++i) {
        if (a.stratum && i != a.stratum) continue;
        const CountingIdentity ci = check_counting_identity(cert, p, i);
        ids.push_back({{"stratum", i}, {"G_i", ci.rhs}});
        lhs.push_back({{"stratum", i}, {"counted", ci.lhs}, {"holds", ci.holds()}});
        r.verdict = r.verdict && ci.holds();
    }
    r.expected = {{"identities", ids}};
    r.actual = {{"identities", lhs}, {"g_counts", prof.g_counts}, {"s_counts", prof.s_counts}, {"alpha", prof.alpha}};
    return r;
}

CheckReport check_tw(const CheckArgs& a) {
    if (a.cert_path.empty()) throw UsageError("tw needs --cert");
    const SplittingCertificate cert = load_certificate(a.cert_path);
    const TwReport tw = tw_disjointness_check(cert);
    std::vector<std::size_t> tw_sizes, w_sizes;
    for (const auto& s : tw.tw_sets) tw_sizes.push_back(s.size());
    for (const auto& s : tw.w_sets) w_sizes.push_back(s.size());
    CheckReport r;
    r.check_name = "tw";
    r.inputs = {{"group_factors", cert.group.factors()}, {"k", cert.multipliers.k()}};
    r.expected = {{"TW_size", tw.d_count}, {"units", tw.units}, {"W_size", tw.w_formula}};
    r.actual = {{"p", tw.p},
                {"alpha", tw.alpha},
                {"m", tw.m},
                {"beta", tw.decomposition.beta},
                {"d", tw.decomposition.d},
                {"m_prime", tw.decomposition.m_prime},
                {"subgroup", tw.subgroup},
                {"unit_splitters", tw.unit_splitters},
                {"W_sizes", w_sizes},
                {"TW_sizes", tw_sizes},
                {"D", tw.d_count},
                {"E", tw.e_count},
                {"r", tw.r()},
                {"pairwise_disjoint", tw.pairwise_disjoint},
                {"inside_units", tw.inside_units},
                {"equality_chain", tw.equality_chain}};
    r.verdict = tw.passed();
    return r;
}

CheckReport check_s87(const CheckArgs& a) {
    CheckReport r;
    r.check_name = "s87";
    if (!a.cert_path.empty()) {
        const SplittingCertificate cert = load_certificate(a.cert_path);
        if (!verify_splitting(cert).valid()) throw UsageError("certificate does not verify");
        r.inputs = {{"group_factors", cert.group.factors()}};
        r.verdict = s87_property_check(cert);
        r.expected = {{"holds", true}};
        r.actual = {{"holds", r.verdict}};
        return r;
    }
    if (a.N < 3) throw UsageError("s87 needs --N (odd prime power) or --cert");
    const auto f = factorize(a.N);
    if (f.pairs.size() != 1 || f.pairs[0].prime == 2) throw UsageError("--N must be an odd prime power");
    std::size_t total = 0, holding = 0;
    bool complete = true;
    json per_size = json::array();
    for (Int size : divisors(a.N - 1)) {
        const EnumerationResult er = enumerate_all_splittings(a.N, size);
        complete = complete && er.complete;
        std::size_t ok = 0;
        for (const auto& c : er.certificates) ok += s87_property_check(c) ? 1 : 0;
        per_size.push_back({{"size_of_M", size}, {"splittings", er.certificates.size()}, {"satisfying", ok}});
        total += er.certificates.size();
        holding += ok;
    }
    r.inputs = {{"N", a.N}};
    r.expected = {{"satisfying", total}};
    r.actual = {{"satisfying", holding}, {"splittings", total}, {"by_size", per_size}, {"complete", complete}};
    r.verdict = complete && holding == total;
    return r;
}

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
    CheckReport r;
    if (a.name == "abcde")
        r = check_abcde(a);
    else if (a.name == "digits")
        r = check_digits(a);
    else if (a.name == "strata")
        r = check_strata(a);
    else if (a.name == "tw")
        r = check_tw(a);
    else if (a.name == "s87")
        r = check_s87(a);
    else {
        err << "unknown check '" << a.name << "'; known checks:";
        for (const auto& n : kCheckNames) err << ' ' << n;
        err << '\n';
        summary(out, "check", {{"name", a.name}, {"result", "unknown_check"}}, kUsageError);
        return kUsageError;
    }
    write_output(a.out_path, dump_document(to_json(r)), out);
    const int code = r.verdict ? kAffirmative : kNegative;
    summary(out, "check", {{"name", a.name}, {"result", r.verdict ? "pass" : "fail"}}, code);
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"splitkit: splittings of finite abelian groups by multiplier sets"};
    app.require_subcommand(1);

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Verify a splitting certificate");
    verify->add_option("certificate", verify_path, "Certificate file")->required();

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "Search a splitter set for S(k) in Z_N");
    search->add_option("--N", sa.N, "Group order")->required();
    search->add_option("--k", sa.k, "Multiplier set S(k)")->required();
    search->add_option("-o,--out", sa.out_path, "Output file (default stdout)");
    search->add_flag("--no-profile", sa.no_profile, "Disable order-profile pruning");
    search->add_flag("--no-symmetry", sa.no_symmetry, "Disable the unit-multiple symmetry reduction");
    sa.budget.add_flags(search);

    ScanArgs ca;
    auto* scan_cmd = app.add_subcommand("scan", "Scan purely singular candidate orders for S(k)");
    scan_cmd->add_option("--k-min", ca.k_min, "Smallest k");
    scan_cmd->add_option("--k-max", ca.k_max, "Largest k")->required();
    scan_cmd->add_option("--n-max", ca.n_max, "Largest n (default 2k)");
    scan_cmd->add_option("-o,--out", ca.out_path, "Structured report file");
    scan_cmd->add_option("--csv", ca.csv_path, "Tabular export file");
    scan_cmd->add_option("--resume", ca.resume_path, "Continue from a partial report");
    scan_cmd->add_option("--threads", ca.threads, "Worker threads (0 = all cores, 1 = serial)");
    scan_cmd->add_flag("--timing", ca.timing, "Include wall-clock fields in the outputs");
    scan_cmd->add_option("--max-records", ca.max_records, "Stop after this many new records (partial report)");
    scan_cmd->add_option("--checkpoint-every", ca.checkpoint_every, "Rewrite the report every this many records");
    ca.budget.add_flags(scan_cmd);

    TileArgs ta;
    auto* tile = app.add_subcommand("tile", "Export the semi-cross lattice tiling of a certificate");
    tile->add_option("certificate", ta.cert_path, "Certificate file")->required();
    tile->add_option("-o,--out", ta.out_path, "Output file (default stdout)");
    tile->add_option("--box-lo", ta.box_lo, "Lower box corner")->delimiter(',');
    tile->add_option("--box-hi", ta.box_hi, "Upper box corner (inclusive)")->delimiter(',');
    tile->add_option("--box-size", ta.box_size, "Cube box [0, size-1]^n when --box-hi is absent");

    CheckArgs ka;
    auto* check = app.add_subcommand("check", "Run a counting check: abcde, digits, strata, tw, s87");
    check->add_option("name", ka.name, "Check name")->required();
    check->add_option("--k", ka.k, "k");
    check->add_option("--p", ka.p, "Prime p");
    check->add_option("--m", ka.m, "p-free part m (digits)");
    check->add_option("--N", ka.N, "Group order (s87)");
    check->add_option("--stratum", ka.stratum, "Single stratum index (strata)");
    check->add_option("--prime", ka.primes, "Extra prime q:alpha:beta (abcde), repeatable");
    check->add_option("--cert", ka.cert_path, "Certificate file");
    check->add_option("-o,--out", ka.out_path, "Output file (default stdout)");

    std::vector<std::string> argv_store{"splitkit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsageError;
    }

    std::string command = "?";
    try {
        if (*verify) {
            command = "verify";
            return cmd_verify(verify_path, out);
        }
        if (*search) {
            command = "search";
            return cmd_search(sa, out);
        }
        if (*scan_cmd) {
            command = "scan";
            return cmd_scan(ca, out);
        }
        if (*tile) {
            command = "tile";
            return cmd_tile(ta, out);
        }
        command = "check";
        return cmd_check(ka, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    }
    summary(out, command, {{"result", "usage_error"}}, kUsageError);
    return kUsageError;
}

}  // namespace splitkit::cli
