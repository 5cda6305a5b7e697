#include "splitkit/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

namespace splitkit {

std::vector<CandidateOrder> purely_singular_candidates(Int k, Int n_max) {
    if (k < 1 || n_max < 1) throw std::invalid_argument("purely_singular_candidates: need k >= 1, n_max >= 1");
    std::vector<CandidateOrder> out;
    for (Int n = 1; n <= n_max; ++n) {
        const Int N = n * k + 1;
        Factorization f = factorize(N);
        if (f.pairs.back().prime <= k) out.push_back(CandidateOrder{k, n, N, std::move(f)});
    }
    return out;
}

ScanVerdict classify_record(Int k, Int N, SearchResult result) {
    if (result == SearchResult::resource_limit) return ScanVerdict::inconclusive;
    if (N == 1 || N == k + 1 || N == 2 * k + 1) return ScanVerdict::trivial_expected;
    return result == SearchResult::found ? ScanVerdict::conjecture_violation : ScanVerdict::conjecture_consistent;
}

ScanTotals tally(const std::vector<ScanRecord>& records) {
    ScanTotals t;
    t.records = records.size();
    for (const auto& r : records) {
        switch (r.result) {
            case SearchResult::found: ++t.found; break;
            case SearchResult::exhausted_no_solution: ++t.exhausted; break;
            case SearchResult::resource_limit: ++t.resource_limited; break;
        }
        if (r.verdict == ScanVerdict::trivial_expected) ++t.trivial;
        if (r.verdict == ScanVerdict::conjecture_violation) ++t.violations;
        t.nodes += r.stats.nodes;
    }
    return t;
}

OverallVerdict ScanReport::overall() const {
    if (totals.violations > 0) return OverallVerdict::violation;
    if (totals.resource_limited > 0 || !complete) return OverallVerdict::inconclusive;
    return OverallVerdict::consistent;
}

namespace {

ScanRecord run_record(const CandidateOrder& c, const SearchConfig& config) {
    const auto G = FiniteAbelianGroup::cyclic(c.N);
    const auto M = MultiplierSet::interval(c.k);
    SearchOutcome out = search_splitter(G, M, config);
    ScanRecord rec;
    rec.candidate = c;
    rec.result = out.result;
    rec.stats = out.stats;
    rec.verdict = classify_record(c.k, c.N, out.result);
    if (out.result == SearchResult::found) rec.certificate = make_certificate(G, M, *out.splitters);
    return rec;
}

struct ScanPlan {
    std::vector<ScanRecord> done;
    std::vector<CandidateOrder> todo;
    bool truncated = false;
};

ScanPlan plan(const ScanParameters& params, const ScanOptions& options, const ScanReport* resume) {
    if (params.k_min < 1 || params.k_min > params.k_max) throw std::invalid_argument("scan: need 1 <= k_min <= k_max");
    if (params.n_max < 0) throw std::invalid_argument("scan: n_max must be nonnegative");
    std::map<std::pair<Int, Int>, const ScanRecord*> prior;
    if (resume) {
        if (!(resume->params == params)) throw std::invalid_argument("scan: resume report was produced with different parameters");
        for (const auto& r : resume->records) prior[{r.candidate.k, r.candidate.N}] = &r;
    }
    ScanPlan p;
    for (Int k = params.k_min; k <= params.k_max; ++k) {
        for (auto& c : purely_singular_candidates(k, params.n_max_for(k))) {
            auto it = prior.find({c.k, c.N});
            if (it != prior.end())
                p.done.push_back(*it->second);
            else if (options.max_new_records && p.todo.size() >= options.max_new_records)
                p.truncated = true;
            else
                p.todo.push_back(std::move(c));
        }
    }
    return p;
}

ScanReport assemble(const ScanParameters& params, ScanPlan&& p, std::vector<ScanRecord>&& fresh, double wall_ms) {
    ScanReport report;
    report.params = params;
    report.records = std::move(p.done);
    report.records.insert(report.records.end(), std::make_move_iterator(fresh.begin()),
                          std::make_move_iterator(fresh.end()));
    std::sort(report.records.begin(), report.records.end(), [](const ScanRecord& a, const ScanRecord& b) {
        return std::pair(a.candidate.k, a.candidate.N) < std::pair(b.candidate.k, b.candidate.N);
    });
    report.complete = !p.truncated;
    report.totals = tally(report.records);
    report.wall_ms = wall_ms;
    return report;
}

SearchConfig record_config(const ScanParameters& params, const ScanOptions& options) {
    SearchConfig cfg = options.search;
    cfg.node_limit = params.node_limit;
    cfg.time_limit = std::chrono::milliseconds(params.time_limit_ms);
    return cfg;
}

}  // namespace

ScanReport scan_serial(const ScanParameters& params, const ScanOptions& options, const ScanReport* resume) {
    const auto start = std::chrono::steady_clock::now();
    ScanPlan p = plan(params, options, resume);
    const SearchConfig cfg = record_config(params, options);
    std::vector<ScanRecord> fresh;
    fresh.reserve(p.todo.size());
    for (const auto& c : p.todo) fresh.push_back(run_record(c, cfg));
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return assemble(params, std::move(p), std::move(fresh), ms);
}

ScanReport scan(const ScanParameters& params, const ScanOptions& options, const ScanReport* resume) {
    if (options.threads == 1) return scan_serial(params, options, resume);
    const auto start = std::chrono::steady_clock::now();
    ScanPlan p = plan(params, options, resume);
    const SearchConfig cfg = record_config(params, options);
    std::vector<ScanRecord> fresh(p.todo.size());
    const long count = static_cast<long>(p.todo.size());
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
    // Larger k tends to be slower; dynamic scheduling keeps workers busy.
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i) fresh[static_cast<std::size_t>(i)] = run_record(p.todo[static_cast<std::size_t>(i)], cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return assemble(params, std::move(p), std::move(fresh), ms);
}

bool check_k_le_n_minus_2(const ScanReport& report) {
    return std::none_of(report.records.begin(), report.records.end(), [](const ScanRecord& r) {
        return r.result == SearchResult::found && r.candidate.n >= 3 && r.candidate.k > r.candidate.n - 2;
    });
}

bool check_k_ge_n(const ScanReport& report) {
    return std::all_of(report.records.begin(), report.records.end(), [](const ScanRecord& r) {
        return r.result != SearchResult::found || r.candidate.k >= r.candidate.n;
    });
}

bool check_found_n_le_2(const ScanReport& report) {
    return std::all_of(report.records.begin(), report.records.end(),
                       [](const ScanRecord& r) { return r.result != SearchResult::found || r.candidate.n <= 2; });
}

std::string to_string(ScanVerdict v) {
    switch (v) {
        case ScanVerdict::trivial_expected: return "trivial_expected";
        case ScanVerdict::conjecture_consistent: return "conjecture_consistent";
        case ScanVerdict::conjecture_violation: return "CONJECTURE_VIOLATION";
        case ScanVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::optional<ScanVerdict> parse_scan_verdict(const std::string& s) {
    for (auto v : {ScanVerdict::trivial_expected, ScanVerdict::conjecture_consistent, ScanVerdict::conjecture_violation,
                   ScanVerdict::inconclusive})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::string to_string(OverallVerdict v) {
    switch (v) {
        case OverallVerdict::consistent: return "consistent";
        case OverallVerdict::violation: return "violation";
        case OverallVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace splitkit
