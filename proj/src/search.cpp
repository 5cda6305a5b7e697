#include "splitkit/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "cover_solver.hpp"

namespace splitkit {

namespace detail {

CoverSolver::CoverSolver(Int n, std::vector<Int> mres, const CoverOptions& options)
    : n_(n), width_(mres.size()), opt_(options) {
    for (Int& m : mres) m = mod(m, n_);

    OrderProfile profile;
    if (opt_.order_profile_pruning) {
        std::vector<Int> values(mres.begin(), mres.end());
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.size() == mres.size() && values.front() != 0) {
            profile = splitter_order_profile(n_, MultiplierSet::explicit_set(values));
            if (!profile.feasible) {
                refuted_ = true;
                return;
            }
            use_quota_ = profile.determined;
        }
    }
    if (use_quota_) {
        quota_ = profile.counts;
        used_.assign(quota_.size(), 0);
    }

    std::map<std::vector<std::int32_t>, Int> seen;
    std::vector<std::int32_t> elems(width_);
    for (Int s = 1; s < n_; ++s) {
        int cls = -1;
        if (use_quota_) {
            const Int ord = n_ / std::gcd(s, n_);
            cls = static_cast<int>(std::lower_bound(profile.orders.begin(), profile.orders.end(), ord) -
                                   profile.orders.begin());
            if (quota_[static_cast<std::size_t>(cls)] == 0) continue;
        }
        bool clean = true;
        for (std::size_t i = 0; i < width_; ++i) {
            const Int x = mul_mod(mres[i], s, n_);
            if (x == 0) {
                clean = false;
                break;
            }
            elems[i] = static_cast<std::int32_t>(x);
        }
        if (!clean) continue;
        std::sort(elems.begin(), elems.end());
        if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) continue;
        if (opt_.dedupe_orbits && !seen.emplace(elems, s).second) continue;
        row_s_.push_back(s);
        row_class_.push_back(cls);
        row_elems_.insert(row_elems_.end(), elems.begin(), elems.end());
    }

    col_rows_.assign(static_cast<std::size_t>(n_), {});
    for (std::size_t r = 0; r < row_s_.size(); ++r)
        for (std::size_t i = 0; i < width_; ++i)
            col_rows_[static_cast<std::size_t>(row_elems_[r * width_ + i])].push_back(static_cast<std::int32_t>(r));

    if (opt_.unit_symmetry && std::find(mres.begin(), mres.end(), 1) != mres.end() && n_ > 1) {
        // Row s = 1 is the smallest s, so it is first in every list holding it.
        root_row_ = (!row_s_.empty() && row_s_.front() == 1) ? 0 : -2;  // -2: no clean unit row exists
    }
    covered_.assign(static_cast<std::size_t>((n_ + 63) / 64), 0);
    flip(0);  // 0 is outside the universe
}

bool CoverSolver::budget_exhausted() {
    if (opt_.node_limit && nodes_ > opt_.node_limit) return true;
    if (opt_.time_limit.count() > 0 && (nodes_ & 1023) == 0 &&
        std::chrono::steady_clock::now() - start_ > opt_.time_limit)
        return true;
    return false;
}

CoverSolver::Status CoverSolver::run(const SolutionSink& sink) {
    start_ = std::chrono::steady_clock::now();
    if (refuted_) return Status::finished;
    sink_ = &sink;
    dfs(0, 1);
    if (aborted_) return Status::budget_exceeded;
    if (stopped_) return Status::stopped_by_sink;
    return Status::finished;
}

// Returns false when the search must unwind (budget or sink stop).
bool CoverSolver::dfs(int depth, Int from) {
    ++nodes_;
    max_depth_ = std::max(max_depth_, depth);
    if (budget_exhausted()) {
        aborted_ = true;
        return false;
    }
    Int x = from;
    while (x < n_ && test(x)) ++x;
    if (x >= n_) {
        solution_.clear();
        for (auto r : chosen_) solution_.push_back(row_s_[static_cast<std::size_t>(r)]);
        std::sort(solution_.begin(), solution_.end());
        if (!(*sink_)(solution_)) {
            stopped_ = true;
            return false;
        }
        return true;
    }

    const auto& candidates = col_rows_[static_cast<std::size_t>(x)];
    for (std::int32_t r : candidates) {
        if (depth == 0 && root_row_ != -1 && r != root_row_) continue;
        const int cls = row_class_[static_cast<std::size_t>(r)];
        if (use_quota_ && used_[static_cast<std::size_t>(cls)] >= quota_[static_cast<std::size_t>(cls)]) continue;
        const std::int32_t* e = &row_elems_[static_cast<std::size_t>(r) * width_];
        bool free = true;
        for (std::size_t i = 0; i < width_; ++i) {
            if (test(e[i])) {
                free = false;
                break;
            }
        }
        if (!free) continue;

        for (std::size_t i = 0; i < width_; ++i) flip(e[i]);
        if (use_quota_) ++used_[static_cast<std::size_t>(cls)];
        chosen_.push_back(r);
        const bool keep_going = dfs(depth + 1, x + 1);
        chosen_.pop_back();
        if (use_quota_) --used_[static_cast<std::size_t>(cls)];
        for (std::size_t i = 0; i < width_; ++i) flip(e[i]);
        if (!keep_going) return false;
    }
    return true;
}

}  // namespace detail

OrderProfile splitter_order_profile(Int N, const MultiplierSet& M) {
    OrderProfile prof;
    for (Int d : divisors(N))
        if (d > 1) prof.orders.push_back(d);
    const std::size_t D = prof.orders.size();
    prof.counts.assign(D, 0);
    const std::vector<Int> res = M.residues(N);

    // coeff[e][d] = #{m : e / gcd(m, e) = d}; hits_zero[e] = some m kills order e
    std::vector<std::map<Int, Int>> coeff(D);
    std::vector<bool> hits_zero(D, false);
    for (std::size_t ei = 0; ei < D; ++ei) {
        const Int e = prof.orders[ei];
        for (Int m : res) {
            const Int d = e / std::gcd(m, e);
            if (d == 1)
                hits_zero[ei] = true;
            else
                ++coeff[ei][d];
        }
    }

    for (std::size_t di = D; di-- > 0;) {
        const Int d = prof.orders[di];
        Int rhs = euler_phi(d);
        for (std::size_t ei = di + 1; ei < D; ++ei) {
            if (prof.counts[ei] == 0) continue;
            auto it = coeff[ei].find(d);
            if (it != coeff[ei].end()) rhs -= prof.counts[ei] * it->second;
        }
        auto pivot_it = coeff[di].find(d);
        const Int pivot = pivot_it == coeff[di].end() ? 0 : pivot_it->second;
        if (pivot == 0) {
            prof.determined = false;
            return prof;
        }
        if (rhs < 0 || rhs % pivot != 0 || (hits_zero[di] && rhs != 0)) {
            prof.feasible = false;
            return prof;
        }
        prof.counts[di] = rhs / pivot;
    }
    return prof;
}

SearchOutcome search_splitter(const FiniteAbelianGroup& G, const MultiplierSet& M, const SearchConfig& config) {
    if (!G.is_cyclic()) throw std::invalid_argument("search_splitter: group must be cyclic");
    const Int N = G.order();
    if ((N - 1) % static_cast<Int>(M.size()) != 0)
        throw std::invalid_argument("search_splitter: |M| must divide |G| - 1");

    const auto start = std::chrono::steady_clock::now();
    SearchOutcome out;
    if (N == 1) {
        out.result = SearchResult::found;
        out.splitters = SplitterSet{};
        return out;
    }

    detail::CoverOptions opt;
    opt.dedupe_orbits = config.dedupe_orbits;
    opt.unit_symmetry = config.unit_symmetry;
    opt.order_profile_pruning = config.order_profile_pruning;
    opt.node_limit = config.node_limit;
    opt.time_limit = config.time_limit;
    detail::CoverSolver solver(N, M.residues(N), opt);

    std::vector<Int> found;
    const auto status = solver.run([&](const std::vector<Int>& s) {
        found = s;
        return false;
    });

    out.stats.nodes = solver.nodes();
    out.stats.max_depth = solver.max_depth();
    out.stats.refuted_by_counting = solver.refuted_by_counting();
    switch (status) {
        case detail::CoverSolver::Status::stopped_by_sink: {
            SplitterSet S = SplitterSet::from_residues(found);
            const auto report = verify_splitting(G, M, S);
            if (!report.valid())
                throw std::logic_error("search produced a non-splitting: " + report.describe());
            out.result = SearchResult::found;
            out.splitters = std::move(S);
            break;
        }
        case detail::CoverSolver::Status::finished: out.result = SearchResult::exhausted_no_solution; break;
        case detail::CoverSolver::Status::budget_exceeded: out.result = SearchResult::resource_limit; break;
    }
    out.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

namespace {

// Calls f on each size-r subset of [1, n-1] in lexicographic order until f returns false.
template <class F>
bool for_each_combination(Int n, Int r, F&& f) {
    std::vector<Int> c(static_cast<std::size_t>(r));
    std::iota(c.begin(), c.end(), Int{1});
    const Int top = n - 1;
    if (r > top) return true;
    while (true) {
        if (!f(c)) return false;
        Int i = r - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == top - (r - 1 - i)) --i;
        if (i < 0) return true;
        ++c[static_cast<std::size_t>(i)];
        for (Int j = i + 1; j < r; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

EnumerationResult enumerate_all_splittings(Int N, Int size_of_m, const EnumerationBudget& budget) {
    if (N < 2 || size_of_m < 1 || (N - 1) % size_of_m != 0)
        throw std::invalid_argument("enumerate_all_splittings: size_of_M must divide N - 1");
    const Int size_of_s = (N - 1) / size_of_m;
    // For residues, M*S = S*M, so enumerate over the smaller side and swap.
    const bool transpose = size_of_m > size_of_s;
    const Int outer = transpose ? size_of_s : size_of_m;

    detail::CoverOptions opt;
    opt.dedupe_orbits = false;
    opt.unit_symmetry = false;
    opt.order_profile_pruning = true;

    EnumerationResult result;
    std::vector<std::pair<std::vector<Int>, std::vector<Int>>> pairs;
    for_each_combination(N, outer, [&](const std::vector<Int>& combo) {
        if (budget.node_limit) opt.node_limit = budget.node_limit - std::min(budget.node_limit, result.nodes);
        detail::CoverSolver solver(N, combo, opt);
        const auto status = solver.run([&](const std::vector<Int>& s) {
            if (transpose)
                pairs.emplace_back(s, combo);
            else
                pairs.emplace_back(combo, s);
            return pairs.size() < budget.max_certificates;
        });
        result.nodes += solver.nodes();
        if (status != detail::CoverSolver::Status::finished) {
            result.complete = false;
            return false;
        }
        return true;
    });

    std::sort(pairs.begin(), pairs.end());
    const auto G = FiniteAbelianGroup::cyclic(N);
    result.certificates.reserve(pairs.size());
    for (const auto& [m, s] : pairs) {
        auto M = MultiplierSet::explicit_set(m);
        auto S = SplitterSet::from_residues(s);
        SingularityClass c = classify_multipliers(G, M);
        result.certificates.push_back(SplittingCertificate{G, std::move(M), std::move(S), std::move(c)});
    }
    return result;
}

bool s87_property_check(const SplittingCertificate& cert) {
    const auto& G = cert.group;
    const auto& f = G.order_factorization();
    if (!G.is_cyclic() || f.pairs.size() != 1 || f.pairs[0].prime == 2)
        throw std::invalid_argument("s87_property_check: group must be cyclic of odd prime-power order");
    const Int p = f.pairs[0].prime;
    const Int N = G.order();
    const bool m_side = std::all_of(cert.multipliers.values().begin(), cert.multipliers.values().end(),
                                    [&](Int m) { return mod(m, N) % p != 0; });
    const bool s_side = std::all_of(cert.splitters.elements.begin(), cert.splitters.elements.end(),
                                    [&](const GroupElement& s) { return s.coords[0] % p != 0; });
    return m_side || s_side;
}

std::string to_string(SearchResult r) {
    switch (r) {
        case SearchResult::found: return "found";
        case SearchResult::exhausted_no_solution: return "exhausted_no_solution";
        case SearchResult::resource_limit: return "resource_limit";
    }
    return "?";
}

std::optional<SearchResult> parse_search_result(const std::string& s) {
    if (s == "found") return SearchResult::found;
    if (s == "exhausted_no_solution") return SearchResult::exhausted_no_solution;
    if (s == "resource_limit") return SearchResult::resource_limit;
    return std::nullopt;
}

}  // namespace splitkit
