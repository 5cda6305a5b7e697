#include "splitkit/splitting.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace splitkit {

MultiplierSet MultiplierSet::interval(Int k) {
    if (k < 1) throw std::invalid_argument("S(k) needs k >= 1");
    MultiplierSet M;
    M.values_.resize(static_cast<std::size_t>(k));
    std::iota(M.values_.begin(), M.values_.end(), Int{1});
    M.kind_ = MultiplierKind::interval;
    return M;
}

MultiplierSet MultiplierSet::explicit_set(std::vector<Int> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) throw std::invalid_argument("multiplier set must be nonempty");
    if (std::binary_search(values.begin(), values.end(), Int{0}))
        throw std::invalid_argument("multiplier set must exclude 0");
    MultiplierSet M;
    M.values_ = std::move(values);
    // An explicit {1..k} is still S(k).
    const bool is_interval = M.values_.front() == 1 && M.values_.back() == static_cast<Int>(M.values_.size());
    M.kind_ = is_interval ? MultiplierKind::interval : MultiplierKind::explicit_set;
    return M;
}

std::vector<Int> MultiplierSet::residues(Int n) const {
    std::vector<Int> out;
    out.reserve(values_.size());
    for (Int v : values_) out.push_back(mod(v, n));
    return out;
}

SplitterSet SplitterSet::from_elements(std::vector<GroupElement> elems) {
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw std::invalid_argument("splitter set has duplicate elements");
    return SplitterSet{std::move(elems)};
}

SplitterSet SplitterSet::from_residues(const std::vector<Int>& residues) {
    std::vector<GroupElement> elems;
    elems.reserve(residues.size());
    for (Int r : residues) elems.push_back(GroupElement{{r}});
    return from_elements(std::move(elems));
}

std::vector<Int> SplitterSet::residues() const {
    std::vector<Int> out;
    out.reserve(elements.size());
    for (const auto& e : elements) {
        if (e.coords.size() != 1) throw std::invalid_argument("residues() on a non-cyclic splitter set");
        out.push_back(e.coords[0]);
    }
    return out;
}

Orbit orbit(const MultiplierSet& M, const GroupElement& s, const FiniteAbelianGroup& G) {
    Orbit o;
    o.multiset_size = M.size();
    const GroupElement zero = G.zero();
    for (Int m : M.values()) {
        GroupElement x = scalar_mul(m, s, G);
        if (x == zero) o.contains_zero = true;
        o.elements.push_back(std::move(x));
    }
    std::sort(o.elements.begin(), o.elements.end());
    o.elements.erase(std::unique(o.elements.begin(), o.elements.end()), o.elements.end());
    return o;
}

VerificationReport verify_splitting(const FiniteAbelianGroup& G, const MultiplierSet& M, const SplitterSet& S) {
    for (const auto& s : S.elements)
        if (!G.contains(s)) throw std::invalid_argument("splitter " + to_string(s) + " is not a reduced element of " + to_string(G));

    VerificationReport report;
    const Int expected = G.order() - 1;
    const Int actual = static_cast<Int>(M.size()) * static_cast<Int>(S.size());
    if (expected != actual) {
        report.failure = failure::CountMismatch{expected, actual};
        return report;
    }

    // hit[x] = 1 + (splitter index) * |M| + multiplier index, 0 if not yet hit
    std::vector<Int> hit(static_cast<std::size_t>(G.order()), 0);
    const Int msize = static_cast<Int>(M.size());
    for (std::size_t si = 0; si < S.size(); ++si) {
        const auto& s = S.elements[si];
        for (std::size_t mi = 0; mi < M.size(); ++mi) {
            const Int m = M.values()[mi];
            const GroupElement x = scalar_mul(m, s, G);
            const Int idx = G.index_of(x);
            if (idx == 0) {
                report.failure = failure::ZeroHit{{m, s}};
                return report;
            }
            Int& slot = hit[static_cast<std::size_t>(idx)];
            if (slot != 0) {
                const Int prev = slot - 1;
                const Representation first{M.values()[static_cast<std::size_t>(prev % msize)],
                                           S.elements[static_cast<std::size_t>(prev / msize)]};
                report.failure = failure::Collision{x, first, {m, s}};
                return report;
            }
            slot = 1 + static_cast<Int>(si) * msize + static_cast<Int>(mi);
        }
    }
    for (Int idx = 1; idx < G.order(); ++idx) {
        if (hit[static_cast<std::size_t>(idx)] == 0) {
            report.failure = failure::Uncovered{G.element_at(idx)};
            return report;
        }
    }
    return report;
}

VerificationReport verify_splitting(const SplittingCertificate& cert) {
    return verify_splitting(cert.group, cert.multipliers, cert.splitters);
}

std::string VerificationReport::describe() const {
    if (!failure) return "valid";
    auto rep = [](const Representation& r) {
        return "(" + std::to_string(r.multiplier) + "," + to_string(r.splitter) + ")";
    };
    return std::visit(
        [&](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, failure::ZeroHit>) {
                return "zero_hit " + rep(f.at);
            } else if constexpr (std::is_same_v<T, failure::Collision>) {
                return "collision at " + to_string(f.element) + " via " + rep(f.first) + " and " + rep(f.second);
            } else if constexpr (std::is_same_v<T, failure::Uncovered>) {
                return "uncovered " + to_string(f.element);
            } else {
                return "count_mismatch |M|*|S|=" + std::to_string(f.actual) +
                       " but |G|-1=" + std::to_string(f.expected);
            }
        },
        *failure);
}

SingularityClass classify_multipliers(const FiniteAbelianGroup& G, const MultiplierSet& M) {
    SingularityClass c;
    std::size_t divided = 0;
    for (Int p : G.order_factorization().primes()) {
        PrimeWitness w{p, std::nullopt};
        for (Int m : M.values()) {
            if (m % p == 0) {
                w.multiplier = m;
                break;
            }
        }
        if (w.multiplier) ++divided;
        c.witnesses.push_back(w);
    }
    // |G| = 1 has no prime divisors; it counts as purely singular.
    if (divided == c.witnesses.size())
        c.tag = SingularityTag::purely_singular;
    else if (divided == 0)
        c.tag = SingularityTag::nonsingular;
    else
        c.tag = SingularityTag::mixed_singular;
    return c;
}

SplittingCertificate make_certificate(FiniteAbelianGroup G, MultiplierSet M, SplitterSet S) {
    const auto report = verify_splitting(G, M, S);
    if (!report.valid()) throw std::invalid_argument("not a splitting: " + report.describe());
    SingularityClass c = classify_multipliers(G, M);
    return SplittingCertificate{std::move(G), std::move(M), std::move(S), std::move(c)};
}

SplittingCertificate trivial_certificate(Int k, TrivialOrder which) {
    if (k < 1) throw std::invalid_argument("trivial_certificate: k must be positive");
    if (which == TrivialOrder::k_plus_1)
        return make_certificate(FiniteAbelianGroup::cyclic(k + 1), MultiplierSet::interval(k),
                                SplitterSet::from_residues({1}));
    return make_certificate(FiniteAbelianGroup::cyclic(2 * k + 1), MultiplierSet::interval(k),
                            SplitterSet::from_residues({1, 2 * k}));
}

std::string to_string(SingularityTag tag) {
    switch (tag) {
        case SingularityTag::nonsingular: return "nonsingular";
        case SingularityTag::purely_singular: return "purely_singular";
        case SingularityTag::mixed_singular: return "mixed_singular";
    }
    return "?";
}

std::optional<SingularityTag> parse_singularity_tag(const std::string& s) {
    if (s == "nonsingular") return SingularityTag::nonsingular;
    if (s == "purely_singular") return SingularityTag::purely_singular;
    if (s == "mixed_singular") return SingularityTag::mixed_singular;
    return std::nullopt;
}

}  // namespace splitkit
