#include "splitkit/proof_checks.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace splitkit {

Int DigitExpansion::value() const {
    Int v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * base + digits[i];
    return v;
}

DigitExpansion base_p_digits(Int k, Int p) {
    if (k < 0 || p < 2) throw std::invalid_argument("base_p_digits: need k >= 0, p >= 2");
    DigitExpansion e{p, {}};
    for (; k > 0; k /= p) e.digits.push_back(k % p);
    return e;
}

KDecomposition decompose_k(Int k, Int p, Int m) {
    if (k < 1) throw std::invalid_argument("decompose_k: k must be positive");
    if (!is_prime(p)) throw std::invalid_argument("decompose_k: p must be prime");
    if (m < 1 || m % p == 0) throw std::invalid_argument("decompose_k: m must be positive and prime to p");
    KDecomposition dec;
    dec.k = k;
    dec.p = p;
    dec.m = m;
    Int v = dec.reduced();
    dec.beta = p_adic_valuation(v, p);
    dec.d = std::gcd(v, p - 1);
    dec.m_prime = v / ipow(p, dec.beta) / dec.d;
    dec.m_prime_divides_m = m % dec.m_prime == 0;
    return dec;
}

bool digit_pattern_check(const KDecomposition& dec) {
    const DigitExpansion e = base_p_digits(dec.k, dec.p);
    const auto beta = static_cast<std::size_t>(dec.beta);
    for (std::size_t i = 1; i <= beta; ++i)
        if (e.digit(i) != e.digit(0)) return false;
    const std::size_t r = e.digits.size() - 1;
    if (r > beta && e.digit(beta + 1) == e.digit(beta)) return false;
    return true;
}

namespace {

void require_cyclic_valid(const SplittingCertificate& cert, const char* who) {
    if (!cert.group.is_cyclic()) throw std::invalid_argument(std::string(who) + ": group must be cyclic");
    if (!verify_splitting(cert).valid()) throw std::invalid_argument(std::string(who) + ": certificate does not verify");
}

int order_valuation(const GroupElement& x, const FiniteAbelianGroup& G, Int p) {
    return p_adic_valuation(element_order(x, G), p);
}

}  // namespace

StratificationProfile stratify(const SplittingCertificate& cert, Int p) {
    const auto& G = cert.group;
    if (!is_prime(p) || G.order() % p != 0) throw std::invalid_argument("stratify: p must be a prime divisor of |G|");
    StratificationProfile prof;
    prof.p = p;
    prof.alpha = p_adic_valuation(G.order(), p);
    prof.g_counts.assign(static_cast<std::size_t>(prof.alpha) + 1, 0);
    prof.s_counts.assign(static_cast<std::size_t>(prof.alpha) + 1, 0);
    for (Int idx = 0; idx < G.order(); ++idx) ++prof.g_counts[static_cast<std::size_t>(order_valuation(G.element_at(idx), G, p))];
    for (const auto& s : cert.splitters.elements) ++prof.s_counts[static_cast<std::size_t>(order_valuation(s, G, p))];
    return prof;
}

CountingIdentity check_counting_identity(const SplittingCertificate& cert, Int p, int i) {
    require_cyclic_valid(cert, "check_counting_identity");
    const StratificationProfile prof = stratify(cert, p);
    if (i < 1 || i > prof.alpha) throw std::invalid_argument("check_counting_identity: stratum index out of range");
    CountingIdentity ci;
    ci.stratum = i;
    for (int j = i; j <= prof.alpha; ++j) {
        Int with_valuation = 0;
        for (Int m : cert.multipliers.values())
            if (p_adic_valuation(m < 0 ? -m : m, p) == j - i) ++with_valuation;
        ci.lhs += with_valuation * prof.s_counts[static_cast<std::size_t>(j)];
    }
    ci.rhs = prof.g_counts[static_cast<std::size_t>(i)];
    return ci;
}

AbcdeProfile abcde_profile(Int k, Int p, const std::vector<PrimeExponents>& primes) {
    if (k < 1) throw std::invalid_argument("abcde_profile: k must be positive");
    if (!is_prime(p)) throw std::invalid_argument("abcde_profile: p must be prime");
    Int prev = p;
    for (const auto& q : primes) {
        if (!is_prime(q.prime) || q.prime <= prev) throw std::invalid_argument("abcde_profile: need p < p_1 < p_2 < ... primes");
        if (q.alpha < 1 || q.beta < 0 || q.beta > q.alpha) throw std::invalid_argument("abcde_profile: need 0 <= beta_i <= alpha_i, alpha_i >= 1");
        prev = q.prime;
    }

    AbcdeProfile prof;
    prof.k = k;
    prof.p = p;
    prof.primes = primes;

    Int m = 1;
    Int m_prime = 1;
    std::vector<Int> in_m_prime;
    std::vector<Int> all;
    for (const auto& q : primes) {
        m *= ipow(q.prime, q.alpha);
        all.push_back(q.prime);
        if (q.beta > 0) {
            m_prime *= ipow(q.prime, q.beta);
            in_m_prime.push_back(q.prime);
        }
    }
    const KDecomposition dec = decompose_k(k, p, m);
    prof.beta = dec.beta;
    prof.d = dec.d;
    prof.preconditions_met = dec.reduced() == ipow(p, dec.beta) * dec.d * m_prime;

    prof.closed_form_d = ipow(p, dec.beta) * dec.d;
    for (const auto& q : primes)
        if (q.beta > 0) prof.closed_form_d *= ipow(q.prime, q.beta - 1) * (q.prime - 1);

    auto coprime_to = [](Int x, const std::vector<Int>& ps) {
        return std::none_of(ps.begin(), ps.end(), [x](Int q) { return x % q == 0; });
    };
    const Int b_end = k / p;
    const Int c_end = dec.reduced();
    for (Int x = 1; x <= k; ++x) {
        const bool cp = coprime_to(x, in_m_prime);
        if (cp) {
            ++prof.a;
            if (x <= b_end) ++prof.b;
            if (x <= c_end) ++prof.c;
            if (x % p != 0) ++prof.d_count;
        }
        if (x % p != 0 && coprime_to(x, all)) ++prof.e;
    }
    return prof;
}

TwReport tw_disjointness_check(const SplittingCertificate& cert) {
    require_cyclic_valid(cert, "tw_disjointness_check");
    const Int N = cert.group.order();
    if (std::gcd(N, Int{6}) != 1) throw std::invalid_argument("tw_disjointness_check: need gcd(|G|, 6) = 1");
    if (cert.multipliers.kind() != MultiplierKind::interval)
        throw std::invalid_argument("tw_disjointness_check: multiplier set must be S(k)");
    if (classify_multipliers(cert.group, cert.multipliers).tag != SingularityTag::purely_singular || N == 1)
        throw std::invalid_argument("tw_disjointness_check: splitting must be purely singular");

    const Int k = cert.multipliers.k();
    const auto& fact = cert.group.order_factorization();
    TwReport rep;
    rep.p = fact.pairs.front().prime;
    rep.alpha = fact.pairs.front().exponent;
    rep.m = N / ipow(rep.p, rep.alpha);
    rep.decomposition = decompose_k(k, rep.p, rep.m);
    const auto& dec = rep.decomposition;

    for (Int x = 1; x < N; ++x)
        if (std::gcd(x, N) == 1) ++rep.units;
    if (!dec.m_prime_divides_m) return rep;

    const Int sub_order = ipow(rep.p, dec.beta) * dec.m_prime;
    for (const auto& g : unique_subgroup_of_order(cert.group, sub_order)) rep.subgroup.push_back(g.coords[0]);

    rep.w_formula = ipow(rep.p, dec.beta);
    const Factorization mp = factorize(dec.m_prime);
    std::vector<Int> primes_of_m_prime{rep.p};
    for (const auto& [q, bq] : mp.pairs) {
        const int aq = p_adic_valuation(rep.m, q);
        rep.w_formula *= bq < aq ? ipow(q, bq) : ipow(q, bq - 1) * (q - 1);
        primes_of_m_prime.push_back(q);
    }

    for (Int s : cert.splitters.residues())
        if (std::gcd(s, N) == 1) rep.unit_splitters.push_back(s);

    rep.w_matches_formula = true;
    rep.tw_is_d_times_w = true;
    rep.inside_units = true;
    for (Int s : rep.unit_splitters) {
        std::vector<Int> w;
        for (Int x : rep.subgroup) {
            const Int y = mod(s + x, N);
            if (std::gcd(y, N) == 1) w.push_back(y);
        }
        std::sort(w.begin(), w.end());
        std::set<Int> tw;
        for (Int t = 1; t <= dec.d; ++t)
            for (Int y : w) tw.insert(mul_mod(t, y, N));
        if (static_cast<Int>(w.size()) != rep.w_formula) rep.w_matches_formula = false;
        if (static_cast<Int>(tw.size()) != dec.d * static_cast<Int>(w.size())) rep.tw_is_d_times_w = false;
        for (Int y : tw)
            if (std::gcd(y, N) != 1) rep.inside_units = false;
        rep.w_sets.push_back(std::move(w));
        rep.tw_sets.emplace_back(tw.begin(), tw.end());
    }

    rep.pairwise_disjoint = true;
    for (std::size_t i = 0; i < rep.tw_sets.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.tw_sets.size(); ++j) {
            std::vector<Int> common;
            std::set_intersection(rep.tw_sets[i].begin(), rep.tw_sets[i].end(), rep.tw_sets[j].begin(),
                                  rep.tw_sets[j].end(), std::back_inserter(common));
            if (!common.empty()) rep.pairwise_disjoint = false;
        }
    }

    for (Int x = 1; x <= k; ++x) {
        if (std::none_of(primes_of_m_prime.begin(), primes_of_m_prime.end(), [x](Int q) { return x % q == 0; }))
            ++rep.d_count;
        if (std::gcd(x, N) == 1) ++rep.e_count;
    }
    rep.equality_chain = !rep.tw_sets.empty() &&
                         std::all_of(rep.tw_sets.begin(), rep.tw_sets.end(),
                                     [&](const auto& tw) { return static_cast<Int>(tw.size()) == rep.d_count; }) &&
                         rep.d_count == rep.e_count && static_cast<Int>(rep.r()) * rep.e_count == rep.units;
    return rep;
}

}  // namespace splitkit
