#include "splitkit/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace splitkit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr Int kTrialBound = 1'000'000;

u64 mulmod_u(u64 a, u64 b, u64 n) { return static_cast<u64>((u128)a * b % n); }

u64 powmod_u(u64 a, u64 e, u64 n) {
    u64 r = 1 % n;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod_u(r, a, n);
        a = mulmod_u(a, a, n);
        e >>= 1;
    }
    return r;
}

// Deterministic for all 64-bit inputs with these bases.
bool miller_rabin(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        u64 x = powmod_u(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant of Pollard rho with a fixed sequence of increments, so the
// result does not depend on any random state.
u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod_u(x, x, n) + c) % n; };
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        const u64 m = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod_u(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_large(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

}  // namespace

Int Factorization::value() const {
    Int v = 1;
    for (const auto& [p, e] : pairs) v *= ipow(p, e);
    return v;
}

std::vector<Int> Factorization::primes() const {
    std::vector<Int> out;
    out.reserve(pairs.size());
    for (const auto& pp : pairs) out.push_back(pp.prime);
    return out;
}

std::string Factorization::to_string() const {
    if (pairs.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) os << '*';
        os << pairs[i].prime;
        if (pairs[i].exponent > 1) os << '^' << pairs[i].exponent;
    }
    return os.str();
}

bool is_prime(Int n) { return n >= 2 && miller_rabin(static_cast<u64>(n)); }

Factorization factorize(Int n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    auto push = [&](Int p) {
        if (!f.pairs.empty() && f.pairs.back().prime == p)
            ++f.pairs.back().exponent;
        else
            f.pairs.push_back({p, 1});
    };
    for (Int p = 2; p <= kTrialBound && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            push(p);
            n /= p;
        }
    }
    if (n == 1) return f;
    // Remaining cofactor has no prime factor <= min(sqrt(n), bound).
    if (n < kTrialBound * kTrialBound || is_prime(n)) {
        push(n);
        return f;
    }
    std::vector<u64> rest;
    split_large(static_cast<u64>(n), rest);
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) push(static_cast<Int>(p));
    return f;
}

int p_adic_valuation(Int n, Int p) {
    if (n < 1 || p < 2) throw std::invalid_argument("p_adic_valuation: need n >= 1, p >= 2");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

Int euler_phi(Int n) {
    Int phi = n;
    for (const auto& [p, e] : factorize(n).pairs) phi = phi / p * (p - 1);
    return phi;
}

Int ipow(Int base, int exp) {
    Int r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

std::vector<Int> divisors(Int n) {
    std::vector<Int> out{1};
    for (const auto& [p, e] : factorize(n).pairs) {
        const std::size_t sz = out.size();
        Int pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("group needs at least one factor");
    for (Int d : factors_) {
        if (d < 1) throw std::invalid_argument("group factors must be positive");
        if (order_ > INT64_MAX / d) throw std::invalid_argument("group order overflows");
        order_ *= d;
    }
    order_fact_ = factorize(order_);
}

GroupElement FiniteAbelianGroup::zero() const { return GroupElement{std::vector<Int>(rank(), 0)}; }

GroupElement FiniteAbelianGroup::element(const std::vector<Int>& coords) const {
    if (coords.size() != rank()) throw std::invalid_argument("element arity does not match group rank");
    GroupElement g{coords};
    for (std::size_t i = 0; i < rank(); ++i) g.coords[i] = mod(g.coords[i], factors_[i]);
    return g;
}

GroupElement FiniteAbelianGroup::cyclic_element(Int residue) const {
    if (!is_cyclic()) throw std::invalid_argument("cyclic_element on a non-cyclic group");
    return GroupElement{{mod(residue, order_)}};
}

bool FiniteAbelianGroup::contains(const GroupElement& g) const {
    if (g.coords.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
        if (g.coords[i] < 0 || g.coords[i] >= factors_[i]) return false;
    return true;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mod(a.coords[i] + b.coords[i], factors_[i]);
    return r;
}

Int FiniteAbelianGroup::index_of(const GroupElement& g) const {
    Int idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) idx = idx * factors_[i] + g.coords[i];
    return idx;
}

GroupElement FiniteAbelianGroup::element_at(Int index) const {
    GroupElement g{std::vector<Int>(rank(), 0)};
    for (std::size_t i = rank(); i-- > 0;) {
        g.coords[i] = index % factors_[i];
        index /= factors_[i];
    }
    return g;
}

GroupElement scalar_mul(Int m, const GroupElement& g, const FiniteAbelianGroup& G) {
    GroupElement r = g;
    for (std::size_t i = 0; i < G.rank(); ++i) r.coords[i] = mul_mod(m, g.coords[i], G.factors()[i]);
    return r;
}

Int element_order(const GroupElement& g, const FiniteAbelianGroup& G) {
    Int ord = 1;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        const Int d = G.factors()[i];
        ord = std::lcm(ord, d / std::gcd(g.coords[i], d));
    }
    return ord;
}

std::vector<GroupElement> unique_subgroup_of_order(const FiniteAbelianGroup& G, Int d) {
    if (!G.is_cyclic()) throw std::invalid_argument("unique_subgroup_of_order: group must be cyclic");
    const Int n = G.order();
    if (d < 1 || n % d != 0) throw std::invalid_argument("unique_subgroup_of_order: d must divide |G|");
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(d));
    for (Int j = 0; j < d; ++j) out.push_back(GroupElement{{(n / d) * j}});
    return out;
}

std::vector<GroupElement> units(const FiniteAbelianGroup& G) {
    if (!G.is_cyclic()) throw std::invalid_argument("units: group must be cyclic");
    const Int n = G.order();
    std::vector<GroupElement> out;
    for (Int x = 1; x < n; ++x)
        if (std::gcd(x, n) == 1) out.push_back(GroupElement{{x}});
    return out;
}

std::string to_string(const GroupElement& g) {
    if (g.coords.size() == 1) return std::to_string(g.coords[0]);
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < g.coords.size(); ++i) os << (i ? "," : "") << g.coords[i];
    os << ')';
    return os.str();
}

std::string to_string(const FiniteAbelianGroup& G) {
    std::ostringstream os;
    for (std::size_t i = 0; i < G.rank(); ++i) os << (i ? " x " : "") << "Z_" << G.factors()[i];
    return os.str();
}

}  // namespace splitkit
