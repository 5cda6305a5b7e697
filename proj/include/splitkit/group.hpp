#pragma once

// Finite abelian groups given as products of cyclic factors, plus the
// integer arithmetic (factorization, valuations, units) the rest of the
// library leans on.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace splitkit {

using Int = std::int64_t;

struct PrimePower {
    Int prime = 0;
    int exponent = 0;

    friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::vector<PrimePower> pairs;  // primes strictly increasing

    Int value() const;
    std::vector<Int> primes() const;
    // "3^2*5", or "1" for the empty product
    std::string to_string() const;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

// Canonical residue of a in [0, n).
constexpr Int mod(Int a, Int n) {
    Int r = a % n;
    return r < 0 ? r + n : r;
}

constexpr Int mul_mod(Int a, Int b, Int n) {
    return static_cast<Int>((static_cast<__int128>(mod(a, n)) * mod(b, n)) % n);
}

bool is_prime(Int n);
Factorization factorize(Int n);
int p_adic_valuation(Int n, Int p);
Int euler_phi(Int n);
Int ipow(Int base, int exp);
std::vector<Int> divisors(Int n);  // ascending

struct GroupElement {
    std::vector<Int> coords;

    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<Int> factors);
    static FiniteAbelianGroup cyclic(Int n) { return FiniteAbelianGroup({n}); }

    const std::vector<Int>& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    Int order() const { return order_; }
    const Factorization& order_factorization() const { return order_fact_; }
    // True when represented by a single factor Z_N.
    bool is_cyclic() const { return factors_.size() == 1; }

    GroupElement zero() const;
    // Reduces each coordinate into [0, d_i).
    GroupElement element(const std::vector<Int>& coords) const;
    GroupElement cyclic_element(Int residue) const;
    bool contains(const GroupElement& g) const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;

    // Mixed-radix index; agrees with the lexicographic element order.
    Int index_of(const GroupElement& g) const;
    GroupElement element_at(Int index) const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<Int> factors_;
    Int order_ = 1;
    Factorization order_fact_;
};

GroupElement scalar_mul(Int m, const GroupElement& g, const FiniteAbelianGroup& G);
Int element_order(const GroupElement& g, const FiniteAbelianGroup& G);

// Cyclic-only helpers. Both throw std::invalid_argument on non-cyclic input.
std::vector<GroupElement> unique_subgroup_of_order(const FiniteAbelianGroup& G, Int d);
std::vector<GroupElement> units(const FiniteAbelianGroup& G);

std::string to_string(const GroupElement& g);
std::string to_string(const FiniteAbelianGroup& G);

}  // namespace splitkit
