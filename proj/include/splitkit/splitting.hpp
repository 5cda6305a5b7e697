#pragma once

// Splittings M * S = G \ {0}: verification, classification and the
// certificate object passed between the search, tiling and check layers.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "splitkit/group.hpp"

namespace splitkit {

enum class MultiplierKind { interval, explicit_set };

class MultiplierSet {
public:
    // S(k) = {1, ..., k}
    static MultiplierSet interval(Int k);
    // Sorted and deduplicated; throws on 0.
    static MultiplierSet explicit_set(std::vector<Int> values);

    const std::vector<Int>& values() const { return values_; }
    MultiplierKind kind() const { return kind_; }
    // Only meaningful for interval sets.
    Int k() const { return kind_ == MultiplierKind::interval ? static_cast<Int>(values_.size()) : 0; }
    std::size_t size() const { return values_.size(); }

    // Residues mod n in the order of values(); may contain 0 or repeats.
    std::vector<Int> residues(Int n) const;

    friend bool operator==(const MultiplierSet&, const MultiplierSet&) = default;

private:
    std::vector<Int> values_;
    MultiplierKind kind_ = MultiplierKind::explicit_set;
};

struct SplitterSet {
    std::vector<GroupElement> elements;  // strictly increasing

    static SplitterSet from_elements(std::vector<GroupElement> elems);
    static SplitterSet from_residues(const std::vector<Int>& residues);
    std::size_t size() const { return elements.size(); }
    std::vector<Int> residues() const;  // cyclic groups only

    friend bool operator==(const SplitterSet&, const SplitterSet&) = default;
};

enum class SingularityTag { nonsingular, purely_singular, mixed_singular };

struct PrimeWitness {
    Int prime = 0;
    std::optional<Int> multiplier;  // least m in M with prime | m

    friend bool operator==(const PrimeWitness&, const PrimeWitness&) = default;
};

struct SingularityClass {
    SingularityTag tag = SingularityTag::nonsingular;
    std::vector<PrimeWitness> witnesses;  // one per prime divisor of |G|

    friend bool operator==(const SingularityClass&, const SingularityClass&) = default;
};

struct SplittingCertificate {
    FiniteAbelianGroup group;
    MultiplierSet multipliers;
    SplitterSet splitters;
    SingularityClass classification;

    friend bool operator==(const SplittingCertificate&, const SplittingCertificate&) = default;
};

struct Representation {
    Int multiplier = 0;
    GroupElement splitter;

    friend bool operator==(const Representation&, const Representation&) = default;
};

namespace failure {
struct ZeroHit {
    Representation at;
};
struct Collision {
    GroupElement element;
    Representation first;
    Representation second;
};
struct Uncovered {
    GroupElement element;
};
struct CountMismatch {
    Int expected = 0;  // |G| - 1
    Int actual = 0;    // |M| * |S|
};
}  // namespace failure

using VerificationFailure =
    std::variant<failure::ZeroHit, failure::Collision, failure::Uncovered, failure::CountMismatch>;

struct VerificationReport {
    std::optional<VerificationFailure> failure;

    bool valid() const { return !failure.has_value(); }
    std::string describe() const;
};

struct Orbit {
    std::vector<GroupElement> elements;  // distinct values, ascending
    std::size_t multiset_size = 0;       // |M|
    bool contains_zero = false;

    bool clean() const { return !contains_zero && elements.size() == multiset_size; }
};

Orbit orbit(const MultiplierSet& M, const GroupElement& s, const FiniteAbelianGroup& G);

VerificationReport verify_splitting(const FiniteAbelianGroup& G, const MultiplierSet& M, const SplitterSet& S);
VerificationReport verify_splitting(const SplittingCertificate& cert);

SingularityClass classify_multipliers(const FiniteAbelianGroup& G, const MultiplierSet& M);

// Builds and classifies a certificate after checking it verifies; throws
// std::invalid_argument if it does not.
SplittingCertificate make_certificate(FiniteAbelianGroup G, MultiplierSet M, SplitterSet S);

enum class TrivialOrder { k_plus_1, two_k_plus_1 };
SplittingCertificate trivial_certificate(Int k, TrivialOrder which);

std::string to_string(SingularityTag tag);
std::optional<SingularityTag> parse_singularity_tag(const std::string& s);

}  // namespace splitkit
