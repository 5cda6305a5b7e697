#pragma once

// Limited-magnitude error balls and lattice tilings of Z^n induced by
// splittings of Z_N by S(k).

#include <optional>
#include <vector>

#include "splitkit/lattice.hpp"
#include "splitkit/splitting.hpp"

namespace splitkit {

using IntVector = std::vector<Int>;

struct ErrorBallShape {
    Int n = 0;
    Int t = 0;
    Int k_plus = 0;
    Int k_minus = 0;
    std::vector<IntVector> points;  // lexicographically sorted
};

// All a in Z^n with entries in [-k_minus, k_plus] and at most t nonzero entries.
// Throws std::invalid_argument unless n >= t >= 1 and k_plus >= k_minus >= 0.
ErrorBallShape error_ball(Int n, Int t, Int k_plus, Int k_minus);
// error_ball(n, 1, k, 0); requires n >= 2, k >= 1.
ErrorBallShape semi_cross(Int n, Int k);

// x -> sum x_i * weights_i (mod modulus)
struct LatticeHom {
    Int modulus = 0;
    std::vector<Int> weights;

    Int apply(const IntVector& x) const;
    friend bool operator==(const LatticeHom&, const LatticeHom&) = default;
};

// Kernel of the homomorphism as a lattice in Hermite normal form.
IntegerLattice kernel_lattice(const LatticeHom& hom);

struct InducedTiling {
    LatticeHom hom;
    IntegerLattice lattice;
};

// Requires a verifying certificate over Z_N with multipliers S(k); the
// splitters become the weights. Throws std::invalid_argument otherwise.
InducedTiling lattice_from_splitting(const SplittingCertificate& cert);

struct TilingCertificate {
    ErrorBallShape shape;
    std::optional<IntegerLattice> lattice;
    std::optional<LatticeHom> hom;
    bool verdict = false;
    // First pair of shape points with the same image, if any.
    std::optional<std::pair<IntVector, IntVector>> collision;
};

// Bijection test of the shape onto Z_N through the homomorphism.
TilingCertificate verify_lattice_tiling(const ErrorBallShape& shape, const LatticeHom& hom);
// Same test for an externally supplied basis, through the Smith form quotient map.
TilingCertificate verify_lattice_tiling(const ErrorBallShape& shape, const IntegerLattice& lattice);

struct Box {
    IntVector lo;
    IntVector hi;  // inclusive; any hi_i < lo_i makes the box empty

    bool empty() const;
    bool contains(const IntVector& x) const;
    Int volume() const;
};

struct Translate {
    IntVector anchor;
    std::vector<IntVector> points;  // cells of the box covered by this translate
};

// Translates of the shape by lattice points, restricted to the box. When each
// box side is a multiple of the lattice period, the box is treated as a
// torus: anchors are the lattice points inside it and cells wrap around.
// Otherwise every translate meeting the box is listed with its cells
// clipped. Either way every cell must be covered exactly once; throws
// std::logic_error if not.
std::vector<Translate> export_translates(const IntegerLattice& lattice, const ErrorBallShape& shape, const Box& box);

}  // namespace splitkit
