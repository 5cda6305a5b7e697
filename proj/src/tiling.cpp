#include "splitkit/tiling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace splitkit {

ErrorBallShape error_ball(Int n, Int t, Int k_plus, Int k_minus) {
    if (!(n >= t && t >= 1)) throw std::invalid_argument("error_ball: need n >= t >= 1");
    if (!(k_plus >= k_minus && k_minus >= 0)) throw std::invalid_argument("error_ball: need k_plus >= k_minus >= 0");
    ErrorBallShape ball{n, t, k_plus, k_minus, {}};
    // Depth-first in lexicographic order; only prefixes within the weight budget are extended.
    IntVector a(static_cast<std::size_t>(n), 0);
    auto fill = [&](auto&& self, std::size_t i, Int weight) -> void {
        if (i == a.size()) {
            ball.points.push_back(a);
            return;
        }
        for (Int v = -k_minus; v <= k_plus; ++v) {
            if (v != 0 && weight == t) continue;
            a[i] = v;
            self(self, i + 1, weight + (v != 0));
        }
        a[i] = 0;
    };
    fill(fill, 0, 0);
    return ball;
}

ErrorBallShape semi_cross(Int n, Int k) {
    if (n < 2 || k < 1) throw std::invalid_argument("semi_cross: need n >= 2, k >= 1");
    return error_ball(n, 1, k, 0);
}

Int LatticeHom::apply(const IntVector& x) const {
    if (x.size() != weights.size()) throw std::invalid_argument("LatticeHom: dimension mismatch");
    Int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc = mod(acc + mul_mod(x[i], weights[i], modulus), modulus);
    return acc;
}

IntegerLattice kernel_lattice(const LatticeHom& hom) {
    const std::size_t n = hom.weights.size();
    if (n == 0 || hom.modulus < 1) throw std::invalid_argument("kernel_lattice: need n >= 1, modulus >= 1");
    // Rows: the relation (w_1 .. w_n) on top of an identity block. Column
    // operations reduce the relation row to (g, 0, ..., 0); the identity block
    // then holds u with w.u = g and a basis of the exact integer kernel.
    IntMatrix aug(n + 1, n);
    for (std::size_t j = 0; j < n; ++j) {
        aug(0, j) = mod(hom.weights[j], hom.modulus);
        aug(j + 1, j) = 1;
    }
    for (std::size_t c = 1; c < n; ++c) {
        while (aug(0, c) != 0) {
            if (aug(0, 0) == 0 || std::llabs(aug(0, c)) < std::llabs(aug(0, 0)))
                for (std::size_t r = 0; r <= n; ++r) std::swap(aug(r, 0), aug(r, c));
            if (aug(0, c) == 0) break;
            const Int q = aug(0, c) / aug(0, 0);
            for (std::size_t r = 0; r <= n; ++r) aug(r, c) -= q * aug(r, 0);
        }
    }
    const Int g = std::llabs(aug(0, 0));
    // Multiples a*u lie in the kernel exactly when modulus | a*g.
    const Int step = hom.modulus / std::gcd(g, hom.modulus);
    IntMatrix gens(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        gens(r, 0) = aug(r + 1, 0) * step;
        for (std::size_t c = 1; c < n; ++c) gens(r, c) = aug(r + 1, c);
    }
    return IntegerLattice::from_generators(gens);
}

InducedTiling lattice_from_splitting(const SplittingCertificate& cert) {
    if (!cert.group.is_cyclic()) throw std::invalid_argument("lattice_from_splitting: certificate must be over a cyclic group");
    if (cert.multipliers.kind() != MultiplierKind::interval)
        throw std::invalid_argument("lattice_from_splitting: multiplier set must be S(k)");
    const auto report = verify_splitting(cert);
    if (!report.valid()) throw std::invalid_argument("lattice_from_splitting: certificate does not verify: " + report.describe());
    if (cert.splitters.size() == 0) throw std::invalid_argument("lattice_from_splitting: empty splitter set");
    LatticeHom hom{cert.group.order(), cert.splitters.residues()};
    IntegerLattice L = kernel_lattice(hom);
    return InducedTiling{std::move(hom), std::move(L)};
}

namespace {

template <class ImageFn>
TilingCertificate bijection_check(const ErrorBallShape& shape, Int target_size, ImageFn&& image) {
    TilingCertificate cert;
    cert.shape = shape;
    cert.verdict = static_cast<Int>(shape.points.size()) == target_size;
    std::map<IntVector, const IntVector*> seen;
    for (const auto& pt : shape.points) {
        auto [it, inserted] = seen.emplace(image(pt), &pt);
        if (!inserted) {
            cert.verdict = false;
            cert.collision = std::make_pair(*it->second, pt);
            break;
        }
    }
    return cert;
}

}  // namespace

TilingCertificate verify_lattice_tiling(const ErrorBallShape& shape, const LatticeHom& hom) {
    if (static_cast<std::size_t>(shape.n) != hom.weights.size())
        throw std::invalid_argument("verify_lattice_tiling: shape dimension differs from homomorphism arity");
    TilingCertificate cert = bijection_check(shape, hom.modulus, [&](const IntVector& x) { return IntVector{hom.apply(x)}; });
    cert.hom = hom;
    cert.lattice = kernel_lattice(hom);
    return cert;
}

TilingCertificate verify_lattice_tiling(const ErrorBallShape& shape, const IntegerLattice& lattice) {
    if (static_cast<std::size_t>(shape.n) != lattice.dimension())
        throw std::invalid_argument("verify_lattice_tiling: shape dimension differs from lattice dimension");
    const SmithForm snf = smith_normal_form(lattice.basis());
    const std::size_t n = lattice.dimension();
    TilingCertificate cert = bijection_check(shape, lattice.index(), [&](const IntVector& x) {
        IntVector q(n);
        for (std::size_t i = 0; i < n; ++i) {
            __int128 acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += static_cast<__int128>(snf.left(i, j)) * x[j];
            const Int d = snf.invariants[i];
            q[i] = static_cast<Int>(((acc % d) + d) % d);
        }
        return q;
    });
    cert.lattice = lattice;
    return cert;
}

bool Box::empty() const {
    if (lo.size() != hi.size() || lo.empty()) return true;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (hi[i] < lo[i]) return true;
    return false;
}

bool Box::contains(const IntVector& x) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

Int Box::volume() const {
    if (empty()) return 0;
    Int v = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i] + 1;
    return v;
}

namespace {

// Calls f on every integer vector in [lo, hi] in lexicographic order.
template <class F>
void for_each_in_box(const IntVector& lo, const IntVector& hi, F&& f) {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (hi[i] < lo[i]) return;
    IntVector x = lo;
    while (true) {
        f(x);
        std::size_t i = x.size();
        while (i > 0 && x[i - 1] == hi[i - 1]) {
            --i;
            x[i] = lo[i];
        }
        if (i == 0) return;
        ++x[i - 1];
    }
}

}  // namespace

std::vector<Translate> export_translates(const IntegerLattice& lattice, const ErrorBallShape& shape, const Box& box) {
    std::vector<Translate> out;
    if (box.empty()) return out;
    const std::size_t n = lattice.dimension();
    if (box.lo.size() != n || static_cast<std::size_t>(shape.n) != n)
        throw std::invalid_argument("export_translates: dimension mismatch");

    const Int period = lattice.period();
    bool periodic = true;
    IntVector extent(n);
    for (std::size_t i = 0; i < n; ++i) {
        extent[i] = box.hi[i] - box.lo[i] + 1;
        if (extent[i] % period != 0) periodic = false;
    }

    IntVector search_lo = box.lo, search_hi = box.hi;
    if (!periodic) {
        for (std::size_t i = 0; i < n; ++i) {
            search_lo[i] -= shape.k_plus;
            search_hi[i] += shape.k_minus;
        }
    }

    std::map<IntVector, int> cover;
    for_each_in_box(search_lo, search_hi, [&](const IntVector& a) {
        if (!lattice.contains(a)) return;
        Translate tr{a, {}};
        for (const auto& p : shape.points) {
            IntVector cell(n);
            for (std::size_t i = 0; i < n; ++i) {
                cell[i] = a[i] + p[i];
                if (periodic) cell[i] = box.lo[i] + mod(cell[i] - box.lo[i], extent[i]);
            }
            if (!box.contains(cell)) continue;
            ++cover[cell];
            tr.points.push_back(std::move(cell));
        }
        if (!tr.points.empty()) out.push_back(std::move(tr));
    });

    if (static_cast<Int>(cover.size()) != box.volume())
        throw std::logic_error("export_translates: some box cell is not covered");
    for (const auto& [cell, count] : cover)
        if (count != 1) throw std::logic_error("export_translates: a box cell is covered more than once");
    return out;
}

}  // namespace splitkit
