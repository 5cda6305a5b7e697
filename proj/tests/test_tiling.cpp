#include <stdexcept>
#include <random>
#include <set>

#include "doctest.h"
#include "splitkit/search.hpp"
#include "splitkit/tiling.hpp"

using namespace splitkit;

namespace {

IntMatrix mat(std::vector<std::vector<Int>> rows) {
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    return m;
}

Int det(const IntMatrix& a) {
    // Bareiss, exact for the small matrices used here
    const std::size_t n = a.rows();
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return static_cast<Int>(sign * m[n - 1][n - 1]);
}

bool is_hnf(const IntMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
        if (b(i, i) <= 0) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (b(i, j) != 0) return false;
        for (std::size_t j = i + 1; j < b.cols(); ++j)
            if (b(i, j) < 0 || b(i, j) >= b(i, i)) return false;
    }
    return true;
}

std::vector<SplittingCertificate> small_certificates() {
    std::vector<SplittingCertificate> out;
    for (Int N = 2; N <= 80; ++N)
        for (Int k = 1; k < N; ++k) {
            if ((N - 1) % k != 0) continue;
            const auto G = FiniteAbelianGroup::cyclic(N);
            const auto o = search_splitter(G, MultiplierSet::interval(k));
            if (o.splitters) out.push_back(make_certificate(G, MultiplierSet::interval(k), *o.splitters));
        }
    return out;
}

}  // namespace

TEST_CASE("error_ball shapes") {
    CHECK(error_ball(2, 1, 2, 0).points == std::vector<IntVector>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 0}});
    CHECK(error_ball(1, 1, 1, 1).points == std::vector<IntVector>{{-1}, {0}, {1}});
    CHECK(error_ball(3, 1, 1, 0).points.size() == 4);
    CHECK(error_ball(3, 3, 1, 1).points.size() == 27);
    CHECK_THROWS_AS(error_ball(1, 2, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(error_ball(2, 1, 0, 1), std::invalid_argument);
    // sum_{j<=t} C(n,j) (k+ + k-)^j
    const Int C42[] = {1, 4, 6};
    CHECK(static_cast<Int>(error_ball(4, 2, 2, 1).points.size()) == C42[0] + C42[1] * 3 + C42[2] * 9);
}

TEST_CASE("semi_cross") {
    CHECK(semi_cross(2, 2).points.size() == 5);
    CHECK(semi_cross(4, 1).points.size() == 5);
    CHECK(semi_cross(3, 4).points.size() == 13);
    CHECK_THROWS_AS(semi_cross(1, 3), std::invalid_argument);
}

TEST_CASE("HNF and lattice basics") {
    const auto L = IntegerLattice::from_generators(mat({{5, 1}, {0, 1}}));
    CHECK(L.basis() == mat({{5, 1}, {0, 1}}));
    CHECK(L.index() == 5);
    const auto L2 = IntegerLattice::from_generators(mat({{1, 5, 3}, {-1, 0, 2}}));
    CHECK(is_hnf(L2.basis()));
    CHECK(L2.index() == 5);  // gcd of the 2x2 minors 5, 5, 10
    CHECK_THROWS_AS(IntegerLattice::from_generators(mat({{1, 2}, {2, 4}})), std::invalid_argument);
}

TEST_CASE("HNF of random generators") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        IntMatrix g(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) g(r, c) = static_cast<Int>(rng() % 41) - 20;
        const Int d = det(g);
        if (d == 0) continue;
        const auto L = IntegerLattice::from_generators(g);
        REQUIRE(is_hnf(L.basis()));
        CHECK(L.index() == std::llabs(d));
        CHECK(std::llabs(det(L.basis())) == std::llabs(d));
        for (std::size_t c = 0; c < n; ++c) CHECK(L.contains(g.column(c)));
        // the period kills the quotient
        IntVector e(n, 0);
        e[0] = L.period();
        CHECK(L.contains(e));
        const auto snf = smith_normal_form(g);
        Int prod = 1;
        for (std::size_t i = 0; i < snf.invariants.size(); ++i) {
            prod *= snf.invariants[i];
            if (i) CHECK(snf.invariants[i] % snf.invariants[i - 1] == 0);
        }
        CHECK(prod == std::llabs(d));
        CHECK(std::llabs(det(snf.left)) == 1);
    }
}

TEST_CASE("lattice_from_splitting examples") {
    const auto c5 = trivial_certificate(2, TrivialOrder::two_k_plus_1);
    const auto t = lattice_from_splitting(c5);
    CHECK(t.lattice.basis() == mat({{5, 1}, {0, 1}}));
    CHECK(t.lattice.index() == 5);
    CHECK(t.hom.weights == std::vector<Int>{1, 4});

    const auto c4 = trivial_certificate(3, TrivialOrder::k_plus_1);
    const auto t4 = lattice_from_splitting(c4);
    CHECK(t4.lattice.basis() == mat({{4}}));

    CHECK_THROWS_AS(lattice_from_splitting(SplittingCertificate{FiniteAbelianGroup({3, 3}), MultiplierSet::interval(2),
                                                                  SplitterSet{}, {}}),
                    std::invalid_argument);
}

TEST_CASE("verify_lattice_tiling examples") {
    CHECK(verify_lattice_tiling(semi_cross(2, 2), LatticeHom{5, {1, 4}}).verdict);
    const auto bad = verify_lattice_tiling(semi_cross(2, 2), LatticeHom{5, {1, 2}});
    CHECK_FALSE(bad.verdict);
    REQUIRE(bad.collision);
    CHECK_THROWS_AS(verify_lattice_tiling(semi_cross(3, 2), LatticeHom{5, {1, 4}}), std::invalid_argument);
}

TEST_CASE("membership matches the homomorphism on random vectors") {
    std::mt19937_64 rng(9);
    for (const auto& cert : small_certificates()) {
        const auto t = lattice_from_splitting(cert);
        const auto w = cert.splitters.residues();
        const Int N = cert.group.order();
        CHECK(t.lattice.index() == N);
        CHECK(is_hnf(t.lattice.basis()));
        for (int trial = 0; trial < 200; ++trial) {
            IntVector x(w.size());
            Int s = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                x[i] = static_cast<Int>(rng() % 201) - 100;
                s += x[i] * w[i];
            }
            REQUIRE(t.lattice.contains(x) == (((s % N) + N) % N == 0));
        }
    }
}

TEST_CASE("tiling round trip and perturbations") {
    for (const auto& cert : small_certificates()) {
        const Int n = static_cast<Int>(cert.splitters.size());
        const Int k = cert.multipliers.k();
        const Int N = cert.group.order();
        const auto shape = error_ball(n, 1, k, 0);
        const auto t = lattice_from_splitting(cert);
        CHECK(verify_lattice_tiling(shape, t.hom).verdict);
        CHECK(verify_lattice_tiling(shape, t.lattice).verdict);
        // move one splitter to another residue
        for (std::size_t i = 0; i < t.hom.weights.size(); ++i) {
            LatticeHom h = t.hom;
            h.weights[i] = (h.weights[i] + 1) % N;
            const auto S = [&] {
                std::set<Int> s(h.weights.begin(), h.weights.end());
                return s;
            }();
            const bool still = verify_splitting(cert.group, cert.multipliers,
                                                SplitterSet::from_residues(std::vector<Int>(S.begin(), S.end())))
                                   .valid() &&
                               S.size() == h.weights.size();
            CHECK(verify_lattice_tiling(shape, h).verdict == still);
            CHECK(verify_lattice_tiling(shape, kernel_lattice(h)).verdict == still);
        }
    }
}

TEST_CASE("export_translates") {
    const auto t = lattice_from_splitting(trivial_certificate(2, TrivialOrder::two_k_plus_1));
    const auto shape = semi_cross(2, 2);
    auto tr = export_translates(t.lattice, shape, Box{{0, 0}, {9, 9}});
    CHECK(tr.size() == 20);
    std::size_t cells = 0;
    for (const auto& x : tr) cells += x.points.size();
    CHECK(cells == 100);

    tr = export_translates(t.lattice, shape, Box{{0, 0}, {-1, -1}});
    CHECK(tr.empty());

    // not a multiple of the period: clipped mode
    tr = export_translates(t.lattice, shape, Box{{-3, 2}, {3, 8}});
    cells = 0;
    for (const auto& x : tr) cells += x.points.size();
    CHECK(cells == 49);
    CHECK(tr.size() > 49 / 5);

    const auto t1 = lattice_from_splitting(trivial_certificate(3, TrivialOrder::k_plus_1));
    tr = export_translates(t1.lattice, error_ball(1, 1, 3, 0), Box{{0}, {7}});
    REQUIRE(tr.size() == 2);
    CHECK(tr[0].anchor == IntVector{0});
    CHECK(tr[1].anchor == IntVector{4});
}

TEST_CASE("export fails loudly on a non-tiling") {
    const auto L = kernel_lattice(LatticeHom{5, {1, 2}});
    CHECK_THROWS_AS(export_translates(L, semi_cross(2, 2), Box{{0, 0}, {9, 9}}), std::logic_error);
}
