#include "splitkit/lattice.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <utility>

namespace splitkit {

namespace {

Int checked(__int128 v) {
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
        throw std::overflow_error("integer lattice arithmetic overflowed 64 bits");
    return static_cast<Int>(v);
}

struct ExtGcd {
    Int g, s, t;  // s*a + t*b = g >= 0
};

ExtGcd ext_gcd(Int a, Int b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const Int q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
        old_t = std::exchange(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// col_a <- sa*col_a + ta*col_b, col_b <- sb*col_a + tb*col_b (simultaneously)
void mix_columns(IntMatrix& m, std::size_t a, std::size_t b, Int sa, Int ta, Int sb, Int tb) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const __int128 x = m(r, a), y = m(r, b);
        m(r, a) = checked(sa * x + ta * y);
        m(r, b) = checked(sb * x + tb * y);
    }
}

void add_column(IntMatrix& m, std::size_t dst, std::size_t src, Int factor) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) = checked(m(r, dst) + static_cast<__int128>(factor) * m(r, src));
}

void add_row(IntMatrix& m, std::size_t dst, std::size_t src, Int factor) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) = checked(m(dst, c) + static_cast<__int128>(factor) * m(src, c));
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Int> IntMatrix::column(std::size_t c) const {
    std::vector<Int> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            __int128 acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += static_cast<__int128>(a(i, k)) * b(k, j);
            out(i, j) = checked(acc);
        }
    return out;
}

IntMatrix hermite_normal_form(const IntMatrix& generators) {
    const std::size_t n = generators.rows();
    const std::size_t m = generators.cols();
    if (m < n) throw std::invalid_argument("hermite_normal_form: fewer generators than the dimension");
    IntMatrix a = generators;
    const std::size_t shift = m - n;
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t pivot = i + shift;
        for (std::size_t c = 0; c < pivot; ++c) {
            if (a(i, c) == 0) continue;
            const Int y = a(i, pivot), x = a(i, c);
            const ExtGcd e = ext_gcd(y, x);
            // new pivot = s*pivot + t*c, new c = (y/g)*c - (x/g)*pivot
            mix_columns(a, pivot, c, e.s, e.t, -x / e.g, y / e.g);
        }
        if (a(i, pivot) == 0) throw std::invalid_argument("hermite_normal_form: generators are not full rank");
        if (a(i, pivot) < 0)
            for (std::size_t r = 0; r < n; ++r) a(r, pivot) = -a(r, pivot);
        for (std::size_t c = pivot + 1; c < m; ++c) add_column(a, c, pivot, -floor_div(a(i, c), a(i, pivot)));
    }
    IntMatrix basis(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) basis(r, c) = a(r, c + shift);
    return basis;
}

IntegerLattice IntegerLattice::from_generators(const IntMatrix& generators) {
    IntegerLattice L;
    L.basis_ = hermite_normal_form(generators);
    __int128 det = 1;
    for (std::size_t i = 0; i < L.basis_.rows(); ++i) det *= L.basis_(i, i);
    L.index_ = checked(det);
    return L;
}

bool IntegerLattice::contains(const std::vector<Int>& x) const {
    if (x.size() != dimension()) throw std::invalid_argument("lattice membership: dimension mismatch");
    std::vector<__int128> v(x.begin(), x.end());
    for (std::size_t i = dimension(); i-- > 0;) {
        const Int diag = basis_(i, i);
        if (v[i] % diag != 0) return false;
        const __int128 q = v[i] / diag;
        for (std::size_t r = 0; r <= i; ++r) v[r] -= q * basis_(r, i);
    }
    return true;
}

Int IntegerLattice::period() const { return smith_normal_form(basis_).invariants.back(); }

SmithForm smith_normal_form(const IntMatrix& input) {
    const std::size_t n = input.rows();
    if (input.cols() != n) throw std::invalid_argument("smith_normal_form: square matrix expected");
    IntMatrix a = input;
    IntMatrix u = IntMatrix::identity(n);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            std::size_t br = n, bc = n;
            for (std::size_t r = t; r < n; ++r)
                for (std::size_t c = t; c < n; ++c)
                    if (a(r, c) != 0 && (br == n || std::llabs(a(r, c)) < std::llabs(a(br, bc)))) {
                        br = r;
                        bc = c;
                    }
            if (br == n) throw std::invalid_argument("smith_normal_form: singular matrix");
            if (br != t) {
                swap_rows(a, br, t);
                swap_rows(u, br, t);
            }
            if (bc != t) swap_columns(a, bc, t);

            bool clean = true;
            for (std::size_t r = t + 1; r < n; ++r) {
                const Int q = a(r, t) / a(t, t);
                if (q) {
                    add_row(a, r, t, -q);
                    add_row(u, r, t, -q);
                }
                if (a(r, t)) clean = false;
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                const Int q = a(t, c) / a(t, t);
                if (q) add_column(a, c, t, -q);
                if (a(t, c)) clean = false;
            }
            if (!clean) continue;

            std::size_t bad = n;
            for (std::size_t r = t + 1; r < n && bad == n; ++r)
                for (std::size_t c = t + 1; c < n; ++c)
                    if (a(r, c) % a(t, t) != 0) {
                        bad = r;
                        break;
                    }
            if (bad == n) break;
            add_row(a, t, bad, 1);
            add_row(u, t, bad, 1);
        }
        if (a(t, t) < 0) {
            for (std::size_t c = 0; c < n; ++c) {
                a(t, c) = -a(t, c);
                u(t, c) = -u(t, c);
            }
        }
    }
    SmithForm s;
    s.left = std::move(u);
    for (std::size_t i = 0; i < n; ++i) s.invariants.push_back(a(i, i));
    return s;
}

}  // namespace splitkit
