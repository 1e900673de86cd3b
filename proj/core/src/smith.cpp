#include "kbg/smith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdlib>

namespace kbg {

namespace {

using boost::multiprecision::abs;

struct Worker {
    IntMatrix s, u, ui, v, vi;
    std::size_t m, n;

    explicit Worker(const IntMatrix& a)
        : s(a),
          u(IntMatrix::identity(a.rows())), ui(IntMatrix::identity(a.rows())),
          v(IntMatrix::identity(a.cols())), vi(IntMatrix::identity(a.cols())),
          m(a.rows()), n(a.cols()) {}

    // Row ops act on the left: s <- E s, u <- E u, ui <- ui E^-1.
    void swap_rows(std::size_t i, std::size_t j) {
        s.swap_rows(i, j);
        u.swap_rows(i, j);
        ui.swap_cols(i, j);
    }
    void add_row(std::size_t i, std::size_t j, const Int& c) {
        s.add_row(i, j, c);
        u.add_row(i, j, c);
        ui.add_col(j, i, -c);
    }
    void negate_row(std::size_t i) {
        s.negate_row(i);
        u.negate_row(i);
        ui.negate_col(i);
    }

    // Column ops act on the right: s <- s E, v <- v E, vi <- E^-1 vi.
    void swap_cols(std::size_t i, std::size_t j) {
        s.swap_cols(i, j);
        v.swap_cols(i, j);
        vi.swap_rows(i, j);
    }
    void add_col(std::size_t i, std::size_t j, const Int& c) {
        s.add_col(i, j, c);
        v.add_col(i, j, c);
        vi.add_row(j, i, -c);
    }

    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Int& x = s(i, j);
                if (x == 0) continue;
                if (!found || abs(x) < best) {
                    found = true;
                    best = abs(x);
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }

    // Quotient with the remainder minimal in absolute value; keeps every
    // reduction step halving, which is what bounds entry growth.
    static Int sym_quot(const Int& a, const Int& b) {
        Int q = a / b;
        Int r = a - q * b;
        if (r != 0 && 2 * abs(r) > abs(b)) q += ((r > 0) == (b > 0)) ? 1 : -1;
        return q;
    }

    // One reduction pass of column t and row t against the pivot. Leftover
    // residues are strictly smaller than the pivot, so the caller re-picks.
    bool sweep(std::size_t t) {
        bool residue = false;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (s(i, t) == 0) continue;
            Int q = sym_quot(s(i, t), s(t, t));
            if (q != 0) add_row(i, t, -q);
            if (s(i, t) != 0) residue = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (s(t, j) == 0) continue;
            Int q = sym_quot(s(t, j), s(t, t));
            if (q != 0) add_col(j, t, -q);
            if (s(t, j) != 0) residue = true;
        }
        return residue;
    }

    // Pivot must divide the whole trailing block; folding an offending row
    // into the pivot row makes the next sweep shrink the pivot.
    bool divisible(std::size_t t) {
        for (std::size_t i = t + 1; i < m; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (s(i, j) % s(t, t) != 0) {
                    add_row(t, i, 1);
                    return false;
                }
        return true;
    }

    void run() {
        const std::size_t steps = m < n ? m : n;
        for (std::size_t t = 0; t < steps; ++t) {
            // The pivot is re-picked as the globally smallest entry after
            // every pass; each round either finishes or strictly shrinks
            // it, and small pivots keep the quotients (and the fill-in)
            // small.
            for (;;) {
                std::size_t pi = t, pj = t;
                if (!find_pivot(t, pi, pj)) return;
                swap_rows(t, pi);
                swap_cols(t, pj);
                if (sweep(t)) continue;
                if (divisible(t)) break;
            }
            if (s(t, t) < 0) negate_row(t);
        }
    }
};

} // namespace

SmithResult smith_normal_form(const IntMatrix& a) {
    Worker w(a);
    w.run();
    SmithResult r{std::move(w.s), std::move(w.u), std::move(w.ui),
                  std::move(w.v), std::move(w.vi), 0};
    const std::size_t steps = a.rows() < a.cols() ? a.rows() : a.cols();
    for (std::size_t t = 0; t < steps && r.s(t, t) != 0; ++t) ++r.rank;
    for (std::size_t t = 1; t < r.rank; ++t)
        assert(r.s(t, t) % r.s(t - 1, t - 1) == 0);
    return r;
}

} // namespace kbg
