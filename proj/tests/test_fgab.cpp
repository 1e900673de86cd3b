#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kbg/abelian_group.hpp"
#include "kbg/homomorphism.hpp"
#include "kbg/int_matrix.hpp"
#include "kbg/smith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace kbg;
using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

namespace {

// ---- independent oracles -------------------------------------------------

// Invariant factors via determinantal divisors: d_k = D_k / D_{k-1} where
// D_k is the gcd of all k x k minors. Exponential in the matrix size, fine
// for the small fixtures it cross-checks.
IntVec invariant_factors_by_minors(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t kmax = std::min(m, n);
    IntVec divisors; // D_1, D_2, ...
    for (std::size_t k = 1; k <= kmax; ++k) {
        std::vector<std::size_t> ri(k), ci(k);
        std::iota(ri.begin(), ri.end(), 0);
        Int g = 0;
        bool more_rows = true;
        while (more_rows) {
            std::iota(ci.begin(), ci.end(), 0);
            bool more_cols = true;
            while (more_cols) {
                Int det = a.select_rows(ri).select_columns(ci).determinant();
                g = gcd(g, abs(det));
                // next column combination
                more_cols = false;
                for (std::size_t t = k; t-- > 0;) {
                    if (ci[t] + (k - t) <= n - 1) {
                        ++ci[t];
                        for (std::size_t s = t + 1; s < k; ++s) ci[s] = ci[s - 1] + 1;
                        more_cols = true;
                        break;
                    }
                }
            }
            more_rows = false;
            for (std::size_t t = k; t-- > 0;) {
                if (ri[t] + (k - t) <= m - 1) {
                    ++ri[t];
                    for (std::size_t s = t + 1; s < k; ++s) ri[s] = ri[s - 1] + 1;
                    more_rows = true;
                    break;
                }
            }
        }
        if (g == 0) break;
        divisors.push_back(g);
    }
    IntVec factors;
    Int prev = 1;
    for (const Int& d : divisors) {
        factors.push_back(d / prev);
        prev = d;
    }
    return factors;
}

// Exhaustive element tables for finite groups of small order.
std::vector<IntVec> enumerate_elements(const AbelianGroup& g) {
    REQUIRE(g.is_finite());
    std::vector<IntVec> out;
    IntVec cur(g.generator_count(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            cur[i] += 1;
            if (cur[i] < g.torsion()[i]) break;
            cur[i] = 0;
        }
        if (i == cur.size()) break;
    }
    return out;
}

Int element_order(const AbelianGroup& g, const IntVec& x) {
    Int o = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        Int d = g.torsion()[i];
        o = lcm(o, d / gcd(d, x[i]));
    }
    return o;
}

struct FiniteHomOracle {
    Int kernel_order = 0;
    Int kernel_exponent = 1;
    Int cokernel_order = 0;
    Int cokernel_exponent = 1;
};

FiniteHomOracle enumerate_hom(const Homomorphism& f) {
    FiniteHomOracle r;
    std::set<IntVec> image;
    for (const IntVec& x : enumerate_elements(f.domain())) {
        IntVec y = f.apply(x);
        image.insert(y);
        bool in_kernel = std::all_of(y.begin(), y.end(), [](const Int& v) { return v == 0; });
        if (in_kernel) {
            r.kernel_order += 1;
            r.kernel_exponent = lcm(r.kernel_exponent, element_order(f.domain(), x));
        }
    }
    r.cokernel_order = f.codomain().order() / Int(image.size());
    // Order of h + im(f): least k with k*h in the image.
    for (const IntVec& h : enumerate_elements(f.codomain())) {
        Int k = 1;
        for (;;) {
            IntVec kh(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) kh[i] = k * h[i];
            if (image.count(f.codomain().reduce(kh))) break;
            ++k;
        }
        r.cokernel_exponent = lcm(r.cokernel_exponent, k);
    }
    return r;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = dist(rng);
    return a;
}

void check_smith_contract(const IntMatrix& a) {
    SmithResult r = smith_normal_form(a);
    CHECK(r.s == r.u * a * r.v);
    CHECK(abs(r.u.determinant()) == 1);
    CHECK(abs(r.v.determinant()) == 1);
    CHECK(r.u * r.u_inv == IntMatrix::identity(a.rows()));
    CHECK(r.v * r.v_inv == IntMatrix::identity(a.cols()));
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
        CHECK(r.s(i, i) >= 0);
        if (i + 1 < std::min(a.rows(), a.cols()) && r.s(i + 1, i + 1) != 0) {
            CHECK(r.s(i, i) != 0);
            CHECK(r.s(i + 1, i + 1) % r.s(i, i) == 0);
        }
    }
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) CHECK(r.s(i, j) == 0);
}

AbelianGroup random_finite_group(std::mt19937_64& rng, Int max_order) {
    std::uniform_int_distribution<int> nf(1, 3), df(2, 12);
    IntVec factors;
    Int order = 1;
    int k = nf(rng);
    for (int i = 0; i < k; ++i) {
        Int d = df(rng);
        if (order * d > max_order) break;
        order *= d;
        factors.push_back(d);
    }
    return AbelianGroup(0, factors);
}

// Arbitrary well-defined map between finite groups: the entry sent to a
// codomain generator of order e from a domain generator of order d must be a
// multiple of e / gcd(d, e).
Homomorphism random_finite_hom(std::mt19937_64& rng, const AbelianGroup& dom,
                               const AbelianGroup& cod) {
    std::uniform_int_distribution<int> tf(0, 11);
    IntMatrix m(cod.generator_count(), dom.generator_count());
    for (std::size_t j = 0; j < dom.generator_count(); ++j) {
        Int d = dom.generator_order(j);
        for (std::size_t i = 0; i < cod.generator_count(); ++i) {
            Int e = cod.generator_order(i);
            Int step = e / gcd(d, e);
            m(i, j) = Int(tf(rng)) * step;
        }
    }
    return Homomorphism(dom, cod, m);
}

} // namespace

TEST_CASE("matrix basics") {
    IntMatrix a{{1, 2}, {3, 4}};
    CHECK(a.determinant() == -2);
    CHECK(a.transpose()(0, 1) == 3);
    IntMatrix i2 = IntMatrix::identity(2);
    CHECK(a * i2 == a);
    CHECK((a - a).is_zero());
    IntMatrix empty;
    CHECK(empty.determinant() == 1);

    IntMatrix p{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}};
    CHECK(p.determinant() == 30);
    IntMatrix q{{0, 1}, {1, 0}};
    CHECK(q.determinant() == -1);
}

TEST_CASE("bareiss determinant survives large intermediates") {
    // Entries chosen so that naive int64 accumulation of minors would blow up.
    std::mt19937_64 rng(11);
    IntMatrix a = random_matrix(rng, 8, 8, -999, 999);
    // Laplace-free cross-check: det(A)^2 = det(A A^T) for square A.
    Int d = a.determinant();
    Int d2 = (a * a.transpose()).determinant();
    CHECK(d * d == d2);
}

TEST_CASE("smith normal form on the pinned fixture") {
    IntMatrix a{{2, 4}, {6, 8}};
    SmithResult r = smith_normal_form(a);
    CHECK(r.rank == 2);
    CHECK(r.diag(0) == 2);
    CHECK(r.diag(1) == 4);
    check_smith_contract(a);

    // Determinantal-divisor oracle: gcd of entries is 2, d1*d2 = |det| = 8.
    IntVec oracle = invariant_factors_by_minors(a);
    REQUIRE(oracle.size() == 2);
    CHECK(oracle[0] == 2);
    CHECK(oracle[1] == 4);
}

TEST_CASE("smith normal form edge shapes") {
    SUBCASE("identity") {
        SmithResult r = smith_normal_form(IntMatrix::identity(3));
        CHECK(r.rank == 3);
        for (int i = 0; i < 3; ++i) CHECK(r.diag(i) == 1);
    }
    SUBCASE("zero 2x3") {
        SmithResult r = smith_normal_form(IntMatrix(2, 3));
        CHECK(r.rank == 0);
        CHECK(r.u == IntMatrix::identity(2));
        CHECK(r.v == IntMatrix::identity(3));
    }
    SUBCASE("empty") {
        SmithResult r = smith_normal_form(IntMatrix(0, 4));
        CHECK(r.rank == 0);
        CHECK(r.v == IntMatrix::identity(4));
    }
    SUBCASE("single column") {
        SmithResult r = smith_normal_form(IntMatrix{{6}, {10}, {15}});
        CHECK(r.rank == 1);
        CHECK(r.diag(0) == 1); // gcd(6,10,15)
        check_smith_contract(IntMatrix{{6}, {10}, {15}});
    }
}

TEST_CASE("smith normal form randomized contract with minor oracle") {
    std::mt19937_64 rng(20240817);
    for (int iter = 0; iter < 60; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        IntMatrix a = random_matrix(rng, dim(rng), dim(rng), -9, 9);
        check_smith_contract(a);
        SmithResult r = smith_normal_form(a);
        IntVec oracle = invariant_factors_by_minors(a);
        REQUIRE(oracle.size() == r.rank);
        for (std::size_t i = 0; i < r.rank; ++i) CHECK(oracle[i] == r.diag(i));
    }
}

TEST_CASE("group canonical form") {
    CHECK(AbelianGroup(0, {2, 3}) == AbelianGroup::cyclic(6));
    CHECK(AbelianGroup(0, {2, 4}).torsion() == IntVec{2, 4});
    CHECK(AbelianGroup(0, {4, 6}).torsion() == IntVec{2, 12});
    CHECK(AbelianGroup(1, {1, 1}) == AbelianGroup::free_group(1));
    CHECK(AbelianGroup(0, {0, 2}).rank() == 1);
    CHECK(AbelianGroup::zero().is_trivial());
    CHECK(AbelianGroup::free_group(2).str() == "Z^2");
    CHECK(AbelianGroup(1, {2, 6}).str() == "Z + Z/2 + Z/6");
    CHECK(AbelianGroup::zero().str() == "0");
    CHECK(AbelianGroup(0, {2, 3, 4}).torsion() == IntVec{2, 12});
    CHECK(AbelianGroup(0, {6, 4}).exponent() == 12);
    CHECK(AbelianGroup(0, {6, 4}).order() == 24);
}

TEST_CASE("well-definedness is enforced") {
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    AbelianGroup z = AbelianGroup::free_group(1);
    CHECK_THROWS(Homomorphism(z2, z, IntMatrix{{1}}));
    CHECK_NOTHROW(Homomorphism(z2, z, IntMatrix{{0}}));
    // Z/2 -> Z/4 must land in the 2-torsion.
    AbelianGroup z4 = AbelianGroup::cyclic(4);
    CHECK_THROWS(Homomorphism(z2, z4, IntMatrix{{1}}));
    CHECK_NOTHROW(Homomorphism(z2, z4, IntMatrix{{2}}));
    // Z -> anything is unconstrained.
    CHECK_NOTHROW(Homomorphism(z, z4, IntMatrix{{3}}));
}

TEST_CASE("kernel fixtures") {
    AbelianGroup z = AbelianGroup::free_group(1);
    AbelianGroup z2 = AbelianGroup::free_group(2);

    SUBCASE("zero map has full kernel") {
        KernelResult k = hom_kernel(Homomorphism::zero(z, z));
        CHECK(k.group == z);
        CHECK(abs(k.inclusion.matrix()(0, 0)) == 1);
    }
    SUBCASE("multiplication by n is injective") {
        for (int n : {1, 2, 7}) {
            KernelResult k = hom_kernel(Homomorphism(z, z, IntMatrix{{n}}));
            CHECK(k.group.is_trivial());
        }
    }
    SUBCASE("sum map Z^2 -> Z") {
        Homomorphism f(z2, z, IntMatrix{{1, 1}});
        KernelResult k = hom_kernel(f);
        CHECK(k.group == z);
        // Inclusion generated by (1,-1) up to sign.
        IntMatrix inc = k.inclusion.matrix();
        REQUIRE(inc.cols() == 1);
        bool plus = inc(0, 0) == 1 && inc(1, 0) == -1;
        bool minus = inc(0, 0) == -1 && inc(1, 0) == 1;
        CHECK((plus || minus));
        CHECK(compose(f, k.inclusion).is_zero());
    }
    SUBCASE("kernel inside torsion") {
        AbelianGroup z4 = AbelianGroup::cyclic(4);
        Homomorphism f(z4, z4, IntMatrix{{2}});
        KernelResult k = hom_kernel(f);
        CHECK(k.group == AbelianGroup::cyclic(2));
        CHECK(compose(f, k.inclusion).is_zero());
    }
}

TEST_CASE("cokernel fixtures") {
    AbelianGroup z = AbelianGroup::free_group(1);
    AbelianGroup z2 = AbelianGroup::free_group(2);

    SUBCASE("times three") {
        CokernelResult c = hom_cokernel(Homomorphism(z, z, IntMatrix{{3}}));
        CHECK(c.group == AbelianGroup::cyclic(3));
    }
    SUBCASE("diagonal embedding of Z in Z^2") {
        Homomorphism f(z, z2, IntMatrix{{1}, {1}});
        CokernelResult c = hom_cokernel(f);
        CHECK(c.group == z);
        // projection (a,b) -> +-(a-b)
        IntMatrix p = c.projection.matrix();
        REQUIRE(p.rows() == 1);
        bool plus = p(0, 0) == 1 && p(0, 1) == -1;
        bool minus = p(0, 0) == -1 && p(0, 1) == 1;
        CHECK((plus || minus));
        CHECK(compose(c.projection, f).is_zero());
    }
    SUBCASE("identity has trivial cokernel") {
        CokernelResult c = hom_cokernel(Homomorphism::identity(z2));
        CHECK(c.group.is_trivial());
    }
    SUBCASE("zero map surjects onto codomain") {
        CokernelResult c = hom_cokernel(Homomorphism::zero(z, z2));
        CHECK(c.group == z2);
    }
}

TEST_CASE("finite enumeration oracle agrees with kernel and cokernel") {
    std::mt19937_64 rng(7031);
    int checked = 0;
    while (checked < 40) {
        AbelianGroup dom = random_finite_group(rng, 200);
        AbelianGroup cod = random_finite_group(rng, 200);
        if (dom.order() > 200 || cod.order() > 200) continue;
        Homomorphism f = random_finite_hom(rng, dom, cod);
        FiniteHomOracle oracle = enumerate_hom(f);
        KernelResult k = hom_kernel(f);
        CokernelResult c = hom_cokernel(f);
        CHECK(k.group.order() == oracle.kernel_order);
        CHECK(k.group.exponent() == oracle.kernel_exponent);
        CHECK(c.group.order() == oracle.cokernel_order);
        CHECK(c.group.exponent() == oracle.cokernel_exponent);
        CHECK(compose(f, k.inclusion).is_zero());
        CHECK(compose(c.projection, f).is_zero());
        ++checked;
    }
}

TEST_CASE("rank-nullity for random homomorphisms with free parts") {
    std::mt19937_64 rng(515);
    for (int iter = 0; iter < 30; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(0, 3);
        AbelianGroup dom = AbelianGroup::free_group(dim(rng));
        AbelianGroup cod = AbelianGroup::free_group(dim(rng));
        IntMatrix m = random_matrix(rng, cod.generator_count(), dom.generator_count(), -5, 5);
        Homomorphism f(dom, cod, m);
        KernelResult k = hom_kernel(f);
        ImageResult im = hom_image(f);
        CHECK(dom.rank() == k.group.rank() + im.group.rank());
        CHECK(compose(f, k.inclusion).is_zero());
    }
}

TEST_CASE("direct sum") {
    AbelianGroup z = AbelianGroup::free_group(1);
    CHECK(direct_sum({z, z}) == AbelianGroup::free_group(2));
    CHECK(direct_sum({AbelianGroup::cyclic(2), AbelianGroup::cyclic(3)}) ==
          AbelianGroup::cyclic(6));
    CHECK(direct_sum({}) == AbelianGroup::zero());
    // commutative and associative at the level of canonical forms
    AbelianGroup a(1, {2}), b(0, {4, 8}), c(2, {3});
    CHECK(direct_sum({a, b}) == direct_sum({b, a}));
    CHECK(direct_sum({direct_sum({a, b}), c}) == direct_sum({a, direct_sum({b, c})}));
}

TEST_CASE("direct sum with maps round-trips") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        AbelianGroup a = random_finite_group(rng, 60);
        AbelianGroup b = random_finite_group(rng, 60);
        DirectSumResult d = direct_sum_with_maps(a, b);
        CHECK(d.group == direct_sum({a, b}));
        CHECK(compose(d.project_left, d.include_left) == Homomorphism::identity(a));
        CHECK(compose(d.project_right, d.include_right) == Homomorphism::identity(b));
        CHECK(compose(d.project_right, d.include_left).is_zero());
        CHECK(compose(d.project_left, d.include_right).is_zero());
    }
    // mixed free/torsion
    DirectSumResult d = direct_sum_with_maps(AbelianGroup(1, {2}), AbelianGroup(0, {3}));
    CHECK(d.group == AbelianGroup(1, {6}));
    CHECK(compose(d.project_left, d.include_left) == Homomorphism::identity(AbelianGroup(1, {2})));
}

TEST_CASE("extension problems") {
    AbelianGroup z = AbelianGroup::free_group(1);
    SUBCASE("free quotient splits") {
        auto r = solve_extension(z, z);
        REQUIRE(std::holds_alternative<AbelianGroup>(r));
        CHECK(std::get<AbelianGroup>(r) == AbelianGroup::free_group(2));
    }
    SUBCASE("trivial sub") {
        auto r = solve_extension(AbelianGroup::zero(), AbelianGroup::cyclic(4));
        REQUIRE(std::holds_alternative<AbelianGroup>(r));
        CHECK(std::get<AbelianGroup>(r) == AbelianGroup::cyclic(4));
    }
    SUBCASE("trivial quotient") {
        auto r = solve_extension(AbelianGroup::cyclic(9), AbelianGroup::zero());
        REQUIRE(std::holds_alternative<AbelianGroup>(r));
        CHECK(std::get<AbelianGroup>(r) == AbelianGroup::cyclic(9));
    }
    SUBCASE("coprime finite orders split") {
        auto r = solve_extension(AbelianGroup::cyclic(4), AbelianGroup::cyclic(9));
        REQUIRE(std::holds_alternative<AbelianGroup>(r));
        CHECK(std::get<AbelianGroup>(r) == AbelianGroup::cyclic(36));
    }
    SUBCASE("Z/2 by Z/2 is ambiguous") {
        auto r = solve_extension(AbelianGroup::cyclic(2), AbelianGroup::cyclic(2));
        REQUIRE(std::holds_alternative<AmbiguousExtension>(r));
        CHECK(std::get<AmbiguousExtension>(r).sub == AbelianGroup::cyclic(2));
    }
    SUBCASE("free sub under torsion quotient is ambiguous") {
        // 0 -> Z -> X -> Z/2 -> 0 admits Z + Z/2 and Z.
        auto r = solve_extension(z, AbelianGroup::cyclic(2));
        CHECK(std::holds_alternative<AmbiguousExtension>(r));
    }
}

TEST_CASE("lattice membership") {
    IntMatrix gens{{2, 0}, {0, 3}};
    CHECK(lattice_contains(gens, {4, 3}));
    CHECK(!lattice_contains(gens, {1, 0}));
    CHECK(lattice_contains(gens, {0, 0}));
    IntMatrix line{{1}, {1}};
    CHECK(lattice_contains(line, {5, 5}));
    CHECK(!lattice_contains(line, {5, 4}));
}
