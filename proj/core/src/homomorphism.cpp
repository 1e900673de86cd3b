#include "kbg/homomorphism.hpp"

#include "kbg/smith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>

namespace kbg {

namespace {

using boost::multiprecision::gcd;

// Canonical presentation of Z^ambient / columns(rel): the quotient group
// together with the base change in both directions. to_canonical maps cover
// coordinates to canonical generators; columns of from_canonical are cover
// representatives of the canonical generators.
struct QuotientPresentation {
    AbelianGroup group;
    IntMatrix to_canonical;   // gens x ambient
    IntMatrix from_canonical; // ambient x gens
};

QuotientPresentation quotient_of_lattice(std::size_t ambient, const IntMatrix& rel) {
    if (rel.rows() != ambient) throw std::invalid_argument("relation matrix row mismatch");
    SmithResult snf = smith_normal_form(rel);
    // In u-coordinates the lattice is spanned by diag entries; coordinate i
    // survives as a torsion generator when s_i >= 2 and as a free generator
    // when s_i = 0 (i beyond the rank).
    std::vector<std::size_t> free_idx, tor_idx;
    IntVec factors;
    for (std::size_t i = snf.rank; i < ambient; ++i) free_idx.push_back(i);
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.diag(i) > 1) {
            tor_idx.push_back(i);
            factors.push_back(snf.diag(i));
        }
    std::vector<std::size_t> keep = free_idx;
    keep.insert(keep.end(), tor_idx.begin(), tor_idx.end());
    QuotientPresentation q;
    q.group = AbelianGroup(free_idx.size(), factors);
    q.to_canonical = snf.u.select_rows(keep);
    q.from_canonical = snf.u_inv.select_columns(keep);
    return q;
}

// Coordinates of the columns of xs with respect to the lattice basis encoded
// by snf(p): requires every column to lie in the column lattice of p.
IntMatrix coords_in_lattice_basis(const SmithResult& snf, const IntMatrix& xs) {
    IntMatrix y = snf.u * xs;
    IntMatrix c(snf.rank, xs.cols());
    for (std::size_t j = 0; j < xs.cols(); ++j) {
        for (std::size_t i = 0; i < snf.rank; ++i) {
            if (y(i, j) % snf.diag(i) != 0)
                throw std::logic_error("vector not in lattice");
            c(i, j) = y(i, j) / snf.diag(i);
        }
        for (std::size_t i = snf.rank; i < y.rows(); ++i)
            if (y(i, j) != 0) throw std::logic_error("vector not in lattice");
    }
    return c;
}

// Canonical form of (lattice of p) / (lattice of q) inside Z^ambient, with
// cover representatives of the resulting generators. Requires q's lattice to
// be contained in p's.
struct SubquotientResult {
    AbelianGroup group;
    IntMatrix representatives; // ambient x gens
};

SubquotientResult subquotient(std::size_t ambient, const IntMatrix& p, const IntMatrix& q) {
    SmithResult snf = smith_normal_form(p);
    // Basis of p's lattice: b_i = s_i * (column i of u_inv), i < rank.
    IntMatrix coords = coords_in_lattice_basis(snf, q);
    QuotientPresentation pres = quotient_of_lattice(snf.rank, coords);
    IntMatrix basis(ambient, snf.rank);
    for (std::size_t i = 0; i < snf.rank; ++i)
        for (std::size_t a = 0; a < ambient; ++a)
            basis(a, i) = snf.u_inv(a, i) * snf.diag(i);
    return {pres.group, basis * pres.from_canonical};
}

} // namespace

Homomorphism::Homomorphism(AbelianGroup domain, AbelianGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.generator_count() || matrix_.cols() != domain_.generator_count())
        throw std::invalid_argument("homomorphism matrix shape mismatch");
    // A torsion generator of order d must map to an element killed by d:
    // d * entry = 0 exactly in free coordinates, modulo the invariant factor
    // in torsion coordinates.
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
        Int d = domain_.generator_order(j);
        if (d == 0) continue;
        for (std::size_t i = 0; i < matrix_.rows(); ++i) {
            Int e = codomain_.generator_order(i);
            if (e == 0) {
                if (matrix_(i, j) != 0)
                    throw std::invalid_argument("map does not respect torsion relations");
            } else if ((d * matrix_(i, j)) % e != 0) {
                throw std::invalid_argument("map does not respect torsion relations");
            }
        }
    }
    // Canonical representative: reduce torsion rows.
    for (std::size_t i = 0; i < matrix_.rows(); ++i) {
        Int e = codomain_.generator_order(i);
        if (e == 0) continue;
        for (std::size_t j = 0; j < matrix_.cols(); ++j) {
            Int& x = matrix_(i, j);
            x %= e;
            if (x < 0) x += e;
        }
    }
}

Homomorphism Homomorphism::zero(const AbelianGroup& domain, const AbelianGroup& codomain) {
    return Homomorphism(domain, codomain,
                        IntMatrix(codomain.generator_count(), domain.generator_count()));
}

Homomorphism Homomorphism::identity(const AbelianGroup& g) {
    return Homomorphism(g, g, IntMatrix::identity(g.generator_count()));
}

bool Homomorphism::is_zero() const {
    return matrix_.is_zero();
}

IntVec Homomorphism::apply(const IntVec& x) const {
    return codomain_.reduce(matrix_.apply(x));
}

bool Homomorphism::operator==(const Homomorphism& o) const {
    // Constructor already reduced both matrices mod the codomain relations.
    return domain_ == o.domain_ && codomain_ == o.codomain_ && matrix_ == o.matrix_;
}

std::string Homomorphism::str() const {
    std::ostringstream os;
    os << domain_.str() << " -> " << codomain_.str() << " " << matrix_.str();
    return os.str();
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
    if (!(f.codomain() == g.domain()))
        throw std::invalid_argument("composition domain mismatch");
    return Homomorphism(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

bool lattice_contains(const IntMatrix& gens, const IntVec& x) {
    if (gens.rows() != x.size()) throw std::invalid_argument("lattice dimension mismatch");
    SmithResult snf = smith_normal_form(gens);
    IntVec y = snf.u.apply(x);
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (y[i] % snf.diag(i) != 0) return false;
    for (std::size_t i = snf.rank; i < y.size(); ++i)
        if (y[i] != 0) return false;
    return true;
}

IntMatrix kernel_lattice(const Homomorphism& f) {
    const std::size_t g = f.domain().generator_count();
    // x is in the kernel iff f(x) lies in the codomain's relation lattice,
    // i.e. (x, y) solves [M | R] (x, -y) = 0 for some y.
    IntMatrix stacked = f.matrix().hcat(f.codomain().relation_matrix());
    SmithResult snf = smith_normal_form(stacked);
    std::vector<std::size_t> zero_cols;
    for (std::size_t j = snf.rank; j < stacked.cols(); ++j) zero_cols.push_back(j);
    IntMatrix basis = snf.v.select_columns(zero_cols);
    std::vector<std::size_t> first(g);
    for (std::size_t i = 0; i < g; ++i) first[i] = i;
    IntMatrix projected = basis.select_rows(first);
    // Domain relations are kernel elements by well-definedness; keep them as
    // explicit generators so containments are manifest.
    return projected.hcat(f.domain().relation_matrix());
}

IntMatrix image_lattice(const Homomorphism& f) {
    return f.matrix().hcat(f.codomain().relation_matrix());
}

KernelResult hom_kernel(const Homomorphism& f) {
    const std::size_t g = f.domain().generator_count();
    SubquotientResult sq = subquotient(g, kernel_lattice(f), f.domain().relation_matrix());
    return {sq.group, Homomorphism(sq.group, f.domain(), sq.representatives)};
}

CokernelResult hom_cokernel(const Homomorphism& f) {
    const std::size_t h = f.codomain().generator_count();
    QuotientPresentation pres = quotient_of_lattice(h, image_lattice(f));
    return {pres.group, Homomorphism(f.codomain(), pres.group, pres.to_canonical)};
}

ImageResult hom_image(const Homomorphism& f) {
    const std::size_t h = f.codomain().generator_count();
    SubquotientResult sq = subquotient(h, image_lattice(f), f.codomain().relation_matrix());
    return {sq.group, Homomorphism(sq.group, f.codomain(), sq.representatives)};
}

AbelianGroup direct_sum(const std::vector<AbelianGroup>& parts) {
    std::size_t rank = 0;
    IntVec factors;
    for (const AbelianGroup& g : parts) {
        rank += g.rank();
        factors.insert(factors.end(), g.torsion().begin(), g.torsion().end());
    }
    return AbelianGroup(rank, factors);
}

DirectSumResult direct_sum_with_maps(const AbelianGroup& a, const AbelianGroup& b) {
    const std::size_t ga = a.generator_count(), gb = b.generator_count();
    IntMatrix rel(ga + gb, a.torsion().size() + b.torsion().size());
    for (std::size_t j = 0; j < a.torsion().size(); ++j)
        rel(a.rank() + j, j) = a.torsion()[j];
    for (std::size_t j = 0; j < b.torsion().size(); ++j)
        rel(ga + b.rank() + j, a.torsion().size() + j) = b.torsion()[j];
    QuotientPresentation pres = quotient_of_lattice(ga + gb, rel);

    std::vector<std::size_t> left(ga), right(gb);
    for (std::size_t i = 0; i < ga; ++i) left[i] = i;
    for (std::size_t i = 0; i < gb; ++i) right[i] = ga + i;

    return {pres.group,
            Homomorphism(a, pres.group, pres.to_canonical.select_columns(left)),
            Homomorphism(b, pres.group, pres.to_canonical.select_columns(right)),
            Homomorphism(pres.group, a, pres.from_canonical.select_rows(left)),
            Homomorphism(pres.group, b, pres.from_canonical.select_rows(right))};
}

ExtensionResult solve_extension(const AbelianGroup& sub, const AbelianGroup& quot) {
    if (sub.is_trivial()) return quot;
    if (quot.is_trivial()) return sub;
    // A free quotient splits the sequence.
    if (quot.is_free()) return direct_sum({sub, quot});
    // Finite groups of coprime order admit only the split extension.
    if (sub.is_finite() && quot.is_finite() && gcd(sub.order(), quot.order()) == 1)
        return direct_sum({sub, quot});
    return AmbiguousExtension{sub, quot,
                              "extension of " + quot.str() + " by " + sub.str() +
                                  " is not determined by the two groups"};
}

} // namespace kbg
