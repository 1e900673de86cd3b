#pragma once

#include "kbg/abelian_group.hpp"
#include "kbg/int_matrix.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kbg {

// Homomorphism between finitely generated abelian groups, stored as an
// integer matrix over the canonical generators (codomain rows x domain
// columns). Construction rejects matrices that do not respect the torsion
// relations of the domain.
class Homomorphism {
public:
    Homomorphism(AbelianGroup domain, AbelianGroup codomain, IntMatrix matrix);

    static Homomorphism zero(const AbelianGroup& domain, const AbelianGroup& codomain);
    static Homomorphism identity(const AbelianGroup& g);

    const AbelianGroup& domain() const { return domain_; }
    const AbelianGroup& codomain() const { return codomain_; }
    const IntMatrix& matrix() const { return matrix_; }

    bool is_zero() const;
    IntVec apply(const IntVec& x) const;

    // Equality as maps: matrices agree modulo the codomain relations.
    bool operator==(const Homomorphism& o) const;

    std::string str() const;

private:
    AbelianGroup domain_, codomain_;
    IntMatrix matrix_;
};

// g after f.
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

struct KernelResult {
    AbelianGroup group;
    Homomorphism inclusion; // group -> domain(f), injective, f o inclusion = 0
};

struct CokernelResult {
    AbelianGroup group;
    Homomorphism projection; // codomain(f) -> group, surjective, projection o f = 0
};

struct ImageResult {
    AbelianGroup group;
    Homomorphism inclusion; // group -> codomain(f)
};

KernelResult hom_kernel(const Homomorphism& f);
CokernelResult hom_cokernel(const Homomorphism& f);
ImageResult hom_image(const Homomorphism& f);

AbelianGroup direct_sum(const std::vector<AbelianGroup>& parts);

// A + B with the canonical-form base change tracked on both sides.
struct DirectSumResult {
    AbelianGroup group;
    Homomorphism include_left, include_right;
    Homomorphism project_left, project_right;
};

DirectSumResult direct_sum_with_maps(const AbelianGroup& a, const AbelianGroup& b);

// Middle term of 0 -> sub -> X -> quot -> 0 when the extension problem has a
// unique solution; otherwise the obstruction is reported, never guessed.
struct AmbiguousExtension {
    AbelianGroup sub, quot;
    std::string reason;
};

using ExtensionResult = std::variant<AbelianGroup, AmbiguousExtension>;

ExtensionResult solve_extension(const AbelianGroup& sub, const AbelianGroup& quot);

// Lattice membership: does the column lattice of gens contain x?
bool lattice_contains(const IntMatrix& gens, const IntVec& x);

// Generating set for { x : f(x) = 0 in codomain } inside the domain's
// generator cover Z^g (always contains the domain relations).
IntMatrix kernel_lattice(const Homomorphism& f);

// Generating set for the image of f together with the codomain relations,
// inside the codomain cover.
IntMatrix image_lattice(const Homomorphism& f);

} // namespace kbg
