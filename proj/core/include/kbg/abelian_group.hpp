#pragma once

#include "kbg/int_matrix.hpp"

#include <string>
#include <vector>

namespace kbg {

// Finitely generated abelian group in canonical form: free rank plus a list
// of invariant factors d1 | d2 | ... | dk, each >= 2. Generators are indexed
// free part first, then one generator per invariant factor in chain order.
class AbelianGroup {
public:
    AbelianGroup() = default;

    // Canonicalizes an arbitrary factor list: 0 entries count toward the
    // rank, 1 entries are dropped, the rest are merged into a divisor chain.
    AbelianGroup(std::size_t rank, const IntVec& factors);

    static AbelianGroup zero() { return AbelianGroup(); }
    static AbelianGroup free_group(std::size_t rank) { return AbelianGroup(rank, {}); }
    static AbelianGroup cyclic(const Int& d) { return AbelianGroup(0, {d}); }

    std::size_t rank() const { return rank_; }
    const IntVec& torsion() const { return torsion_; }

    std::size_t generator_count() const { return rank_ + torsion_.size(); }
    bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
    bool is_free() const { return torsion_.empty(); }
    bool is_finite() const { return rank_ == 0; }

    // 0 marks an infinite-order generator.
    Int generator_order(std::size_t i) const;
    // Order of the group; 0 when infinite.
    Int order() const;
    // Largest invariant factor; 1 for trivial or free groups' torsion part.
    Int exponent() const;

    // Relation matrix of the presentation Z^g -> G: one column d_j * e_{rank+j}
    // per invariant factor.
    IntMatrix relation_matrix() const;

    // Coordinates reduced into canonical range: torsion entries into [0, d).
    IntVec reduce(const IntVec& coords) const;

    bool operator==(const AbelianGroup& o) const = default;

    // "0", "Z", "Z^2", "Z/4", "Z^2 + Z/2 + Z/6"
    std::string str() const;

private:
    std::size_t rank_ = 0;
    IntVec torsion_;
};

} // namespace kbg
