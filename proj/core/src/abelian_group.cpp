#include "kbg/abelian_group.hpp"

#include "kbg/smith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>

namespace kbg {

AbelianGroup::AbelianGroup(std::size_t rank, const IntVec& factors) : rank_(rank) {
    using boost::multiprecision::abs;
    IntVec finite;
    for (const Int& d : factors) {
        Int a = abs(d);
        if (a == 0)
            ++rank_;
        else if (a > 1)
            finite.push_back(a);
    }
    if (finite.empty()) return;
    // Merge into a divisor chain via the diagonal relation matrix.
    IntMatrix diag(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) diag(i, i) = finite[i];
    SmithResult snf = smith_normal_form(diag);
    for (std::size_t i = 0; i < finite.size(); ++i)
        if (snf.diag(i) > 1) torsion_.push_back(snf.diag(i));
}

Int AbelianGroup::generator_order(std::size_t i) const {
    if (i >= generator_count()) throw std::out_of_range("generator index");
    return i < rank_ ? Int(0) : torsion_[i - rank_];
}

Int AbelianGroup::order() const {
    if (rank_ > 0) return 0;
    Int n = 1;
    for (const Int& d : torsion_) n *= d;
    return n;
}

Int AbelianGroup::exponent() const {
    return torsion_.empty() ? Int(1) : torsion_.back();
}

IntMatrix AbelianGroup::relation_matrix() const {
    IntMatrix r(generator_count(), torsion_.size());
    for (std::size_t j = 0; j < torsion_.size(); ++j) r(rank_ + j, j) = torsion_[j];
    return r;
}

IntVec AbelianGroup::reduce(const IntVec& coords) const {
    if (coords.size() != generator_count()) throw std::invalid_argument("coordinate size mismatch");
    IntVec out = coords;
    for (std::size_t j = 0; j < torsion_.size(); ++j) {
        Int& x = out[rank_ + j];
        x %= torsion_[j];
        if (x < 0) x += torsion_[j];
    }
    return out;
}

std::string AbelianGroup::str() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank_ == 1) {
        os << "Z";
        first = false;
    } else if (rank_ > 1) {
        os << "Z^" << rank_;
        first = false;
    }
    for (const Int& d : torsion_) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    return os.str();
}

} // namespace kbg
