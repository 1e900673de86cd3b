#pragma once

#include "kbg/int_matrix.hpp"

namespace kbg {

// s = u * a * v with u, v unimodular; diagonal of s is nonnegative and each
// entry divides the next. u_inv, v_inv are maintained alongside so callers
// can change basis in either direction without inverting anything.
struct SmithResult {
    IntMatrix s;
    IntMatrix u, u_inv;
    IntMatrix v, v_inv;
    std::size_t rank = 0;

    Int diag(std::size_t i) const { return s(i, i); }
};

SmithResult smith_normal_form(const IntMatrix& a);

} // namespace kbg
