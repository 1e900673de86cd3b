#pragma once

#include "kbg/descriptor.hpp"

namespace kbg {

// Index of the boundary-respecting operator whose two one-sided symbols wind
// k_prime and k_doubleprime times. The two Toeplitz indices are computed
// numerically, pushed into K0 of the boundary ideal along the stratumwise
// inclusion, and read off in the solved K-groups of d.
//
// Preconditions: d describes a partitioned hypersurface (else
// InvalidDescriptorError); truncation obeys the Toeplitz section contract.
long partitioned_k_index(int k_prime, int k_doubleprime, const GroupoidDescriptor& d,
                         int truncation = 64);

} // namespace kbg
