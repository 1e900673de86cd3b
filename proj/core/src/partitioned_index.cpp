#include "kbg/partitioned_index.hpp"

#include "kbg/k_engine.hpp"
#include "kbg/toeplitz.hpp"

namespace kbg {

long partitioned_k_index(int k_prime, int k_doubleprime, const GroupoidDescriptor& d,
                         int truncation) {
    if (d.case_tag != CaseTag::PartitionedHypersurface)
        throw InvalidDescriptorError(
            "partitioned_k_index needs a partitioned-hypersurface descriptor, got \"" + d.name +
            "\"");

    long n_prime = toeplitz_index(ToeplitzSymbol::power(k_prime), truncation);
    long n_doubleprime = toeplitz_index(ToeplitzSymbol::power(k_doubleprime), truncation);

    auto outcome = compute_k(d);
    const auto* res = std::get_if<KResult>(&outcome);
    if (!res)
        throw UnsupportedCaseError("the K-groups of \"" + d.name +
                                   "\" did not resolve, so there is nothing to pair against");

    Homomorphism inc = fredholm_inclusion(d, *res);
    IntVec sides{Int(n_prime), Int(n_doubleprime)};
    IntVec pushed = inc.apply(sides);
    if (pushed.size() != 1)
        throw UnsupportedCaseError("expected the pushed class to land in a rank-one K0");
    return static_cast<long>(pushed[0]);
}

} // namespace kbg
