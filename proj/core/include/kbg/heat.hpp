#pragma once

#include "kbg/simplicial.hpp"

#include <stdexcept>
#include <vector>

namespace kbg {

// The supertrace moved away from the kernel-count integer by more than the
// tolerance; in finite dimensions that can only mean a numerical-rank
// failure, so it is reported instead of averaged away.
struct NonConstantSupertrace : std::runtime_error {
    explicit NonConstantSupertrace(const std::string& what) : std::runtime_error(what) {}
};

struct McKeanSingerResult {
    long index = 0;
    std::vector<double> supertraces; // one per requested t, in input order
};

// Supertrace tr exp(-t D*D) - tr exp(-t D D*) via Hermitian eigensolves.
// The nonzero spectra of the two Laplacians agree with multiplicity, so each
// supertrace equals dim ker D - dim ker D* for every t; the kernel counts
// use a relative 1e-8 eigenvalue cutoff and every supertrace must sit within
// 1e-8 of that integer.
McKeanSingerResult mckean_singer_index(const HeatModel& model,
                                       const std::vector<double>& t_values);

} // namespace kbg
