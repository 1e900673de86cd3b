#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>

namespace kbg {

// Trigonometric polynomial symbol: finitely many Laurent coefficients,
// evaluated on the unit circle.
class ToeplitzSymbol {
public:
    ToeplitzSymbol() = default;
    explicit ToeplitzSymbol(std::map<int, std::complex<double>> coefficients);

    // z^k as a symbol.
    static ToeplitzSymbol power(int k);

    std::complex<double> operator()(double theta) const;

    // Largest |degree| carrying a nonzero coefficient; 0 for the zero symbol.
    int bandwidth() const { return bandwidth_; }

    const std::map<int, std::complex<double>>& coefficients() const { return coeffs_; }

private:
    std::map<int, std::complex<double>> coeffs_;
    int bandwidth_ = 0;
};

// The symbol came within 1e-6 of zero on the evaluation grid, so its winding
// number and index are not trustworthy.
struct NearZeroSymbol : std::runtime_error {
    explicit NearZeroSymbol(const std::string& what) : std::runtime_error(what) {}
};

// A grid step turned the argument by more than pi/2; the discrete argument
// principle needs a finer grid.
struct AliasedGrid : std::runtime_error {
    explicit AliasedGrid(const std::string& what) : std::runtime_error(what) {}
};

// A singular value landed within a factor of 100 of the rank threshold;
// kernel dimensions read off such spectra are reported, never guessed.
struct UnstableRank : std::runtime_error {
    explicit UnstableRank(const std::string& what) : std::runtime_error(what) {}
};

// Total argument increment around the circle divided by 2 pi. Per-step
// increments must stay below pi/2 or the grid is rejected as aliased.
int winding_number(const ToeplitzSymbol& sym, int grid_size = 1024);

// Fredholm index of the truncated Toeplitz operator: the kernel dimension is
// read from the tall rectangular section (rows 0..truncation+bandwidth,
// columns 0..truncation), which captures the operator on the truncated
// domain exactly because the symbol is banded; the cokernel dimension is the
// kernel of the adjoint, read from the wide section the same way. Ranks come
// from singular values with relative threshold 1e-8. Always equals
// -winding_number(sym) once truncation >= 8 x bandwidth; the two routes are
// computed independently so they can be compared.
int toeplitz_index(const ToeplitzSymbol& sym, int truncation = 64);

} // namespace kbg
