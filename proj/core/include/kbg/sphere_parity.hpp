#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace kbg {

// Sample of a Taylor-coefficient field F_j on the sphere S^{q-1}, carrying
// the parity F_j(-x) = -(-1)^j F_j(x). The stored field is antisymmetrized
// (or symmetrized, for odd j) at construction, so the invariant holds
// exactly whatever the raw callable does.
class ParityField {
public:
    using Sample = std::function<double(const std::vector<double>&)>;

    // q: sphere lives in R^q, odd and >= 3. n: even Taylor-grid parameter
    // >= 2. j: Taylor index fixing the parity sign. degree: polynomial
    // degree of the raw field, used to flag under-resolved quadrature.
    ParityField(int q, int n, int j, Sample raw, int degree);

    int q() const { return q_; }
    int n() const { return n_; }
    int j() const { return j_; }
    int degree() const { return degree_; }

    // The field after parity projection, on unit vectors in R^q.
    double operator()(const std::vector<double>& x) const;

private:
    int q_, n_, j_, degree_;
    Sample raw_;
};

struct ParityIntegral {
    double value = 0.0;        // signed quadrature estimate of the integral
    double residual = 0.0;     // |value|
    double abs_integral = 0.0; // quadrature estimate of the integral of |F|
    bool under_resolved = false;
};

// Integrates the field over S^{q-1} with a product rule (Gauss-Legendre in
// the polar angles, uniform in azimuth) whose node set is closed under
// x -> -x with matching weights: for fields odd under the antipode the node
// contributions cancel pairwise, so the residual is rounding-level no matter
// how coarse the rule. under_resolved flags orders too low for the declared
// polynomial degree; the estimate is still returned.
ParityIntegral antipodal_parity_integral(const ParityField& f, int quadrature_order);

} // namespace kbg
