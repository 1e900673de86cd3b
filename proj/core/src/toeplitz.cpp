#include "kbg/toeplitz.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace kbg {

namespace {

constexpr double kInvertibilityFloor = 1e-6;
constexpr double kRankThreshold = 1e-8;
constexpr double kUnstableWindow = 100.0;

void check_invertible(const ToeplitzSymbol& sym, int grid_size) {
    double min_abs = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_size; ++j) {
        double theta = 2.0 * std::numbers::pi * j / grid_size;
        min_abs = std::min(min_abs, std::abs(sym(theta)));
    }
    if (!(min_abs > kInvertibilityFloor))
        throw NearZeroSymbol("symbol modulus drops to " + std::to_string(min_abs) +
                             " on the circle; need > 1e-6");
}

// Section of the Toeplitz matrix with the given row and column counts;
// entry (i, j) is the coefficient of degree i - j.
Eigen::MatrixXcd section(const ToeplitzSymbol& sym, int rows, int cols) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
    for (const auto& [degree, coeff] : sym.coefficients())
        for (int j = 0; j < cols; ++j) {
            int i = j + degree;
            if (i >= 0 && i < rows) m(i, j) = coeff;
        }
    return m;
}

// Columns minus numerical rank; the threshold window around the cutoff must
// be empty or the count is meaningless.
int kernel_dimension(const Eigen::MatrixXcd& m, const char* label) {
    if (m.rows() == 0 || m.cols() == 0) return static_cast<int>(m.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    double cutoff = kRankThreshold * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        double s = sv(i);
        if (s > cutoff / kUnstableWindow && s < cutoff * kUnstableWindow)
            throw UnstableRank(std::string(label) + ": singular value " +
                               std::to_string(s) + " sits within a factor of 100 of the "
                               "rank cutoff " + std::to_string(cutoff));
        if (s > cutoff) ++rank;
    }
    return static_cast<int>(m.cols()) - rank;
}

} // namespace

ToeplitzSymbol::ToeplitzSymbol(std::map<int, std::complex<double>> coefficients) {
    for (auto& [degree, coeff] : coefficients)
        if (coeff != std::complex<double>(0.0, 0.0)) {
            coeffs_[degree] = coeff;
            bandwidth_ = std::max(bandwidth_, std::abs(degree));
        }
}

ToeplitzSymbol ToeplitzSymbol::power(int k) {
    return ToeplitzSymbol({{k, {1.0, 0.0}}});
}

std::complex<double> ToeplitzSymbol::operator()(double theta) const {
    std::complex<double> value = 0.0;
    for (const auto& [degree, coeff] : coeffs_)
        value += coeff * std::polar(1.0, degree * theta);
    return value;
}

int winding_number(const ToeplitzSymbol& sym, int grid_size) {
    if (grid_size < 4) throw std::invalid_argument("winding grid needs at least 4 points");
    check_invertible(sym, grid_size);
    double total = 0.0;
    std::complex<double> prev = sym(0.0);
    for (int j = 1; j <= grid_size; ++j) {
        double theta = 2.0 * std::numbers::pi * j / grid_size;
        std::complex<double> next = sym(theta);
        double step = std::arg(next / prev);
        if (std::abs(step) > std::numbers::pi / 2.0)
            throw AliasedGrid("argument step " + std::to_string(step) +
                              " exceeds pi/2; refine the grid");
        total += step;
        prev = next;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

int toeplitz_index(const ToeplitzSymbol& sym, int truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation must be positive");
    int bw = sym.bandwidth();
    if (truncation < 8 * bw)
        throw std::invalid_argument("truncation " + std::to_string(truncation) +
                                    " is below 8 x bandwidth = " + std::to_string(8 * bw));
    check_invertible(sym, 1024);

    const int t = truncation;
    // Tall section: the operator restricted to the first t+1 basis vectors,
    // captured exactly since the image degree cannot exceed t + bandwidth.
    int dim_ker = kernel_dimension(section(sym, t + bw + 1, t + 1), "kernel section");
    // Wide section, adjointed: the same capture for the adjoint symbol.
    int dim_coker =
        kernel_dimension(section(sym, t + 1, t + bw + 1).adjoint(), "cokernel section");
    return dim_ker - dim_coker;
}

} // namespace kbg
