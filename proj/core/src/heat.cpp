#include "kbg/heat.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace kbg {

namespace {

constexpr double kKernelCutoff = 1e-8;
constexpr double kSupertraceTolerance = 1e-8;

struct Spectrum {
    Eigen::VectorXd eigenvalues;
    long kernel_dim = 0;
};

Spectrum laplacian_spectrum(const Eigen::MatrixXcd& laplacian, double cutoff_scale) {
    Spectrum s;
    if (laplacian.rows() == 0) {
        s.eigenvalues.resize(0);
        return s;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(laplacian,
                                                           Eigen::EigenvaluesOnly);
    s.eigenvalues = solver.eigenvalues();
    double cutoff = kKernelCutoff * cutoff_scale;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        if (s.eigenvalues(i) <= cutoff) ++s.kernel_dim;
    return s;
}

double heat_trace(const Eigen::VectorXd& eigenvalues, double t) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        sum += std::exp(-t * std::max(eigenvalues(i), 0.0));
    return sum;
}

} // namespace

McKeanSingerResult mckean_singer_index(const HeatModel& model,
                                       const std::vector<double>& t_values) {
    if (t_values.empty()) throw std::invalid_argument("need at least one t value");
    for (double t : t_values)
        if (!(t > 0.0)) throw std::invalid_argument("t values must be positive");

    Eigen::MatrixXcd even = model.d.adjoint() * model.d; // on 0- and 2-cochains
    Eigen::MatrixXcd odd = model.d * model.d.adjoint();  // on 1-cochains

    // Shared cutoff scale: the two nonzero spectra coincide, so one relative
    // threshold must serve both or the kernel counts could disagree.
    double scale = 0.0;
    if (even.rows() > 0) scale = std::max(scale, even.cwiseAbs().maxCoeff());
    if (odd.rows() > 0) scale = std::max(scale, odd.cwiseAbs().maxCoeff());
    if (scale == 0.0) scale = 1.0; // zero operator: everything is kernel

    Spectrum s_even = laplacian_spectrum(even, scale);
    Spectrum s_odd = laplacian_spectrum(odd, scale);

    McKeanSingerResult result;
    result.index = s_even.kernel_dim - s_odd.kernel_dim;
    for (double t : t_values) {
        double st = heat_trace(s_even.eigenvalues, t) - heat_trace(s_odd.eigenvalues, t);
        if (std::abs(st - static_cast<double>(result.index)) > kSupertraceTolerance)
            throw NonConstantSupertrace(
                "supertrace " + std::to_string(st) + " at t = " + std::to_string(t) +
                " differs from the kernel count " + std::to_string(result.index) +
                " by more than 1e-8");
        result.supertraces.push_back(st);
    }
    return result;
}

} // namespace kbg
