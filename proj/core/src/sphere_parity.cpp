#include "kbg/sphere_parity.hpp"

#include <cmath>
#include <numbers>

namespace kbg {

namespace {

struct GaussLegendre {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Newton iteration on the Legendre recurrence; standard cos initial guesses
// converge in a handful of steps for any order used here.
GaussLegendre gauss_legendre(int m) {
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace

ParityField::ParityField(int q, int n, int j, Sample raw, int degree)
    : q_(q), n_(n), j_(j), degree_(degree), raw_(std::move(raw)) {
    if (q < 3 || q % 2 == 0)
        throw std::invalid_argument("the sphere dimension parameter q must be odd and >= 3");
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("the grid parameter n must be even and >= 2");
    if (j < 0) throw std::invalid_argument("the Taylor index j must be nonnegative");
    if (degree < 0) throw std::invalid_argument("the declared degree must be nonnegative");
    if (!raw_) throw std::invalid_argument("the field needs a callable sample");
}

double ParityField::operator()(const std::vector<double>& x) const {
    std::vector<double> minus(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) minus[i] = -x[i];
    double sign = j_ % 2 == 0 ? -1.0 : 1.0; // -(-1)^j
    return 0.5 * (raw_(x) + sign * raw_(minus));
}

ParityIntegral antipodal_parity_integral(const ParityField& f, int quadrature_order) {
    if (quadrature_order < 1)
        throw std::invalid_argument("quadrature order must be positive");

    const int q = f.q();
    const int polar_angles = q - 2;
    const int m = quadrature_order;
    const int azimuth = 2 * m;

    GaussLegendre gl = gauss_legendre(m);

    // Precompute the polar node angles and their weight factors, measure
    // sin^{q-1-k} included.
    std::vector<std::vector<double>> phi(static_cast<std::size_t>(polar_angles));
    std::vector<std::vector<double>> phi_w(static_cast<std::size_t>(polar_angles));
    for (int k = 0; k < polar_angles; ++k) {
        int sin_power = q - 1 - (k + 1);
        for (int i = 0; i < m; ++i) {
            double angle = std::numbers::pi * (gl.nodes[static_cast<std::size_t>(i)] + 1.0) / 2.0;
            double w = gl.weights[static_cast<std::size_t>(i)] * std::numbers::pi / 2.0 *
                       std::pow(std::sin(angle), sin_power);
            phi[static_cast<std::size_t>(k)].push_back(angle);
            phi_w[static_cast<std::size_t>(k)].push_back(w);
        }
    }

    ParityIntegral out;
    out.under_resolved = quadrature_order < f.degree() + q;

    // Walk the product grid over polar angles and half the azimuth circle;
    // each node is paired with its exact negation at equal weight, so the
    // set is antipodally closed by construction.
    std::vector<int> idx(static_cast<std::size_t>(polar_angles), 0);
    std::vector<double> x(static_cast<std::size_t>(q));
    std::vector<double> neg(static_cast<std::size_t>(q));
    const double azimuth_w = 2.0 * std::numbers::pi / azimuth;
    while (true) {
        double w_polar = 1.0;
        double radial = 1.0;
        for (int k = 0; k < polar_angles; ++k) {
            double angle = phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            w_polar *= phi_w[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            x[static_cast<std::size_t>(k)] = radial * std::cos(angle);
            radial *= std::sin(angle);
        }
        for (int a = 0; a < azimuth / 2; ++a) {
            double psi = 2.0 * std::numbers::pi * a / azimuth;
            x[static_cast<std::size_t>(q - 2)] = radial * std::cos(psi);
            x[static_cast<std::size_t>(q - 1)] = radial * std::sin(psi);
            for (int c = 0; c < q; ++c)
                neg[static_cast<std::size_t>(c)] = -x[static_cast<std::size_t>(c)];
            double w = w_polar * azimuth_w;
            double v_plus = f(x);
            double v_minus = f(neg);
            out.value += w * (v_plus + v_minus);
            out.abs_integral += w * (std::abs(v_plus) + std::abs(v_minus));
        }
        int k = 0;
        for (; k < polar_angles; ++k) {
            if (++idx[static_cast<std::size_t>(k)] < m) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
        if (k == polar_angles) break;
    }

    out.residual = std::abs(out.value);
    return out;
}

} // namespace kbg
