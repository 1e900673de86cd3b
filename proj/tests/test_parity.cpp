#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kbg/sphere_parity.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

using namespace kbg;

namespace {

constexpr double kSphereArea3 = 4.0 * std::numbers::pi;          // S^2
constexpr double kSphereArea5 = 8.0 * std::numbers::pi * std::numbers::pi / 3.0; // S^4

// Random polynomial in q variables with total degree <= degree.
ParityField::Sample random_polynomial(std::mt19937& rng, int q, int degree) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, q - 1);
    std::uniform_int_distribution<int> total(0, degree);
    struct Term {
        double c;
        std::vector<int> powers;
    };
    auto terms = std::make_shared<std::vector<Term>>();
    for (int t = 0; t < 10; ++t) {
        Term term{coeff(rng), std::vector<int>(static_cast<std::size_t>(q), 0)};
        int d = total(rng);
        for (int k = 0; k < d; ++k) ++term.powers[static_cast<std::size_t>(pick(rng))];
        terms->push_back(std::move(term));
    }
    return [terms](const std::vector<double>& x) {
        double sum = 0.0;
        for (const auto& term : *terms) {
            double v = term.c;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (int p = 0; p < term.powers[i]; ++p) v *= x[i];
            sum += v;
        }
        return sum;
    };
}

} // namespace

TEST_CASE("field construction is validated") {
    auto one = [](const std::vector<double>&) { return 1.0; };
    CHECK_THROWS_AS(ParityField(2, 2, 0, one, 0), std::invalid_argument);
    CHECK_THROWS_AS(ParityField(1, 2, 0, one, 0), std::invalid_argument);
    CHECK_THROWS_AS(ParityField(3, 3, 0, one, 0), std::invalid_argument);
    CHECK_THROWS_AS(ParityField(3, 0, 0, one, 0), std::invalid_argument);
    CHECK_THROWS_AS(ParityField(3, 2, -1, one, 0), std::invalid_argument);
    CHECK_THROWS_AS(ParityField(3, 2, 0, one, -1), std::invalid_argument);
    CHECK_THROWS_AS(ParityField(3, 2, 0, nullptr, 0), std::invalid_argument);
    CHECK_NOTHROW(ParityField(3, 2, 0, one, 0));
}

TEST_CASE("construction projects onto the parity sector") {
    // x0^2 + x1 splits into a symmetric and an antisymmetric part; even j
    // keeps the antisymmetric one, odd j the symmetric one.
    auto mixed = [](const std::vector<double>& x) { return x[0] * x[0] + x[1]; };
    ParityField even_j(3, 2, 2, mixed, 2);
    ParityField odd_j(3, 2, 1, mixed, 2);
    std::vector<double> x{0.3, -0.7, 0.2};
    std::vector<double> minus{-0.3, 0.7, -0.2};
    CHECK(even_j(x) == doctest::Approx(-0.7).epsilon(1e-14));
    CHECK(odd_j(x) == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(even_j(minus) == -even_j(x));
    CHECK(odd_j(minus) == odd_j(x));
}

TEST_CASE("antisymmetric integrals cancel to the last bit") {
    // One coordinate, already odd under the antipode.
    ParityField coordinate(
        3, 4, 0, [](const std::vector<double>& x) { return x[0]; }, 1);
    ParityIntegral res = antipodal_parity_integral(coordinate, 8);
    CHECK(res.residual == 0.0);
    CHECK(res.abs_integral > 1.0);
    CHECK(res.residual <= 1e-10 * res.abs_integral);
    CHECK_FALSE(res.under_resolved);
}

TEST_CASE("random polynomial fields stay antisymmetric after projection") {
    std::mt19937 rng(5150);
    for (int q : {3, 5}) {
        for (int trial = 0; trial < 10; ++trial) {
            ParityField field(q, 4, 2 * (trial % 3), random_polynomial(rng, q, 6), 6);
            ParityIntegral res = antipodal_parity_integral(field, 12);
            CHECK(res.residual == 0.0);
            if (res.abs_integral > 1e-12) CHECK(res.residual <= 1e-10 * res.abs_integral);
            CHECK_FALSE(res.under_resolved);
        }
    }
}

TEST_CASE("the symmetric sector does not cancel") {
    // Constant field, odd j: the projection keeps it, and the integral is
    // the sphere area. This is the control that the cancellation above is
    // parity at work, not a quadrature artifact.
    auto one = [](const std::vector<double>&) { return 1.0; };
    ParityField s2(3, 2, 1, one, 0);
    ParityIntegral res2 = antipodal_parity_integral(s2, 8);
    CHECK(res2.value == doctest::Approx(kSphereArea3).epsilon(1e-10));
    CHECK(res2.residual > 1e-2);

    ParityField s4(5, 2, 3, one, 0);
    ParityIntegral res4 = antipodal_parity_integral(s4, 16);
    CHECK(res4.value == doctest::Approx(kSphereArea5).epsilon(1e-10));
    CHECK(res4.residual > 1e-2);
}

TEST_CASE("symmetric moments match closed forms") {
    for (int q : {3, 5}) {
        double area = q == 3 ? kSphereArea3 : kSphereArea5;
        for (int axis = 0; axis < q; ++axis) {
            ParityField moment(
                q, 2, 1,
                [axis](const std::vector<double>& x) {
                    return x[static_cast<std::size_t>(axis)] * x[static_cast<std::size_t>(axis)];
                },
                2);
            ParityIntegral res = antipodal_parity_integral(moment, 16);
            CHECK(res.value == doctest::Approx(area / q).epsilon(1e-10));
        }
    }
}

TEST_CASE("coarse rules are flagged but still evaluated") {
    auto cubeish = [](const std::vector<double>& x) {
        double v = x[0];
        for (int k = 0; k < 9; ++k) v *= x[1] > 0.5 ? x[1] : 1.0;
        return v;
    };
    ParityField field(3, 2, 0, cubeish, 10);
    ParityIntegral coarse = antipodal_parity_integral(field, 8);
    CHECK(coarse.under_resolved);
    CHECK(coarse.residual == 0.0);
    ParityIntegral fine = antipodal_parity_integral(field, 13);
    CHECK_FALSE(fine.under_resolved);

    CHECK_THROWS_AS(antipodal_parity_integral(field, 0), std::invalid_argument);
}
