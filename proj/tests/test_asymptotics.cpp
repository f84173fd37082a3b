#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "qcawalk/asymptotics.hpp"

using namespace qcawalk;
using namespace std::complex_literals;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;
const double rt2 = std::sqrt(2.0);
const QcaParams patel_params(0.5i, 0.5, 0.5i, -0.5);
const QubitState symmetric_qubit(1.0 / rt2, 1.0 / rt2);

} // namespace

TEST_CASE("limit_density", "[asymptotics]") {
    CHECK_THAT(limit_density(0.0), WithinAbs(1.0 / (2.0 * pi), 1e-15));
    CHECK_THAT(limit_density(1.0), WithinAbs(4.0 / (3.0 * rt2 * pi), 1e-15));
    CHECK(limit_density(2.0) == 0.0);
    CHECK(limit_density(-rt2) == 0.0);
    CHECK(limit_density(0.7) == limit_density(-0.7));
    CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 3.0, 1e-12) == Catch::Approx(9.0));
}

TEST_CASE("limit_cdf", "[asymptotics]") {
    CHECK_THAT(limit_cdf(0.0), WithinAbs(0.5, 1e-12));
    CHECK(limit_cdf(rt2) == Catch::Approx(1.0).margin(1e-12));
    CHECK(limit_cdf(2.0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(limit_cdf(-rt2) == 0.0);
    CHECK(limit_cdf(-5.0) == 0.0);

    double prev = 0.0;
    for (int i = -150; i <= 150; ++i) {
        const double x = i / 100.0;
        const double c = limit_cdf(x);
        INFO("x = " << x);
        CHECK_THAT(c, WithinAbs(testing::closed_form_limit_cdf(x), 1e-10));
        CHECK_THAT(c + limit_cdf(-x), WithinAbs(1.0, 1e-10));
        CHECK(c >= prev - 1e-14);
        prev = c;
    }
}

TEST_CASE("kolmogorov_distance", "[asymptotics]") {
    // A fine discretisation of the limit law itself.
    RescaledSample fine;
    fine.n = 1;
    const int cells = 50000;
    for (int i = 0; i < cells; ++i) {
        const double x0 = -rt2 + 2 * rt2 * i / cells, x1 = -rt2 + 2 * rt2 * (i + 1) / cells;
        fine.points.emplace_back(0.5 * (x0 + x1), testing::closed_form_limit_cdf(x1) - testing::closed_form_limit_cdf(x0));
    }
    CHECK(kolmogorov_distance(fine) < 0.01);

    // A point mass at 0 sits half a unit above and below the limit CDF.
    RescaledSample atom;
    atom.n = 1;
    atom.points = {{0.0, 1.0}};
    CHECK_THAT(kolmogorov_distance(atom), WithinAbs(0.5, 1e-10));

    // Mass far outside the support: distance 1.
    RescaledSample outside;
    outside.n = 1;
    outside.points = {{3.0, 1.0}};
    CHECK_THAT(kolmogorov_distance(outside), WithinAbs(1.0, 1e-12));
}

TEST_CASE("rescaled QCA sample approaches the limit law", "[asymptotics]") {
    const double k100 = kolmogorov_distance(rescaled_qca_sample(patel_params, symmetric_qubit, 100));
    const double k200 = kolmogorov_distance(rescaled_qca_sample(patel_params, symmetric_qubit, 200));
    const double k500 = kolmogorov_distance(rescaled_qca_sample(patel_params, symmetric_qubit, 500));
    INFO("K = " << k100 << ", " << k200 << ", " << k500);
    CHECK(k500 <= 0.08);
    CHECK(k200 <= k100 + 0.01);
    CHECK(k500 <= k200 + 0.01);
}

TEST_CASE("symmetric qubit gives a symmetric distribution", "[asymptotics]") {
    for (int n : {1, 2, 10, 75}) {
        const auto d = qca_distribution(0, Branch::Plus, symmetric_qubit, n, patel_params);
        CHECK(symmetry_defect(d, 0.5) <= 1e-12);
        const auto s = rescale(d, n);
        CHECK_THAT(s.total_mass(), WithinAbs(1.0, 1e-12));
        CHECK_THAT(s.mean(), WithinAbs(1.0 / (2.0 * n), 1e-10));
    }

    const Distribution lopsided({{0, 0.75}, {1, 0.25}});
    CHECK_THAT(symmetry_defect(lopsided, 0.5), WithinAbs(0.5, 1e-15));
    CHECK(symmetry_defect(Distribution({{-1, 0.5}, {1, 0.5}}), 0.0) == 0.0);

    CHECK_THROWS_AS(rescale(lopsided, 0), std::invalid_argument);
}
