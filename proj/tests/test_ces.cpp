#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "entrans/ces.hpp"

using namespace entrans::ces;

namespace {

// Independent finite-difference slope of the Y-isoquant at F: solves for R
// at F +/- h and central-differences, bypassing the closed-form MRTS.
double isoquant_slope_fd(const CesParams& p, double y, double f, double h) {
    const double r_plus = invert_renewable(p, y, f + h);
    const double r_minus = invert_renewable(p, y, f - h);
    return (r_plus - r_minus) / (2.0 * h);
}

std::mt19937_64 rng(20240817ULL);

CesParams random_params() {
    std::uniform_real_distribution<double> alpha_dist(0.05, 0.95);
    std::uniform_real_distribution<double> rho_dist(-0.9, 3.0);
    double rho = rho_dist(rng);
    if (std::abs(rho) < 1e-6) rho = 0.1;  // stay clear of the limit branch
    return {alpha_dist(rng), rho};
}

}  // namespace

TEST_CASE("ces_output closed-form values") {
    CHECK(ces_output({0.5, 1.0}, {1.0, 1.0}) == Catch::Approx(1.0).epsilon(1e-14));
    // Cobb-Douglas limit branch: F^alpha * R^(1-alpha)
    CHECK(ces_output({0.5, 1e-9}, {4.0, 1.0}) == Catch::Approx(2.0).epsilon(1e-12));
    // Calibrated point reproduces unit output (direct substitution)
    const auto pt = calibrate_initial(0.85, -1.0 / 3.0, 1.0);
    CHECK(pt.fossil == Catch::Approx(1.22679).epsilon(1e-5));
    CHECK(pt.renewable == Catch::Approx(0.21649).epsilon(1e-4));
    CHECK(ces_output({0.85, -1.0 / 3.0}, pt) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ces_output rejects nonpositive quantities") {
    CHECK_THROWS_AS(ces_output({0.5, 1.0}, {0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(ces_output({0.5, 1.0}, {1.0, -2.0}), std::domain_error);
    CHECK_THROWS_AS(ces_output({1.5, 1.0}, {1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(ces_output({0.5, -1.0}, {1.0, 1.0}), std::domain_error);
}

TEST_CASE("ces_output homogeneity of degree 1") {
    std::uniform_real_distribution<double> q(0.1, 10.0);
    std::uniform_real_distribution<double> scale(0.1, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params();
        const FactorPoint pt{q(rng), q(rng)};
        const double k = scale(rng);
        const double lhs = ces_output(p, {k * pt.fossil, k * pt.renewable});
        const double rhs = k * ces_output(p, pt);
        REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("invert_renewable examples and round-trip") {
    CHECK(invert_renewable({0.5, 1.0}, 1.0, 1.0) == Catch::Approx(1.0).epsilon(1e-14));
    const auto pt = calibrate_initial(0.85, -1.0 / 3.0, 1.0);
    CHECK(invert_renewable({0.85, -1.0 / 3.0}, 1.0, pt.fossil) ==
          Catch::Approx(pt.renewable).epsilon(1e-10));

    std::uniform_real_distribution<double> q(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params();
        const double f = q(rng);
        const double r = q(rng);
        // The isoquant through a positive point is always feasible at that
        // point, so inversion must recover r exactly.
        const double y = ces_output(p, {f, r});
        REQUIRE(invert_renewable(p, y, f) == Catch::Approx(r).epsilon(1e-9));
    }
}

TEST_CASE("invert_renewable infeasible isoquant") {
    // rho < 0: alpha * F^(1/3) >= Y^(1/3) leaves no residual for R.
    const CesParams p{0.85, -1.0 / 3.0};
    const double f_bad = std::pow(1.0 / 0.85, 3.0) * 1.01;  // alpha*F^(1/3) > 1
    CHECK_THROWS_AS(invert_renewable(p, 1.0, f_bad), InfeasibleIsoquant);
    try {
        invert_renewable(p, 1.0, f_bad);
    } catch (const InfeasibleIsoquant& e) {
        CHECK(e.fossil() == Catch::Approx(f_bad));
        CHECK(e.target_output() == Catch::Approx(1.0));
    }
    // rho > 0: too little fossil caps attainable output below Y.
    CHECK_THROWS_AS(invert_renewable({0.95, 1.0}, 1.0, 0.5), InfeasibleIsoquant);
}

TEST_CASE("mrts values and finite-difference oracle") {
    CHECK(mrts({0.5, 0.7}, {2.0, 2.0}) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(mrts({0.85, -1.0 / 3.0}, {3.0, 3.0}) ==
          Catch::Approx(17.0 / 3.0).epsilon(1e-14));

    const CesParams p{0.85, -1.0 / 3.0};
    const auto pt = calibrate_initial(0.85, -1.0 / 3.0, 1.0);
    const double slope = isoquant_slope_fd(p, 1.0, pt.fossil, 1e-5);
    CHECK(mrts(p, pt) == Catch::Approx(-slope).epsilon(1e-4));
}

TEST_CASE("relative_price equals mrts pointwise") {
    CHECK(relative_price({0.5, 2.0}, {3.0, 3.0}) == Catch::Approx(1.0).epsilon(1e-14));
    // F/R = 17/3 at alpha = 0.85, rho = -1/3: (17/3)^(1/3)
    const double fr = 17.0 / 3.0;
    CHECK(relative_price({0.85, -1.0 / 3.0}, {fr, 1.0}) ==
          Catch::Approx(std::cbrt(fr)).epsilon(1e-12));

    std::uniform_real_distribution<double> q(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params();
        const FactorPoint pt{q(rng), q(rng)};
        REQUIRE(relative_price(p, pt) == Catch::Approx(mrts(p, pt)).epsilon(1e-12));
    }
}

TEST_CASE("quantity_ratio_from_prices inverts relative_price") {
    CHECK(quantity_ratio_from_prices({0.5, 1.0}, {2.0, 2.0}) ==
          Catch::Approx(1.0).epsilon(1e-14));
    CHECK(quantity_ratio_from_prices({0.85, -1.0 / 3.0},
                                     {std::cbrt(17.0 / 3.0), 1.0}) ==
          Catch::Approx(17.0 / 3.0).epsilon(1e-12));

    std::uniform_real_distribution<double> q(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params();
        const FactorPoint pt{q(rng), q(rng)};
        const double price_ratio = relative_price(p, pt);
        const double ratio = quantity_ratio_from_prices(p, {price_ratio, 1.0});
        REQUIRE(ratio == Catch::Approx(pt.fossil / pt.renewable).epsilon(1e-12));
    }
}

TEST_CASE("price_elasticity closed form and finite-difference oracle") {
    CHECK(price_elasticity({0.5, 0.0}) == Catch::Approx(-1.0));
    CHECK(price_elasticity({0.5, 1.0}) == Catch::Approx(-0.5));
    CHECK_THROWS_AS(price_elasticity({0.5, -1.0}), std::domain_error);

    // Central-difference log-derivative of the quantity ratio in the price
    // ratio, evaluated at P_F/P_R = 1.
    for (int i = 0; i < 200; ++i) {
        const auto p = random_params();
        const double h = 1e-6;
        const double up = quantity_ratio_from_prices(p, {1.0 + h, 1.0});
        const double dn = quantity_ratio_from_prices(p, {1.0 - h, 1.0});
        const double eps_fd = (std::log(up) - std::log(dn)) /
                              (std::log(1.0 + h) - std::log(1.0 - h));
        REQUIRE(price_elasticity(p) == Catch::Approx(eps_fd).margin(1e-6));
    }
}

TEST_CASE("calibrate_initial share and output constraints") {
    const auto sym = calibrate_initial(0.5, 1.0, 1.0);
    CHECK(sym.fossil == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(sym.renewable == Catch::Approx(1.0).epsilon(1e-14));

    // Homogeneity: doubling y0 doubles both coordinates.
    const auto one = calibrate_initial(0.85, -1.0 / 3.0, 1.0);
    const auto two = calibrate_initial(0.85, -1.0 / 3.0, 2.0);
    CHECK(two.fossil == Catch::Approx(2.0 * one.fossil).epsilon(1e-14));
    CHECK(two.renewable == Catch::Approx(2.0 * one.renewable).epsilon(1e-14));

    std::uniform_real_distribution<double> y_dist(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params();
        const double y0 = y_dist(rng);
        const auto pt = calibrate_initial(p.alpha, p.rho, y0);
        REQUIRE(pt.fossil / (pt.fossil + pt.renewable) ==
                Catch::Approx(p.alpha).epsilon(1e-10));
        REQUIRE(ces_output(p, pt) == Catch::Approx(y0).epsilon(1e-10));
    }
    // Cobb-Douglas limit branch
    const auto cd = calibrate_initial(0.7, 0.0, 2.0);
    CHECK(cd.fossil / (cd.fossil + cd.renewable) == Catch::Approx(0.7).epsilon(1e-12));
    CHECK(ces_output({0.7, 0.0}, cd) == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("marginal renewable requirement grows as fossil is phased out") {
    // Along a fixed isoquant with F decreasing on a uniform grid, the extra
    // R needed per unit of F removed rises monotonically.
    const CesParams p{0.85, -1.0 / 3.0};
    const auto start = calibrate_initial(0.85, -1.0 / 3.0, 1.0);
    const int n = 40;
    const double f_lo = 0.3 * start.fossil;
    double prev_r = start.renewable;
    double prev_f = start.fossil;
    double prev_marginal = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double f = start.fossil + (f_lo - start.fossil) * i / n;
        const double r = invert_renewable(p, 1.0, f);
        const double marginal = (r - prev_r) / (prev_f - f);
        REQUIRE(marginal > prev_marginal);
        prev_marginal = marginal;
        prev_r = r;
        prev_f = f;
    }
}
