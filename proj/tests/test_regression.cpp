#include <doctest.h>

#include <cmath>
#include <random>

#include "ntl/error.hpp"
#include "ntl/regression.hpp"
#include "oracle.hpp"

using namespace ntl;
using V = std::vector<double>;

TEST_CASE("fit_ols on an exact line") {
    const auto f = fit_ols(V{0, 1, 2}, V{1, 3, 5});
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.r2 == 1.0);
    CHECK(f.n == 3);
}

TEST_CASE("fit_ols on a constant response") {
    const auto f = fit_ols(V{1, 2, 3}, V{4, 4, 4});
    CHECK(f.slope == 0.0);
    CHECK(f.intercept == 4.0);
    CHECK(f.r2 == 1.0);
}

TEST_CASE("fit_ols matches the raw normal-equations oracle") {
    const V xs{1, 2, 3, 4, 5}, ys{2.1, 3.9, 6.2, 8.1, 9.8};
    const auto want = oracle::normal_equations(xs, ys);
    // Frozen from the oracle: slope 1.96, intercept 0.14.
    CHECK(static_cast<double>(want.slope) == doctest::Approx(1.96).epsilon(1e-14));
    CHECK(static_cast<double>(want.intercept) == doctest::Approx(0.14).epsilon(1e-12));
    const auto f = fit_ols(xs, ys);
    CHECK(f.slope == doctest::Approx(1.96).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(0.14).epsilon(1e-12));
    CHECK(f.residuals.size() == 5);
    CHECK(f.r2 > 0.99);
    CHECK(f.r2 <= 1.0);
}

TEST_CASE("fit_ols errors") {
    CHECK_THROWS_AS(fit_ols(V{1, 2}, V{1}), DomainError);
    CHECK_THROWS_AS(fit_ols(V{1}, V{1}), DomainError);
    CHECK_THROWS_AS(fit_ols(V{3, 3, 3}, V{1, 2, 3}), DomainError);
    const double l6 = std::log(6.0); // mean of three copies does not round back to l6
    CHECK_THROWS_AS(fit_ols(V{l6, l6, l6}, V{1, 2, 3}), DomainError);
}

TEST_CASE("mse") {
    CHECK(mse(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
    CHECK(mse(V{1, 2, 3}, V{1, 2, 4}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // 67.72^2 by hand.
    CHECK(mse(V{295.09}, V{227.37}) == doctest::Approx(4585.9984).epsilon(1e-12));
    CHECK_THROWS_AS(mse(V{1}, V{1, 2}), DomainError);
    CHECK_THROWS_AS(mse(V{}, V{}), DomainError);
}

TEST_CASE("property: shift invariance and scale equivariance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-50, 50), shift(-1000, 1000), scale(0.1, 20);
    for (int trial = 0; trial < 50; ++trial) {
        V xs(200), ys(200);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = u(rng);
            ys[i] = 3 * xs[i] + u(rng);
        }
        const auto base = fit_ols(xs, ys);

        const double c = shift(rng);
        V ys_shift(ys);
        for (auto& y : ys_shift)
            y += c;
        const auto shifted = fit_ols(xs, ys_shift);
        CHECK(oracle::rel_err(shifted.slope, base.slope) <= 1e-12);
        CHECK(oracle::rel_err(shifted.intercept, base.intercept + c) <= 1e-12);

        const double k = scale(rng);
        V xs_scaled(xs);
        for (auto& x : xs_scaled)
            x *= k;
        const auto scaled = fit_ols(xs_scaled, ys);
        CHECK(oracle::rel_err(scaled.slope, base.slope / k) <= 1e-12);
        CHECK(oracle::rel_err(scaled.intercept, base.intercept) <= 1e-12);
    }
}

TEST_CASE("property: fitted coefficients minimize MSE") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 10);
    std::normal_distribution<double> noise(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        V xs(50), ys(50);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = u(rng);
            ys[i] = -2 + 0.7 * xs[i] + noise(rng);
        }
        const auto f = fit_ols(xs, ys);
        auto mse_at = [&](double slope, double intercept) {
            V pred(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i)
                pred[i] = intercept + slope * xs[i];
            return mse(ys, pred);
        };
        const double best = mse_at(f.slope, f.intercept);
        for (double ds : {-1e-3, 0.0, 1e-3})
            for (double di : {-1e-3, 0.0, 1e-3})
                CHECK(mse_at(f.slope + ds, f.intercept + di) >= best);
    }
}

TEST_CASE("property: mse is nonnegative and zero only on equality") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        V a(10), p(10);
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = p[i] = u(rng);
        CHECK(mse(a, p) == 0.0);
        p[trial % 10] += 0.5;
        CHECK(mse(a, p) > 0.0);
    }
}
