#include <doctest.h>

#include <cmath>
#include <random>

#include "ntl/deblooming.hpp"
#include "ntl/synth.hpp"
#include "oracle.hpp"
#include "scenes.hpp"

using namespace ntl;

namespace {

const PseudoPixelPolicy kRingPolicy{0.0, 10.0, 3};

} // namespace

TEST_CASE("detect_pseudo_light") {
    CHECK_FALSE(detect_pseudo_light(DNGrid(5, 5)).any());
    CHECK_FALSE(detect_pseudo_light(DNGrid(5, 5, 40.0)).any());

    DNGrid g(3, 3);
    g.set(1, 1, 4);
    const auto m = detect_pseudo_light(g);
    CHECK(m.at(1, 1));
    CHECK(m.count() == 1);

    SUBCASE("bright cells are sources, not pseudo") {
        g.set(1, 1, 11);
        CHECK_FALSE(detect_pseudo_light(g).any());
    }
    SUBCASE("border cells count only existing neighbors") {
        DNGrid corner(3, 3);
        corner.set(0, 0, 2); // 3 neighbors, all background
        CHECK_FALSE(detect_pseudo_light(corner).at(0, 0));
        CHECK(detect_pseudo_light(corner, {0, 10, 3}).at(0, 0));
    }
    SUBCASE("nodata neighbors are not background") {
        DNGrid h(3, 3, -9999.0);
        h.set(1, 1, 4);
        CHECK_FALSE(detect_pseudo_light(h).any());
    }
    SUBCASE("invalid policy") {
        CHECK_THROWS_AS(detect_pseudo_light(g, {10, 10, 5}), ConfigError);
        CHECK_THROWS_AS(detect_pseudo_light(g, {0, 10, 9}), ConfigError);
        CHECK_THROWS_AS(detect_pseudo_light(g, {0, 10, 0}), ConfigError);
    }
}

TEST_CASE("property: pseudo pixels are always lit") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0, 15);
    std::bernoulli_distribution dark(0.6);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> cells(20 * 20);
        for (auto& c : cells)
            c = dark(rng) ? 0.0 : u(rng);
        const DNGrid g(20, 20, cells);
        const PseudoPixelPolicy policy{0.5, 10, 1 + trial % 8};
        const auto m = detect_pseudo_light(g, policy);
        for (std::size_t i = 0; i < 20; ++i)
            for (std::size_t j = 0; j < 20; ++j)
                if (m.at(i, j))
                    CHECK(g.at(i, j) > policy.background_max);
    }
}

TEST_CASE("bloom_feature hand values") {
    DNGrid g(7, 7);
    CHECK(bloom_feature(g, {3, 3}, 2) == 0.0);
    g.set(3, 4, 8);
    CHECK(bloom_feature(g, {3, 3}, 1) == 8.0);
    DNGrid diag(7, 7);
    diag.set(4, 4, 8);
    CHECK(bloom_feature(diag, {3, 3}, 1) == doctest::Approx(4.0).epsilon(1e-15));
    DNGrid far(7, 7);
    far.set(3, 5, 8);
    CHECK(bloom_feature(far, {3, 3}, 2) == 2.0);
    CHECK(bloom_feature(far, {3, 3}, 1) == 0.0);
    CHECK_THROWS_AS(bloom_feature(g, {7, 0}, 1), DomainError);
}

TEST_CASE("bloom_feature matches the brute-force oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0, 63);
    std::bernoulli_distribution hole(0.1);
    std::vector<double> cells(25 * 25);
    for (auto& c : cells)
        c = hole(rng) ? -9999.0 : u(rng);
    const DNGrid g(25, 25, cells);
    for (int r = 1; r <= 5; ++r)
        for (std::size_t i = 0; i < 25; i += 3)
            for (std::size_t j = 0; j < 25; j += 4)
                CHECK(bloom_feature(g, {i, j}, r) ==
                      doctest::Approx(static_cast<double>(oracle::brute_bloom_feature(g, i, j, r))).epsilon(1e-13));
}

TEST_CASE("property: bloom_feature is translation invariant") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(1, 50);
    DNGrid a(20, 20), b(20, 20);
    for (std::size_t i = 6; i < 10; ++i)
        for (std::size_t j = 6; j < 10; ++j) {
            const double v = u(rng);
            a.set(i, j, v);
            b.set(i + 3, j + 2, v);
        }
    for (std::size_t i = 3; i < 13; ++i)
        for (std::size_t j = 3; j < 13; ++j)
            CHECK(bloom_feature(a, {i, j}, 3) == bloom_feature(b, {i + 3, j + 2}, 3));
}

TEST_CASE("fit_bloom_model recovers the generative coefficients") {
    const DNGrid truth = gen_scene(scenes::five_sources());
    const DNGrid observed = forward_bloom(truth, 0.5, 0.2, 3);
    const auto pseudo = detect_pseudo_light(observed, kRingPolicy);
    REQUIRE(pseudo.count() == 5 * 24);
    const auto m = fit_bloom_model(observed, truth, pseudo, 3);
    CHECK(std::fabs(m.a - 0.5) <= 1e-9);
    CHECK(std::fabs(m.b - 0.2) <= 1e-9);
    CHECK(m.radius == 3);
}

TEST_CASE("fit_bloom_model with noisy pseudo observations") {
    const DNGrid truth = gen_scene(scenes::five_sources());
    const DNGrid observed = forward_bloom(truth, 0.5, 0.2, 3);
    const auto pseudo = detect_pseudo_light(observed, kRingPolicy);
    double sa = 0, sb = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto noisy = add_gaussian_noise(observed, 0.05, seed, &pseudo);
        const auto m = fit_bloom_model(noisy, truth, pseudo, 3);
        sa += m.a;
        sb += m.b;
    }
    CHECK(oracle::rel_err(sa / 20, 0.5) <= 0.05);
    CHECK(oracle::rel_err(sb / 20, 0.2) <= 0.05);
}

TEST_CASE("single-grid fit is exact on symmetric footprint corners") {
    // With the default policy only the 4 footprint corners are pseudo; their
    // observed-grid features are affine in the source intensity, so the fit
    // reproduces every pseudo observation.
    const DNGrid observed = forward_bloom(gen_scene(scenes::five_sources()), 0.5, 0.2, 3);
    const auto pseudo = detect_pseudo_light(observed);
    REQUIRE(pseudo.count() == 20);
    const auto detail = fit_bloom_model_detail(observed, observed, pseudo, 3);
    for (double e : detail.fit.residuals)
        CHECK(std::fabs(e) <= 1e-9);
    const auto corrected = apply_debloom(observed, detail.model);
    for (std::size_t i = 0; i < 50; ++i)
        for (std::size_t j = 0; j < 50; ++j)
            if (pseudo.at(i, j))
                CHECK(corrected.at(i, j) <= 1e-6);
}

TEST_CASE("fit_bloom_model errors") {
    DNGrid g(9, 9);
    g.set(4, 4, 30);
    g.set(4, 5, 3);
    const auto pseudo = detect_pseudo_light(g);
    REQUIRE(pseudo.count() == 1);
    CHECK_THROWS_AS(fit_bloom_model(g, pseudo, 2), DomainError);

    DNGrid flat(9, 9);
    flat.set(1, 1, 2);
    flat.set(7, 7, 2);
    CHECK_THROWS_AS(fit_bloom_model(flat, detect_pseudo_light(flat), 1), DomainError); // both features 0
    CHECK_THROWS_AS(fit_bloom_model(g, PixelMask(8, 9), 2), DomainError);
}

TEST_CASE("apply_debloom") {
    const DNGrid truth = gen_scene(scenes::five_sources());
    const DNGrid observed = forward_bloom(truth, 0.5, 0.2, 3);

    SUBCASE("null model is the identity") {
        CHECK(apply_debloom(observed, {0, 0, 3}) == observed);
    }
    SUBCASE("all-zero grid stays zero") {
        const DNGrid zero(10, 10);
        CHECK(apply_debloom(zero, {0.7, 1.5, 2}) == zero);
    }
    SUBCASE("true model restores pseudo pixels and sources") {
        const auto corrected = apply_debloom(observed, truth, {0.5, 0.2, 3});
        const auto pseudo = detect_pseudo_light(observed, kRingPolicy);
        for (std::size_t i = 0; i < 50; ++i) {
            for (std::size_t j = 0; j < 50; ++j) {
                if (pseudo.at(i, j))
                    CHECK(corrected.at(i, j) <= 1e-6);
                if (truth.at(i, j) > 0)
                    CHECK(oracle::rel_err(corrected.at(i, j), truth.at(i, j)) <= 0.02);
                CHECK(std::fabs(corrected.at(i, j) - truth.at(i, j)) <= 1e-6);
            }
        }
    }
    SUBCASE("nodata is preserved") {
        DNGrid h = observed;
        h.set(0, 0, -9999);
        CHECK(apply_debloom(h, {0.5, 0.2, 3}).is_nodata(0, 0));
    }
}

TEST_CASE("property: nonnegative models never brighten and never go negative") {
    std::mt19937_64 rng(30);
    std::uniform_real_distribution<double> u(0, 63), coef(0, 1);
    std::bernoulli_distribution dark(0.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> cells(15 * 15);
        for (auto& c : cells)
            c = dark(rng) ? 0.0 : u(rng);
        const DNGrid g(15, 15, cells);
        const auto out = apply_debloom(g, {coef(rng), coef(rng), 1 + trial % 4});
        for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK(out.cells()[k] <= g.cells()[k]);
            CHECK(out.cells()[k] >= 0.0);
        }
    }
}

TEST_CASE("oracle equivalence on pseudo pixels") {
    const DNGrid truth = gen_scene(scenes::five_sources());
    const DNGrid observed = forward_bloom(truth, 0.5, 0.2, 3);
    const auto pseudo = detect_pseudo_light(observed, kRingPolicy);
    const auto detail = fit_bloom_model_detail(observed, truth, pseudo, 3);
    for (double e : detail.fit.residuals)
        CHECK(std::fabs(e) <= 1e-9);
}
