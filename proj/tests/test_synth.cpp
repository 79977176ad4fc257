#include <doctest.h>

#include <cmath>

#include "ntl/deblooming.hpp"
#include "ntl/desaturation.hpp"
#include "ntl/intercalibration.hpp"
#include "ntl/synth.hpp"
#include "oracle.hpp"
#include "scenes.hpp"

using namespace ntl;

TEST_CASE("gen_scene") {
    SceneSpec spec;
    spec.ncols = 11;
    spec.nrows = 11;

    SUBCASE("no sources gives a uniform background") {
        spec.background = 2.5;
        CHECK(gen_scene(spec) == DNGrid(11, 11, 2.5));
    }
    SUBCASE("one source") {
        spec.sources = {{{5, 5}, 40}};
        const auto g = gen_scene(spec);
        std::size_t lit = 0;
        for (double v : g.cells())
            lit += v != 0.0;
        CHECK(lit == 1);
        CHECK(g.at(5, 5) == 40);
    }
    SUBCASE("deterministic, including noise") {
        spec.sources = {{{1, 2}, 40}};
        spec.noise_sigma = 0.3;
        spec.seed = 99;
        CHECK(gen_scene(spec) == gen_scene(spec));
        SceneSpec other = spec;
        other.seed = 100;
        CHECK_FALSE(gen_scene(other) == gen_scene(spec));
    }
    SUBCASE("errors") {
        spec.sources = {{{11, 0}, 40}};
        CHECK_THROWS_AS(gen_scene(spec), DomainError);
        spec.sources = {{{1, 0}, 0}};
        CHECK_THROWS_AS(gen_scene(spec), ConfigError);
        spec.sources.clear();
        spec.ncols = 0;
        CHECK_THROWS_AS(gen_scene(spec), ConfigError);
    }
}

TEST_CASE("gen_log_uniform_field") {
    const auto g = gen_log_uniform_field(20, 10, 2.0, 50.0, 5);
    for (double v : g.cells()) {
        CHECK(v >= 2.0);
        CHECK(v <= 50.0);
    }
    CHECK(g == gen_log_uniform_field(20, 10, 2.0, 50.0, 5));
    CHECK_THROWS_AS(gen_log_uniform_field(2, 2, 0.0, 1.0, 1), ConfigError);
}

TEST_CASE("add_gaussian_noise") {
    const DNGrid g(10, 10, 5.0);
    CHECK(add_gaussian_noise(g, 0.0, 1) == g);
    const auto a = add_gaussian_noise(g, 0.1, 42);
    CHECK(a == add_gaussian_noise(g, 0.1, 42));
    CHECK_FALSE(a == g);

    PixelMask m(10, 10);
    m.set(3, 3, true);
    const auto masked = add_gaussian_noise(g, 0.1, 42, &m);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j)
            if (!(i == 3 && j == 3))
                CHECK(masked.at(i, j) == 5.0);
    CHECK_THROWS_AS(add_gaussian_noise(g, -1.0, 1), ConfigError);
}

TEST_CASE("forward_bloom") {
    DNGrid truth(9, 9);
    truth.set(4, 4, 40);
    CHECK(forward_bloom(truth, 0, 0, 3) == truth);

    const auto obs = forward_bloom(truth, 0.5, 0.2, 1);
    CHECK(obs.at(4, 5) == doctest::Approx(20.2).epsilon(1e-15));
    CHECK(obs.at(4, 4) == doctest::Approx(40.2).epsilon(1e-15)); // lit cell sees no other source
    CHECK(obs.at(4, 6) == 0.0);                                  // outside the footprint
    CHECK(obs.at(0, 0) == 0.0);
}

TEST_CASE("forward_saturate") {
    const DNGrid r(4, 1, std::vector<double>{std::exp(2.0), std::exp(7.5), 0.0, -9999});
    const auto dn = forward_saturate(r, 10, 5);
    CHECK(dn.at(0, 0) == doctest::Approx(25).epsilon(1e-15));
    CHECK(dn.at(0, 1) == 63.0); // 80 before the cap
    CHECK(dn.at(0, 2) == 0.0);
    CHECK(dn.is_nodata(0, 3));
    CHECK_THROWS_AS(forward_saturate(DNGrid(1, 1, -1.0), 10, 5), DomainError);
}

TEST_CASE("forward_intercal") {
    const DNGrid g(3, 1, std::vector<double>{0, 4, 62});
    CHECK(forward_intercal(g, 1, 1) == g);
    CHECK(forward_intercal(g, 2, 0.8).at(0, 0) == 1.0);
}

TEST_CASE("master oracle: every forward model inverts within 1e-6 per cell") {
    SUBCASE("intercalibration") {
        std::vector<double> cells(63);
        for (int v = 0; v < 63; ++v)
            cells[v] = v;
        const DNGrid truth(63, 1, cells);
        const DNGrid pending = forward_intercal(truth, 1.3, 0.85);
        const auto model = fit_intercalibration(extract_pairs(pending, truth, PixelMask::like(truth, true)));
        const auto out = apply_intercalibration(pending, model);
        for (std::size_t k = 0; k < truth.size(); ++k)
            CHECK(std::fabs(out.cells()[k] - truth.cells()[k]) <= 1e-6);
    }
    SUBCASE("desaturation recovers 80") {
        DNGrid radiance = gen_log_uniform_field(20, 20, 1.0, std::exp(5.0), 3);
        radiance.set(7, 7, std::exp(7.5));
        const DNGrid ntl = forward_saturate(radiance, 10, 5);
        const auto sat = detect_saturated(ntl);
        REQUIRE(sat.at(7, 7));
        const auto model = fit_saturation_model(select_saturation_samples(ntl, radiance, sat));
        const auto out = apply_desaturation(ntl, radiance, sat, model);
        CHECK(std::fabs(out.at(7, 7) - 80.0) <= 1e-9);
        for (std::size_t i = 0; i < 20; ++i)
            for (std::size_t j = 0; j < 20; ++j)
                CHECK(std::fabs(out.at(i, j) - (10 * std::log(radiance.at(i, j)) + 5)) <= 1e-6);
    }
    SUBCASE("deblooming") {
        const DNGrid truth = gen_scene(scenes::five_sources());
        const DNGrid observed = forward_bloom(truth, 0.5, 0.2, 3);
        const auto pseudo = detect_pseudo_light(observed, {0, 10, 3});
        const auto model = fit_bloom_model(observed, truth, pseudo, 3);
        CHECK(std::fabs(model.a - 0.5) <= 1e-9);
        CHECK(std::fabs(model.b - 0.2) <= 1e-9);
        const auto out = apply_debloom(observed, truth, model);
        for (std::size_t k = 0; k < truth.size(); ++k)
            CHECK(std::fabs(out.cells()[k] - truth.cells()[k]) <= 1e-6);
    }
}
