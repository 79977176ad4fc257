#ifndef NTL_SYNTH_HPP
#define NTL_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "ntl/raster.hpp"

namespace ntl {

struct LightSource {
    PixelCoord coord;
    double intensity;
};

/// Synthetic scene: point sources on a flat background.
struct SceneSpec {
    std::size_t ncols = 0;
    std::size_t nrows = 0;
    std::vector<LightSource> sources;
    double background = 0.0;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0; ///< Gaussian noise on every cell; 0 disables

    void validate() const;
};

/// Deterministic for a given spec, including the seed.
DNGrid gen_scene(const SceneSpec& spec);

/// Log-uniform random field in [lo, hi], e.g. a radiance-calibrated scene.
DNGrid gen_log_uniform_field(std::size_t ncols, std::size_t nrows, double lo, double hi, std::uint64_t seed);

/// Adds N(0, sigma^2) to valid cells (restricted to `mask` when given).
DNGrid add_gaussian_noise(const DNGrid& grid, double sigma, std::uint64_t seed, const PixelMask* mask = nullptr);

/**
 * Generative blooming. Every cell within Chebyshev distance `radius` of a lit
 * truth cell (including the lit cell itself) becomes
 * truth + a * bloom_feature(truth) + b; all other cells keep their truth value.
 */
DNGrid forward_bloom(const DNGrid& truth, double a, double b, int radius);

/// DN = clamp(a * ln(R) + b, 0, cap); R == 0 gives 0, R < 0 is an error.
DNGrid forward_saturate(const DNGrid& radiance, double a, double b, double cap = 63.0);

/// v -> a * (v + 1)^b - 1 without clamping.
DNGrid forward_intercal(const DNGrid& grid, double a, double b);

} // namespace ntl

#endif
