#ifndef NTL_DEBLOOMING_HPP
#define NTL_DEBLOOMING_HPP

#include "ntl/raster.hpp"
#include "ntl/regression.hpp"

namespace ntl {

inline constexpr int kDefaultBloomRadius = 5;

/// Thresholds that decide which lit cells are pseudo light pixels.
struct PseudoPixelPolicy {
    double background_max = 0.0;    ///< cells <= this are background
    double pseudo_max_dn = 10.0;    ///< lit cells above this are genuine sources
    int min_background_neighbors = 5; ///< of the 8-neighborhood

    void validate() const;
};

/// Spatial response R' = a * sum(R_i / d_i^2) + b over a square window.
struct BloomModel {
    double a = 0.0;
    double b = 0.0;
    int radius = kDefaultBloomRadius;
};

/**
 * Pseudo light pixels: background_max < DN <= pseudo_max_dn with at least
 * min_background_neighbors valid background cells among the existing
 * 8-neighbors.
 */
PixelMask detect_pseudo_light(const DNGrid& grid, const PseudoPixelPolicy& policy = {});

/// sum(R_i / d_i^2) over the valid non-center cells of the window at `center`.
double bloom_feature(const DNGrid& grid, PixelCoord center, int radius);

struct BloomFit {
    BloomModel model;
    LinearFit fit; ///< pseudo-pixel DN regressed on bloom_feature
};

/**
 * Regresses observed pseudo-pixel values on the bloom feature. The emitter
 * grid supplies the R_i of the feature; the single-grid overloads use the
 * observed grid as its own emitter estimate.
 */
BloomFit fit_bloom_model_detail(const DNGrid& observed, const DNGrid& emitters, const PixelMask& pseudo,
                                int radius);

inline BloomModel fit_bloom_model(const DNGrid& grid, const PixelMask& pseudo, int radius) {
    return fit_bloom_model_detail(grid, grid, pseudo, radius).model;
}
inline BloomModel fit_bloom_model(const DNGrid& observed, const DNGrid& emitters, const PixelMask& pseudo,
                                  int radius) {
    return fit_bloom_model_detail(observed, emitters, pseudo, radius).model;
}

/**
 * Subtracts the modeled blooming from every lit cell in one pass:
 * v -> max(0, v - (a * feature + b)), features taken from the unmodified
 * emitter grid. Cells <= 0 and nodata are copied unchanged.
 */
DNGrid apply_debloom(const DNGrid& observed, const DNGrid& emitters, const BloomModel& model);

inline DNGrid apply_debloom(const DNGrid& grid, const BloomModel& model) { return apply_debloom(grid, grid, model); }

} // namespace ntl

#endif
