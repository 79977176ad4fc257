#ifndef NTL_DESATURATION_HPP
#define NTL_DESATURATION_HPP

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "ntl/raster.hpp"
#include "ntl/regression.hpp"

namespace ntl {

inline constexpr double kSaturationDN = 63.0;

/// Logarithmic saturation model: DN = a * ln(radiance) + b.
struct LogModel {
    double a = 0.0;
    double b = 0.0;

    double operator()(double radiance) const { return a * std::log(radiance) + b; }
};

/// How calibration samples are drawn from unsaturated lit cells.
struct SampleSelectionPolicy {
    /// Fraction of provisional-fit samples kept, smallest |residual| first.
    double max_abs_diff_quantile = 0.9;
    /// Cells with radiance below this are not sampled.
    double min_radiance = 1e-6;

    void validate() const;
};

/// (radiance, ntl) calibration pair.
struct SaturationSample {
    double radiance;
    double dn;
    PixelCoord coord;
};

/// True where a valid cell is >= threshold.
PixelMask detect_saturated(const DNGrid& grid, double threshold = kSaturationDN);

/**
 * Collects (radiance, ntl) pairs from unsaturated lit cells, fits a
 * provisional log model, and keeps the policy quantile with the smallest
 * absolute residuals. Survivors are returned in row-major order.
 */
std::vector<SaturationSample> select_saturation_samples(const DNGrid& ntl, const DNGrid& radiance,
                                                        const PixelMask& saturated,
                                                        const SampleSelectionPolicy& policy = {});

struct SaturationFit {
    LogModel model;
    LinearFit fit; ///< DN regressed on ln(radiance)
};

SaturationFit fit_saturation_model_detail(std::span<const SaturationSample> samples);
SaturationFit fit_saturation_model_detail(std::span<const std::pair<double, double>> samples);

inline LogModel fit_saturation_model(std::span<const SaturationSample> samples) {
    return fit_saturation_model_detail(samples).model;
}
inline LogModel fit_saturation_model(std::span<const std::pair<double, double>> samples) {
    return fit_saturation_model_detail(samples).model;
}

/**
 * Replaces saturated cells with max(0, a * ln(radiance) + b). Other cells are
 * copied unchanged. Throws DomainError listing every saturated cell whose
 * radiance is nodata or <= 0.
 */
DNGrid apply_desaturation(const DNGrid& ntl, const DNGrid& radiance, const PixelMask& saturated,
                          const LogModel& model);

} // namespace ntl

#endif
