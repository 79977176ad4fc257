#ifndef NTL_INTERCALIBRATION_HPP
#define NTL_INTERCALIBRATION_HPP

#include <cmath>
#include <span>
#include <utility>

#include "ntl/raster.hpp"
#include "ntl/regression.hpp"

namespace ntl {

/// Power-law intercalibration: corrected + 1 = a * (raw + 1)^b.
struct PowerModel {
    double a = 1.0;
    double b = 1.0;

    double operator()(double dn) const { return a * std::pow(dn + 1.0, b) - 1.0; }
};

struct IntercalibrationFit {
    PowerModel model;
    LinearFit loglog; ///< ln(DN_c + 1) regressed on ln(DN_m + 1)
};

/// Fits the power model to (pending, reference) pairs by log-log OLS.
/// Pending DN must be >= 0; reference DN only > -1, so noiseless a < 1 samples fit.
IntercalibrationFit fit_intercalibration_detail(std::span<const std::pair<double, double>> pairs);

inline PowerModel fit_intercalibration(std::span<const std::pair<double, double>> pairs) {
    return fit_intercalibration_detail(pairs).model;
}

/// Maps each valid cell v to max(0, a * (v + 1)^b - 1). Nodata is preserved.
DNGrid apply_intercalibration(const DNGrid& grid, const PowerModel& model);

} // namespace ntl

#endif
