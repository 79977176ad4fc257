#include "ntl/deblooming.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ntl/error.hpp"
#include "ntl/numeric.hpp"

namespace ntl {

void PseudoPixelPolicy::validate() const {
    if (!(background_max >= 0.0))
        throw ConfigError("background_max must be >= 0");
    if (!(background_max < pseudo_max_dn))
        throw ConfigError("background_max must be < pseudo_max_dn");
    if (min_background_neighbors < 1 || min_background_neighbors > 8)
        throw ConfigError("min_background_neighbors must be in [1, 8], got " +
                          std::to_string(min_background_neighbors));
}

PixelMask detect_pseudo_light(const DNGrid& grid, const PseudoPixelPolicy& policy) {
    policy.validate();
    auto mask = PixelMask::like(grid);
    const Window ring(1);
    for (std::size_t i = 0; i < grid.nrows(); ++i) {
        for (std::size_t j = 0; j < grid.ncols(); ++j) {
            const double v = grid.at(i, j);
            if (grid.is_nodata(v) || v <= policy.background_max || v > policy.pseudo_max_dn)
                continue;
            int background = 0;
            for_each_neighbor(grid, {i, j}, ring, [&](PixelCoord, double nv, double) {
                if (nv <= policy.background_max)
                    ++background;
            });
            if (background >= policy.min_background_neighbors)
                mask.set(i, j, true);
        }
    }
    return mask;
}

double bloom_feature(const DNGrid& grid, PixelCoord center, int radius) {
    CompensatedSum sum;
    for_each_neighbor(grid, center, Window(radius), [&](PixelCoord, double v, double d2) { sum += v / d2; });
    return sum.value();
}

BloomFit fit_bloom_model_detail(const DNGrid& observed, const DNGrid& emitters, const PixelMask& pseudo,
                                int radius) {
    require_same_shape(observed, emitters, "deblooming");
    require_same_shape(observed, pseudo, "deblooming");
    const Window window(radius);

    std::vector<double> features, values;
    for (std::size_t i = 0; i < observed.nrows(); ++i) {
        for (std::size_t j = 0; j < observed.ncols(); ++j) {
            if (!pseudo.at(i, j) || observed.is_nodata(i, j))
                continue;
            features.push_back(bloom_feature(emitters, {i, j}, window.radius()));
            values.push_back(observed.at(i, j));
        }
    }
    if (features.size() < 2)
        throw DomainError("deblooming: need at least 2 pseudo light pixels, got " + std::to_string(features.size()));

    BloomFit out;
    try {
        out.fit = fit_ols(features, values);
    } catch (const DomainError& e) {
        throw DomainError(std::string("deblooming: ") + e.what());
    }
    out.model = {out.fit.slope, out.fit.intercept, radius};
    return out;
}

DNGrid apply_debloom(const DNGrid& observed, const DNGrid& emitters, const BloomModel& model) {
    require_same_shape(observed, emitters, "deblooming");
    if (!std::isfinite(model.a) || !std::isfinite(model.b))
        throw DomainError("deblooming: model coefficients must be finite");
    const Window window(model.radius);

    std::vector<double> out(observed.cells());
    for (std::size_t i = 0; i < observed.nrows(); ++i) {
        for (std::size_t j = 0; j < observed.ncols(); ++j) {
            const double v = observed.at(i, j);
            if (observed.is_nodata(v) || v <= 0.0)
                continue;
            const double bloom = model.a * bloom_feature(emitters, {i, j}, window.radius()) + model.b;
            out[i * observed.ncols() + j] = std::max(0.0, v - bloom);
        }
    }
    return observed.with_cells(std::move(out));
}

} // namespace ntl
