#include "ntl/intercalibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ntl/error.hpp"

namespace ntl {

IntercalibrationFit fit_intercalibration_detail(std::span<const std::pair<double, double>> pairs) {
    if (pairs.size() < 2)
        throw DomainError("intercalibration: need at least 2 pixel pairs, got " + std::to_string(pairs.size()));
    std::vector<double> xs, ys;
    xs.reserve(pairs.size());
    ys.reserve(pairs.size());
    for (const auto& [raw, ref] : pairs) {
        // Reference values only need to stay inside the log domain: a < 1 maps DN 0 below zero.
        if (!(raw >= 0.0) || !(ref > -1.0) || !std::isfinite(raw) || !std::isfinite(ref))
            throw DomainError("intercalibration: need finite DN_m >= 0 and DN_c > -1 (got " + std::to_string(raw) +
                              ", " + std::to_string(ref) + ")");
        xs.push_back(std::log(raw + 1.0));
        ys.push_back(std::log(ref + 1.0));
    }

    IntercalibrationFit out;
    try {
        out.loglog = fit_ols(xs, ys);
    } catch (const DomainError& e) {
        throw DomainError(std::string("intercalibration: ") + e.what());
    }
    out.model = {std::exp(out.loglog.intercept), out.loglog.slope};
    return out;
}

DNGrid apply_intercalibration(const DNGrid& grid, const PowerModel& model) {
    if (!(model.a > 0.0) || !std::isfinite(model.a) || !std::isfinite(model.b))
        throw DomainError("intercalibration: model needs finite a > 0 and finite b");
    std::vector<double> out(grid.cells());
    for (auto& v : out) {
        if (grid.is_nodata(v))
            continue;
        if (v < 0.0)
            throw DomainError("intercalibration: negative input DN " + std::to_string(v));
        v = std::max(0.0, model(v));
    }
    return grid.with_cells(std::move(out));
}

} // namespace ntl
