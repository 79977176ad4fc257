#include "ntl/desaturation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ntl/error.hpp"

namespace ntl {

namespace {

void require_nonnegative(const DNGrid& ntl) {
    for (std::size_t i = 0; i < ntl.nrows(); ++i)
        for (std::size_t j = 0; j < ntl.ncols(); ++j)
            if (!ntl.is_nodata(i, j) && ntl.at(i, j) < 0.0)
                throw DomainError("desaturation: negative DN at (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ")");
}

std::string coord_str(PixelCoord p) {
    return "(" + std::to_string(p.row) + ", " + std::to_string(p.col) + ")";
}

} // namespace

void SampleSelectionPolicy::validate() const {
    if (!(max_abs_diff_quantile > 0.0 && max_abs_diff_quantile <= 1.0))
        throw ConfigError("sample quantile must be in (0, 1], got " + std::to_string(max_abs_diff_quantile));
    if (!(min_radiance > 0.0) || !std::isfinite(min_radiance))
        throw ConfigError("min_radiance must be > 0, got " + std::to_string(min_radiance));
}

PixelMask detect_saturated(const DNGrid& grid, double threshold) {
    auto mask = PixelMask::like(grid);
    for (std::size_t i = 0; i < grid.nrows(); ++i)
        for (std::size_t j = 0; j < grid.ncols(); ++j)
            if (!grid.is_nodata(i, j) && grid.at(i, j) >= threshold)
                mask.set(i, j, true);
    return mask;
}

std::vector<SaturationSample> select_saturation_samples(const DNGrid& ntl, const DNGrid& radiance,
                                                        const PixelMask& saturated,
                                                        const SampleSelectionPolicy& policy) {
    policy.validate();
    require_same_shape(ntl, radiance, "desaturation");
    require_same_shape(ntl, saturated, "desaturation");
    require_nonnegative(ntl);

    std::vector<SaturationSample> candidates;
    for (std::size_t i = 0; i < ntl.nrows(); ++i) {
        for (std::size_t j = 0; j < ntl.ncols(); ++j) {
            if (saturated.at(i, j) || ntl.is_nodata(i, j) || radiance.is_nodata(i, j))
                continue;
            const double dn = ntl.at(i, j);
            const double r = radiance.at(i, j);
            if (dn > 0.0 && r >= policy.min_radiance)
                candidates.push_back({r, dn, {i, j}});
        }
    }
    if (candidates.size() < 2)
        throw DomainError("desaturation: fewer than 2 unsaturated lit samples (" + std::to_string(candidates.size()) +
                          ")");

    const std::size_t n = candidates.size();
    const auto keep = static_cast<std::size_t>(
        std::ceil(policy.max_abs_diff_quantile * static_cast<double>(n) - 1e-9));
    if (keep >= n)
        return candidates;
    if (keep < 2)
        throw DomainError("desaturation: quantile keeps fewer than 2 samples");

    const auto provisional = fit_saturation_model_detail(candidates);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return std::fabs(provisional.fit.residuals[l]) < std::fabs(provisional.fit.residuals[r]);
    });
    order.resize(keep);
    std::sort(order.begin(), order.end());

    std::vector<SaturationSample> kept;
    kept.reserve(keep);
    for (auto idx : order)
        kept.push_back(candidates[idx]);
    return kept;
}

SaturationFit fit_saturation_model_detail(std::span<const SaturationSample> samples) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(samples.size());
    for (const auto& s : samples)
        pairs.emplace_back(s.radiance, s.dn);
    return fit_saturation_model_detail(pairs);
}

SaturationFit fit_saturation_model_detail(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 2)
        throw DomainError("desaturation: need at least 2 samples, got " + std::to_string(samples.size()));
    std::vector<double> xs, ys;
    xs.reserve(samples.size());
    ys.reserve(samples.size());
    for (const auto& [r, dn] : samples) {
        if (!(r > 0.0) || !std::isfinite(r))
            throw DomainError("desaturation: radiance must be > 0 for the log model, got " + std::to_string(r));
        xs.push_back(std::log(r));
        ys.push_back(dn);
    }
    SaturationFit out;
    try {
        out.fit = fit_ols(xs, ys);
    } catch (const DomainError& e) {
        throw DomainError(std::string("desaturation: ") + e.what());
    }
    out.model = {out.fit.slope, out.fit.intercept};
    return out;
}

DNGrid apply_desaturation(const DNGrid& ntl, const DNGrid& radiance, const PixelMask& saturated,
                          const LogModel& model) {
    require_same_shape(ntl, radiance, "desaturation");
    require_same_shape(ntl, saturated, "desaturation");
    require_nonnegative(ntl);

    std::vector<PixelCoord> bad;
    std::vector<double> out(ntl.cells());
    for (std::size_t i = 0; i < ntl.nrows(); ++i) {
        for (std::size_t j = 0; j < ntl.ncols(); ++j) {
            if (!saturated.at(i, j) || ntl.is_nodata(i, j))
                continue;
            const double r = radiance.at(i, j);
            if (radiance.is_nodata(r) || !(r > 0.0)) {
                bad.push_back({i, j});
                continue;
            }
            out[i * ntl.ncols() + j] = std::max(0.0, model(r));
        }
    }
    if (!bad.empty()) {
        std::string msg = "desaturation: saturated cells without positive radiance:";
        const std::size_t shown = std::min<std::size_t>(bad.size(), 20);
        for (std::size_t k = 0; k < shown; ++k)
            msg += " " + coord_str(bad[k]);
        if (bad.size() > shown)
            msg += " ... (" + std::to_string(bad.size()) + " total)";
        throw DomainError(msg);
    }
    return ntl.with_cells(std::move(out));
}

} // namespace ntl
