#include "ntl/cli/stages.hpp"

#include "ntl/numeric.hpp"

namespace ntl::cli {

IntercalibrationResult run_intercalibration(const DNGrid& pending, const DNGrid& reference, const PixelMask& mask) {
    const auto pairs = extract_pairs(pending, reference, mask);
    auto fit = fit_intercalibration_detail(pairs);
    return {apply_intercalibration(pending, fit.model), std::move(fit)};
}

DesaturationResult run_desaturation(const DNGrid& ntl, const DNGrid& radiance, double threshold,
                                    const SampleSelectionPolicy& policy) {
    policy.validate();
    require_same_shape(ntl, radiance, "desaturation");
    const PixelMask sat = detect_saturated(ntl, threshold);
    DesaturationResult out{ntl, std::nullopt, sat.count(), 0};
    if (out.saturated == 0)
        return out;
    const auto samples = select_saturation_samples(ntl, radiance, sat, policy);
    out.samples = samples.size();
    out.fit = fit_saturation_model_detail(samples);
    out.grid = apply_desaturation(ntl, radiance, sat, out.fit->model);
    return out;
}

DebloomResult run_deblooming(const DNGrid& grid, const DNGrid* emitters, int radius,
                             const PseudoPixelPolicy& policy) {
    const DNGrid& src = emitters ? *emitters : grid;
    const PixelMask pseudo = detect_pseudo_light(grid, policy);
    auto fit = fit_bloom_model_detail(grid, src, pseudo, radius);
    return {apply_debloom(grid, src, fit.model), std::move(fit), pseudo.count()};
}

std::string summary(const IntercalibrationResult& r) {
    return "intercalibration a=" + format_shortest(r.fit.model.a) + " b=" + format_shortest(r.fit.model.b) +
           " r2=" + format_shortest(r.fit.loglog.r2) + " n=" + std::to_string(r.fit.loglog.n);
}

std::string summary(const DesaturationResult& r) {
    if (!r.fit)
        return "desaturation saturated=0 (grid unchanged)";
    return "desaturation a=" + format_shortest(r.fit->model.a) + " b=" + format_shortest(r.fit->model.b) +
           " r2=" + format_shortest(r.fit->fit.r2) + " samples=" + std::to_string(r.samples) +
           " saturated=" + std::to_string(r.saturated);
}

std::string summary(const DebloomResult& r) {
    return "deblooming a=" + format_shortest(r.fit.model.a) + " b=" + format_shortest(r.fit.model.b) +
           " radius=" + std::to_string(r.fit.model.radius) + " r2=" + format_shortest(r.fit.fit.r2) +
           " pseudo=" + std::to_string(r.pseudo);
}

} // namespace ntl::cli
