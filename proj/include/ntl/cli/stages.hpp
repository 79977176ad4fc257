#ifndef NTL_CLI_STAGES_HPP
#define NTL_CLI_STAGES_HPP

#include <optional>
#include <string>

#include "ntl/deblooming.hpp"
#include "ntl/desaturation.hpp"
#include "ntl/intercalibration.hpp"

namespace ntl::cli {

// Shared by the single-stage subcommands and `pipeline`, so chaining the
// subcommands by hand reproduces a pipeline run.

struct IntercalibrationResult {
    DNGrid grid;
    IntercalibrationFit fit;
};

IntercalibrationResult run_intercalibration(const DNGrid& pending, const DNGrid& reference, const PixelMask& mask);

struct DesaturationResult {
    DNGrid grid;
    std::optional<SaturationFit> fit; ///< empty when nothing is saturated
    std::size_t saturated = 0;
    std::size_t samples = 0;
};

DesaturationResult run_desaturation(const DNGrid& ntl, const DNGrid& radiance, double threshold,
                                    const SampleSelectionPolicy& policy);

struct DebloomResult {
    DNGrid grid;
    BloomFit fit;
    std::size_t pseudo = 0;
};

DebloomResult run_deblooming(const DNGrid& grid, const DNGrid* emitters, int radius,
                             const PseudoPixelPolicy& policy);

std::string summary(const IntercalibrationResult& r);
std::string summary(const DesaturationResult& r);
std::string summary(const DebloomResult& r);

} // namespace ntl::cli

#endif
