#ifndef NTL_CLI_CONFIG_HPP
#define NTL_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ntl/deblooming.hpp"
#include "ntl/desaturation.hpp"
#include "ntl/synth.hpp"

#include <json.hpp>

namespace ntl::cli {

/// One generative step applied to a synthetic scene.
struct ForwardStep {
    enum class Kind { Bloom, Saturate, Intercal };
    Kind kind;
    double a = 0.0;
    double b = 0.0;
    int radius = kDefaultBloomRadius; ///< bloom only
    double cap = kSaturationDN;       ///< saturate only
};

/**
 * Synthetic scene document: a flat or log-uniform base, point sources,
 * forward models in order, then optional seeded Gaussian noise.
 */
struct SynthDocument {
    SceneSpec scene; ///< noise_sigma is applied after the forward steps
    std::optional<std::pair<double, double>> log_uniform_field;
    std::vector<ForwardStep> forward;
};

SynthDocument parse_synth(const nlohmann::json& j);
DNGrid run_synth(const SynthDocument& doc);

struct IntercalibrationStage {
    std::string reference;
    std::string mask;
};

struct DesaturationStage {
    std::string radiance;
    double threshold = kSaturationDN;
    SampleSelectionPolicy policy;
};

struct DebloomStage {
    int radius = kDefaultBloomRadius;
    PseudoPixelPolicy policy;
};

struct LightsSection {
    std::string statistic = "sum";
    std::string mask;
    std::optional<int> year;
    std::string series;
};

/// Everything `pipeline` needs. Relative paths are resolved against the
/// config file's directory.
struct PipelineConfig {
    std::string pending;
    std::optional<SynthDocument> synth;
    std::optional<IntercalibrationStage> intercalibration;
    std::optional<DesaturationStage> desaturation;
    std::optional<DebloomStage> deblooming;
    LightsSection lights;
    std::string gdp;
    std::optional<int> base_year;
    std::vector<std::string> index_series;
    std::string output_dir = "out";

    void validate() const;
};

PipelineConfig parse_pipeline_config(const nlohmann::json& j, const std::string& base_dir);

} // namespace ntl::cli

#endif
