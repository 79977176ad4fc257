#ifndef NTL_CLI_FILES_HPP
#define NTL_CLI_FILES_HPP

#include <string>

#include "ntl/deblooming.hpp"
#include "ntl/desaturation.hpp"
#include "ntl/econometrics.hpp"
#include "ntl/intercalibration.hpp"
#include "ntl/raster.hpp"

#include <json.hpp>

namespace ntl::cli {

using json = nlohmann::json;

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);
json read_json_file(const std::string& path);

/// Canonical text of a grid, re-parsed; the precision every file hand-off sees.
DNGrid quantize(const DNGrid& grid);

void write_grid_file(const std::string& path, const DNGrid& grid);
void write_series_file(const std::string& path, const AnnualSeries& series);

json to_json(const IntercalibrationFit& fit);
json to_json(const SaturationFit& fit);
json to_json(const BloomFit& fit);
json to_json(const GDPModel& model);

GDPModel gdp_model_from_json(const json& j);

} // namespace ntl::cli

#endif
