#ifndef NTL_CLI_SVG_PLOT_HPP
#define NTL_CLI_SVG_PLOT_HPP

#include <string>
#include <vector>

#include "ntl/regression.hpp"

namespace ntl::cli {

struct ScatterPoint {
    double x;
    double y;
    std::string label;
};

struct ScatterPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ScatterPoint> points;
    const LinearFit* fit = nullptr; ///< fitted line drawn across the x range when set
};

/// Standalone 800x600 SVG document. Output depends only on the inputs.
std::string render_scatter_svg(const ScatterPlot& plot);

} // namespace ntl::cli

#endif
