#include "ntl/cli/files.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ntl/error.hpp"

namespace ntl::cli {

namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out)
            throw Error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

DNGrid quantize(const DNGrid& grid) {
    std::istringstream in(write_grid(grid));
    return read_grid(in);
}

void write_grid_file(const std::string& path, const DNGrid& grid) {
    write_file_atomic(path, write_grid(grid));
}

void write_series_file(const std::string& path, const AnnualSeries& series) {
    std::ostringstream os;
    write_series_csv(os, series);
    write_file_atomic(path, os.str());
}

json to_json(const IntercalibrationFit& fit) {
    return {{"a", fit.model.a}, {"b", fit.model.b}, {"r2", fit.loglog.r2}, {"n", fit.loglog.n}};
}

json to_json(const SaturationFit& fit) {
    return {{"a", fit.model.a}, {"b", fit.model.b}, {"r2", fit.fit.r2}, {"n", fit.fit.n}};
}

json to_json(const BloomFit& fit) {
    return {{"a", fit.model.a}, {"b", fit.model.b}, {"radius", fit.model.radius}, {"r2", fit.fit.r2},
            {"n", fit.fit.n}};
}

json to_json(const GDPModel& model) {
    return {{"beta0", model.beta0()},
            {"beta1", model.beta1()},
            {"r2", model.fit.r2},
            {"training_years", model.training_years}};
}

GDPModel gdp_model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("beta0") || !j.contains("beta1"))
        throw ParseError("model file needs numeric 'beta0' and 'beta1'");
    GDPModel m;
    try {
        m.fit.intercept = j.at("beta0").get<double>();
        m.fit.slope = j.at("beta1").get<double>();
        m.fit.r2 = j.value("r2", 0.0);
        if (j.contains("training_years"))
            m.training_years = j.at("training_years").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("model file: ") + e.what());
    }
    m.fit.n = m.training_years.size();
    return m;
}

} // namespace ntl::cli
