#include "ntl/cli/config.hpp"

#include <filesystem>
#include <initializer_list>

#include "ntl/error.hpp"

namespace ntl::cli {

using json = nlohmann::json;

namespace {

void allow_keys(const json& j, const char* section, std::initializer_list<const char*> keys) {
    if (!j.is_object())
        throw ConfigError(std::string(section) + ": expected an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : keys)
            known = known || item.key() == k;
        if (!known)
            throw ConfigError(std::string(section) + ": unknown key '" + item.key() + "'");
    }
}

template <class T>
T get(const json& j, const char* section, const char* key) {
    if (!j.contains(key))
        throw ConfigError(std::string(section) + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(section) + ": key '" + key + "' has the wrong type");
    }
}

template <class T>
T get_or(const json& j, const char* section, const char* key, T fallback) {
    return j.contains(key) ? get<T>(j, section, key) : fallback;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty() || base_dir.empty() || std::filesystem::path(path).is_absolute())
        return path;
    return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

bool enabled(const json& j, const char* section) {
    return get_or<bool>(j, section, "enabled", true);
}

} // namespace

SynthDocument parse_synth(const json& j) {
    const char* s = "synth";
    allow_keys(j, s, {"ncols", "nrows", "background", "seed", "noise_sigma", "sources", "field", "forward"});
    SynthDocument doc;
    doc.scene.ncols = get<std::size_t>(j, s, "ncols");
    doc.scene.nrows = get<std::size_t>(j, s, "nrows");
    doc.scene.background = get_or<double>(j, s, "background", 0.0);
    doc.scene.seed = get_or<std::uint64_t>(j, s, "seed", 0);
    doc.scene.noise_sigma = get_or<double>(j, s, "noise_sigma", 0.0);
    if (j.contains("sources")) {
        if (!j.at("sources").is_array())
            throw ConfigError("synth: 'sources' must be an array");
        for (const auto& src : j.at("sources")) {
            allow_keys(src, "synth.sources[]", {"row", "col", "intensity"});
            doc.scene.sources.push_back({{get<std::size_t>(src, "synth.sources[]", "row"),
                                          get<std::size_t>(src, "synth.sources[]", "col")},
                                         get<double>(src, "synth.sources[]", "intensity")});
        }
    }
    if (j.contains("field")) {
        const auto& f = j.at("field");
        allow_keys(f, "synth.field", {"kind", "min", "max"});
        if (get<std::string>(f, "synth.field", "kind") != "log_uniform")
            throw ConfigError("synth.field: only kind 'log_uniform' is supported");
        doc.log_uniform_field = std::make_pair(get<double>(f, "synth.field", "min"), get<double>(f, "synth.field", "max"));
    }
    if (j.contains("forward")) {
        if (!j.at("forward").is_array())
            throw ConfigError("synth: 'forward' must be an array");
        for (const auto& step : j.at("forward")) {
            const char* fs = "synth.forward[]";
            allow_keys(step, fs, {"model", "a", "b", "radius", "cap"});
            ForwardStep fwd;
            const auto model = get<std::string>(step, fs, "model");
            if (model == "bloom")
                fwd.kind = ForwardStep::Kind::Bloom;
            else if (model == "saturate")
                fwd.kind = ForwardStep::Kind::Saturate;
            else if (model == "intercal")
                fwd.kind = ForwardStep::Kind::Intercal;
            else
                throw ConfigError("synth.forward[]: unknown model '" + model + "'");
            fwd.a = get<double>(step, fs, "a");
            fwd.b = get<double>(step, fs, "b");
            fwd.radius = get_or<int>(step, fs, "radius", kDefaultBloomRadius);
            fwd.cap = get_or<double>(step, fs, "cap", kSaturationDN);
            doc.forward.push_back(fwd);
        }
    }
    doc.scene.validate();
    return doc;
}

DNGrid run_synth(const SynthDocument& doc) {
    SceneSpec flat = doc.scene;
    flat.noise_sigma = 0.0;
    DNGrid grid = gen_scene(flat);
    if (doc.log_uniform_field) {
        const auto [lo, hi] = *doc.log_uniform_field;
        grid = gen_log_uniform_field(flat.ncols, flat.nrows, lo, hi, flat.seed);
        for (const auto& s : flat.sources)
            grid.set(s.coord, s.intensity);
    }
    for (const auto& step : doc.forward) {
        switch (step.kind) {
        case ForwardStep::Kind::Bloom:
            grid = forward_bloom(grid, step.a, step.b, step.radius);
            break;
        case ForwardStep::Kind::Saturate:
            grid = forward_saturate(grid, step.a, step.b, step.cap);
            break;
        case ForwardStep::Kind::Intercal:
            grid = forward_intercal(grid, step.a, step.b);
            break;
        }
    }
    if (doc.scene.noise_sigma > 0.0)
        grid = add_gaussian_noise(grid, doc.scene.noise_sigma, doc.scene.seed);
    return grid;
}

void PipelineConfig::validate() const {
    if (pending.empty() && !synth)
        throw ConfigError("config: one of 'pending' or 'synth' is required");
    if (!pending.empty() && synth)
        throw ConfigError("config: 'pending' and 'synth' are mutually exclusive");
    if (intercalibration && (intercalibration->reference.empty() || intercalibration->mask.empty()))
        throw ConfigError("intercalibration: 'reference' and 'mask' are required");
    if (desaturation) {
        if (desaturation->radiance.empty())
            throw ConfigError("desaturation: 'radiance' is required");
        desaturation->policy.validate();
    }
    if (deblooming) {
        static_cast<void>(Window(deblooming->radius));
        deblooming->policy.validate();
    }
    if (lights.statistic != "sum")
        throw ConfigError("lights: unsupported statistic '" + lights.statistic + "' (only 'sum')");
    if (output_dir.empty())
        throw ConfigError("config: 'output_dir' must not be empty");
}

PipelineConfig parse_pipeline_config(const json& j, const std::string& base_dir) {
    const char* s = "config";
    allow_keys(j, s,
               {"pending", "synth", "intercalibration", "desaturation", "deblooming", "lights", "gdp", "base_year",
                "index_series", "output_dir"});
    PipelineConfig cfg;
    cfg.pending = resolve(base_dir, get_or<std::string>(j, s, "pending", ""));
    if (j.contains("synth"))
        cfg.synth = parse_synth(j.at("synth"));

    if (j.contains("intercalibration")) {
        const auto& ic = j.at("intercalibration");
        const char* is = "intercalibration";
        allow_keys(ic, is, {"enabled", "reference", "mask"});
        if (enabled(ic, is))
            cfg.intercalibration = IntercalibrationStage{resolve(base_dir, get<std::string>(ic, is, "reference")),
                                                         resolve(base_dir, get<std::string>(ic, is, "mask"))};
    }
    if (j.contains("desaturation")) {
        const auto& ds = j.at("desaturation");
        const char* dss = "desaturation";
        allow_keys(ds, dss, {"enabled", "radiance", "threshold", "quantile", "min_radiance"});
        if (enabled(ds, dss)) {
            DesaturationStage st;
            st.radiance = resolve(base_dir, get<std::string>(ds, dss, "radiance"));
            st.threshold = get_or<double>(ds, dss, "threshold", kSaturationDN);
            st.policy.max_abs_diff_quantile = get_or<double>(ds, dss, "quantile", st.policy.max_abs_diff_quantile);
            st.policy.min_radiance = get_or<double>(ds, dss, "min_radiance", st.policy.min_radiance);
            cfg.desaturation = st;
        }
    }
    if (j.contains("deblooming")) {
        const auto& db = j.at("deblooming");
        const char* dbs = "deblooming";
        allow_keys(db, dbs, {"enabled", "radius", "background_max", "pseudo_max", "min_bg_neighbors"});
        if (enabled(db, dbs)) {
            DebloomStage st;
            st.radius = get_or<int>(db, dbs, "radius", kDefaultBloomRadius);
            st.policy.background_max = get_or<double>(db, dbs, "background_max", st.policy.background_max);
            st.policy.pseudo_max_dn = get_or<double>(db, dbs, "pseudo_max", st.policy.pseudo_max_dn);
            st.policy.min_background_neighbors =
                get_or<int>(db, dbs, "min_bg_neighbors", st.policy.min_background_neighbors);
            cfg.deblooming = st;
        }
    }
    if (j.contains("lights")) {
        const auto& l = j.at("lights");
        const char* ls = "lights";
        allow_keys(l, ls, {"statistic", "mask", "year", "series"});
        cfg.lights.statistic = get_or<std::string>(l, ls, "statistic", "sum");
        cfg.lights.mask = resolve(base_dir, get_or<std::string>(l, ls, "mask", ""));
        if (l.contains("year"))
            cfg.lights.year = get<int>(l, ls, "year");
        cfg.lights.series = resolve(base_dir, get_or<std::string>(l, ls, "series", ""));
    }
    cfg.gdp = resolve(base_dir, get_or<std::string>(j, s, "gdp", ""));
    if (j.contains("base_year"))
        cfg.base_year = get<int>(j, s, "base_year");
    for (const auto& p : get_or<std::vector<std::string>>(j, s, "index_series", {}))
        cfg.index_series.push_back(resolve(base_dir, p));
    cfg.output_dir = resolve(base_dir, get_or<std::string>(j, s, "output_dir", "out"));
    cfg.validate();
    return cfg;
}

} // namespace ntl::cli
