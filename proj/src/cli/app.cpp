#include "ntl/cli/app.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ntl/cli/config.hpp"
#include "ntl/cli/files.hpp"
#include "ntl/cli/stages.hpp"
#include "ntl/cli/svg_plot.hpp"
#include "ntl/econometrics.hpp"
#include "ntl/error.hpp"
#include "ntl/numeric.hpp"

namespace ntl::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    // shared
    std::string out;
    std::string model_out;

    // intercalibrate
    std::string pending, reference, mask;

    // desaturate
    std::string ntl, radiance;
    double threshold = kSaturationDN;
    SampleSelectionPolicy sample_policy;

    // debloom / sol
    std::string grid, emitters;
    int radius = kDefaultBloomRadius;
    PseudoPixelPolicy pseudo_policy;

    // econometrics
    std::string lights, gdp, svg, model, series;
    double light = 0.0;
    int base_year = 0;

    // synth / pipeline
    std::string spec, config;
    std::optional<std::string> output_dir;
    std::optional<int> radius_override;
    std::optional<double> threshold_override, quantile_override;
    std::optional<int> base_year_override;
};

void write_json_file(const std::string& path, const json& j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

std::string report_text(const EvaluationReport& report) {
    std::ostringstream os;
    write_report_csv(os, report);
    return os.str();
}

std::string regression_svg(const GDPModel& model, const AnnualSeries& lights, const AnnualSeries& gdp) {
    ScatterPlot plot;
    plot.title = "GDP vs night light (beta0=" + format_fixed(model.beta0(), 4) +
                 ", beta1=" + format_fixed(model.beta1(), 6) + ", r2=" + format_fixed(model.fit.r2, 4) + ")";
    plot.x_label = "Night light (sum of DN)";
    plot.y_label = "GDP";
    for (const auto& r : align(lights, gdp))
        plot.points.push_back({r.first, r.second, std::to_string(r.year)});
    plot.fit = &model.fit;
    return render_scatter_svg(plot);
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

int cmd_intercalibrate(const Options& o, std::ostream& out) {
    const auto res = run_intercalibration(read_grid_file(o.pending), read_grid_file(o.reference),
                                          read_mask_file(o.mask));
    write_grid_file(o.out, res.grid);
    if (!o.model_out.empty())
        write_json_file(o.model_out, to_json(res.fit));
    out << summary(res) << '\n';
    return kExitOk;
}

int cmd_desaturate(const Options& o, std::ostream& out) {
    const auto res = run_desaturation(read_grid_file(o.ntl), read_grid_file(o.radiance), o.threshold, o.sample_policy);
    write_grid_file(o.out, res.grid);
    if (!o.model_out.empty())
        write_json_file(o.model_out, res.fit ? to_json(*res.fit) : json(nullptr));
    out << summary(res) << '\n';
    return kExitOk;
}

int cmd_debloom(const Options& o, std::ostream& out) {
    const DNGrid grid = read_grid_file(o.grid);
    std::optional<DNGrid> emitters;
    if (!o.emitters.empty())
        emitters = read_grid_file(o.emitters);
    const auto res = run_deblooming(grid, emitters ? &*emitters : nullptr, o.radius, o.pseudo_policy);
    write_grid_file(o.out, res.grid);
    if (!o.model_out.empty())
        write_json_file(o.model_out, to_json(res.fit));
    out << summary(res) << '\n';
    return kExitOk;
}

int cmd_sol(const Options& o, std::ostream& out) {
    const DNGrid grid = read_grid_file(o.grid);
    double s = 0.0;
    if (!o.mask.empty())
        s = sum_of_lights(grid, read_mask_file(o.mask));
    else
        s = sum_of_lights(grid);
    out << format_shortest(s) << '\n';
    return kExitOk;
}

int cmd_regress(const Options& o, std::ostream& out) {
    const AnnualSeries lights = read_series_csv_file(o.lights);
    const AnnualSeries gdp = read_series_csv_file(o.gdp);
    const GDPModel model = fit_gdp_model(lights, gdp);
    const EvaluationReport report = evaluate(model, lights, gdp);
    write_file_atomic(o.out, report_text(report));
    if (!o.svg.empty())
        write_file_atomic(o.svg, regression_svg(model, lights, gdp));
    if (!o.model_out.empty())
        write_json_file(o.model_out, to_json(model));
    out << "regression beta0=" << format_shortest(model.beta0()) << " beta1=" << format_shortest(model.beta1())
        << " r2=" << format_shortest(model.fit.r2) << " mse=" << format_shortest(report.mse)
        << " n=" << model.fit.n << '\n';
    return kExitOk;
}

int cmd_predict(const Options& o, std::ostream& out) {
    const GDPModel model = gdp_model_from_json(read_json_file(o.model));
    out << format_shortest(predict_gdp(model, o.light)) << '\n';
    return kExitOk;
}

int cmd_index(const Options& o, std::ostream&) {
    write_series_file(o.out, index_to_base(read_series_csv_file(o.series), o.base_year));
    return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
    const DNGrid grid = run_synth(parse_synth(read_json_file(o.spec)));
    write_grid_file(o.out, grid);
    out << "synth " << grid.ncols() << "x" << grid.nrows() << " sum=" << format_shortest(sum_of_lights(grid)) << '\n';
    return kExitOk;
}

int cmd_pipeline(const Options& o, std::ostream& out) {
    const std::string base_dir = fs::path(o.config).parent_path().string();
    PipelineConfig cfg = parse_pipeline_config(read_json_file(o.config), base_dir);
    if (o.output_dir)
        cfg.output_dir = *o.output_dir;
    if (o.radius_override && cfg.deblooming)
        cfg.deblooming->radius = *o.radius_override;
    if (o.threshold_override && cfg.desaturation)
        cfg.desaturation->threshold = *o.threshold_override;
    if (o.quantile_override && cfg.desaturation)
        cfg.desaturation->policy.max_abs_diff_quantile = *o.quantile_override;
    if (o.base_year_override)
        cfg.base_year = *o.base_year_override;
    cfg.validate();

    const fs::path dir(cfg.output_dir);
    auto path = [&](const char* name) { return (dir / name).string(); };

    // Each stage consumes the grid exactly as its output file stores it.
    DNGrid grid = cfg.synth ? quantize(run_synth(*cfg.synth)) : read_grid_file(cfg.pending);
    if (cfg.synth)
        write_grid_file(path("input.asc"), grid);

    json models = json::object();
    if (cfg.intercalibration) {
        const auto res = run_intercalibration(grid, read_grid_file(cfg.intercalibration->reference),
                                              read_mask_file(cfg.intercalibration->mask));
        grid = quantize(res.grid);
        write_grid_file(path("intercalibrated.asc"), grid);
        models["intercalibration"] = to_json(res.fit);
        out << summary(res) << '\n';
    }
    if (cfg.desaturation) {
        const auto res = run_desaturation(grid, read_grid_file(cfg.desaturation->radiance),
                                          cfg.desaturation->threshold, cfg.desaturation->policy);
        grid = quantize(res.grid);
        write_grid_file(path("desaturated.asc"), grid);
        models["desaturation"] = res.fit ? to_json(*res.fit) : json(nullptr);
        out << summary(res) << '\n';
    }
    if (cfg.deblooming) {
        const auto res = run_deblooming(grid, nullptr, cfg.deblooming->radius, cfg.deblooming->policy);
        grid = quantize(res.grid);
        write_grid_file(path("debloomed.asc"), grid);
        models["deblooming"] = to_json(res.fit);
        out << summary(res) << '\n';
    }
    write_grid_file(path("corrected.asc"), grid);

    std::optional<PixelMask> lights_mask;
    if (!cfg.lights.mask.empty())
        lights_mask = read_mask_file(cfg.lights.mask);
    const double sol = lights_mask ? sum_of_lights(grid, *lights_mask) : sum_of_lights(grid);
    json lights_json = {{"statistic", cfg.lights.statistic}, {"value", sol}};
    if (cfg.lights.year)
        lights_json["year"] = *cfg.lights.year;
    models["lights"] = lights_json;
    out << "lights sum=" << format_shortest(sol) << '\n';

    AnnualSeries lights_series;
    if (!cfg.lights.series.empty())
        lights_series = read_series_csv_file(cfg.lights.series);

    if (!cfg.gdp.empty() && !lights_series.empty()) {
        const AnnualSeries gdp = read_series_csv_file(cfg.gdp);
        const GDPModel model = fit_gdp_model(lights_series, gdp);
        const EvaluationReport report = evaluate(model, lights_series, gdp);
        write_file_atomic(path("report.csv"), report_text(report));
        write_file_atomic(path("regression.svg"), regression_svg(model, lights_series, gdp));
        models["gdp"] = to_json(model);
        out << "regression beta0=" << format_shortest(model.beta0()) << " beta1=" << format_shortest(model.beta1())
            << " r2=" << format_shortest(model.fit.r2) << " mse=" << format_shortest(report.mse) << '\n';
        if (cfg.lights.year) {
            json pred = {{"year", *cfg.lights.year}, {"light", sol}, {"predicted", predict_gdp(model, sol)}};
            if (gdp.contains(*cfg.lights.year)) {
                const AnnualSeries one({{*cfg.lights.year, sol}});
                const EvaluationReport held_out = evaluate(model, one, gdp);
                pred["actual"] = held_out.rows.front().actual;
                pred["mse"] = held_out.mse;
                write_file_atomic(path("prediction.csv"), report_text(held_out));
            }
            models["prediction"] = pred;
            out << "prediction year=" << *cfg.lights.year << " gdp=" << format_shortest(predict_gdp(model, sol))
                << '\n';
        }
    }

    if (cfg.base_year) {
        std::vector<std::pair<std::string, AnnualSeries>> to_index;
        if (!lights_series.empty()) {
            AnnualSeries with_current = lights_series;
            if (cfg.lights.year)
                with_current.set(*cfg.lights.year, sol);
            to_index.emplace_back("lights", with_current);
        }
        if (!cfg.gdp.empty())
            to_index.emplace_back("gdp", read_series_csv_file(cfg.gdp));
        for (const auto& p : cfg.index_series)
            to_index.emplace_back(stem_of(p), read_series_csv_file(p));
        for (const auto& [name, s] : to_index)
            write_series_file((dir / (name + "_indexed.csv")).string(), index_to_base(s, *cfg.base_year));
    }

    write_json_file(path("models.json"), models);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nighttime-light correction and light/GDP regression toolkit", "ntlkit"};
    app.require_subcommand(1, 1);
    Options o;

    auto* ic = app.add_subcommand("intercalibrate", "Fit and apply the power-law intercalibration model");
    ic->add_option("--pending", o.pending, "Grid to calibrate")->required();
    ic->add_option("--reference", o.reference, "Reference grid")->required();
    ic->add_option("--mask", o.mask, "Invariant-region mask")->required();
    ic->add_option("--out", o.out, "Output grid")->required();
    ic->add_option("--model-out", o.model_out, "Write fitted model JSON");

    auto* ds = app.add_subcommand("desaturate", "Correct saturated cells with the logarithmic radiance model");
    ds->add_option("--ntl", o.ntl, "Nighttime-light grid")->required();
    ds->add_option("--radiance", o.radiance, "Radiance-calibrated grid")->required();
    ds->add_option("--threshold", o.threshold, "Saturation DN")->capture_default_str();
    ds->add_option("--quantile", o.sample_policy.max_abs_diff_quantile, "Fraction of samples kept")
        ->capture_default_str();
    ds->add_option("--min-radiance", o.sample_policy.min_radiance, "Minimum sampled radiance")->capture_default_str();
    ds->add_option("--out", o.out, "Output grid")->required();
    ds->add_option("--model-out", o.model_out, "Write fitted model JSON");

    auto* db = app.add_subcommand("debloom", "Fit the blooming spatial response and subtract it");
    db->add_option("--grid", o.grid, "Input grid")->required();
    db->add_option("--radius", o.radius, "Moving-window radius (pixels)")->capture_default_str();
    db->add_option("--background-max", o.pseudo_policy.background_max, "Background DN ceiling")
        ->capture_default_str();
    db->add_option("--pseudo-max", o.pseudo_policy.pseudo_max_dn, "Pseudo light DN ceiling")->capture_default_str();
    db->add_option("--min-bg-neighbors", o.pseudo_policy.min_background_neighbors,
                   "Background cells required among the 8 neighbors")
        ->capture_default_str();
    db->add_option("--emitters", o.emitters, "Grid supplying neighbor values (default: the input grid)");
    db->add_option("--out", o.out, "Output grid")->required();
    db->add_option("--model-out", o.model_out, "Write fitted model JSON");

    auto* sol = app.add_subcommand("sol", "Print the sum of lights");
    sol->add_option("--grid", o.grid, "Input grid")->required();
    sol->add_option("--mask", o.mask, "Restrict to mask-true cells");

    auto* rg = app.add_subcommand("regress", "Regress GDP on a light series");
    rg->add_option("--lights", o.lights, "Light series CSV")->required();
    rg->add_option("--gdp", o.gdp, "GDP series CSV")->required();
    rg->add_option("--out", o.out, "Evaluation report CSV")->required();
    rg->add_option("--svg", o.svg, "Scatter plot SVG");
    rg->add_option("--model-out", o.model_out, "Write model JSON");

    auto* pr = app.add_subcommand("predict", "Predict GDP from a light value");
    pr->add_option("--model", o.model, "Model JSON")->required();
    pr->add_option("--light", o.light, "Light statistic")->required();

    auto* ix = app.add_subcommand("index", "Scale a series to its base-year value");
    ix->add_option("--series", o.series, "Series CSV")->required();
    ix->add_option("--base-year", o.base_year, "Base year")->required();
    ix->add_option("--out", o.out, "Output CSV")->required();

    auto* sy = app.add_subcommand("synth", "Generate a synthetic scene");
    sy->add_option("--spec", o.spec, "Scene spec JSON")->required();
    sy->add_option("--out", o.out, "Output grid")->required();

    auto* pl = app.add_subcommand("pipeline", "Run intercalibration, desaturation, deblooming and regression");
    pl->add_option("--config", o.config, "Pipeline config JSON")->required();
    pl->add_option("--output-dir", o.output_dir, "Override output_dir");
    pl->add_option("--radius", o.radius_override, "Override deblooming.radius");
    pl->add_option("--threshold", o.threshold_override, "Override desaturation.threshold");
    pl->add_option("--quantile", o.quantile_override, "Override desaturation.quantile");
    pl->add_option("--base-year", o.base_year_override, "Override base_year");

    std::vector<std::string> argv_store{"ntlkit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    const auto started = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
        if (*ic)
            code = cmd_intercalibrate(o, out);
        else if (*ds)
            code = cmd_desaturate(o, out);
        else if (*db)
            code = cmd_debloom(o, out);
        else if (*sol)
            code = cmd_sol(o, out);
        else if (*rg)
            code = cmd_regress(o, out);
        else if (*pr)
            code = cmd_predict(o, out);
        else if (*ix)
            code = cmd_index(o, out);
        else if (*sy)
            code = cmd_synth(o, out);
        else if (*pl)
            code = cmd_pipeline(o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    err << "ntlkit " << app.get_subcommands().front()->get_name() << " ok in " << format_fixed(elapsed.count(), 3)
        << " s\n";
    return code;
}

} // namespace ntl::cli
