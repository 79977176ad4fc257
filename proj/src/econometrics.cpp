#include "ntl/econometrics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "ntl/error.hpp"
#include "ntl/numeric.hpp"

namespace ntl {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

AnnualSeries::AnnualSeries(std::map<int, double> entries) {
    for (const auto& [y, v] : entries)
        set(y, v);
}

void AnnualSeries::set(int year, double value) {
    if (!std::isfinite(value))
        throw DomainError("annual series: non-finite value for year " + std::to_string(year));
    m_entries[year] = value;
}

double AnnualSeries::at(int year) const {
    const auto it = m_entries.find(year);
    if (it == m_entries.end())
        throw DomainError("annual series: year " + std::to_string(year) + " not present");
    return it->second;
}

std::vector<AlignedYear> align(const AnnualSeries& a, const AnnualSeries& b) {
    std::vector<AlignedYear> out;
    for (const auto& [year, v] : a) {
        const auto it = b.entries().find(year);
        if (it != b.entries().end())
            out.push_back({year, v, it->second});
    }
    if (out.empty())
        throw DomainError("align: series share no years");
    return out;
}

GDPModel fit_gdp_model(const AnnualSeries& lights, const AnnualSeries& gdp) {
    const auto rows = align(lights, gdp);
    if (rows.size() < kMinGdpYears)
        throw DomainError("gdp model: need at least " + std::to_string(kMinGdpYears) + " aligned years, got " +
                          std::to_string(rows.size()));
    std::vector<double> xs, ys;
    GDPModel model;
    for (const auto& r : rows) {
        xs.push_back(r.first);
        ys.push_back(r.second);
        model.training_years.push_back(r.year);
    }
    try {
        model.fit = fit_ols(xs, ys);
    } catch (const DomainError& e) {
        throw DomainError(std::string("gdp model: ") + e.what());
    }
    return model;
}

double predict_gdp(const GDPModel& model, double light) {
    return model.fit.predict(light);
}

EvaluationReport evaluate(const GDPModel& model, const AnnualSeries& lights, const AnnualSeries& gdp) {
    EvaluationReport report;
    std::vector<double> actual, predicted;
    for (const auto& r : align(lights, gdp)) {
        const double p = predict_gdp(model, r.first);
        report.rows.push_back({r.year, r.second, p, r.second - p});
        actual.push_back(r.second);
        predicted.push_back(p);
    }
    report.mse = mse(actual, predicted);
    return report;
}

AnnualSeries index_to_base(const AnnualSeries& series, int base_year) {
    if (!series.contains(base_year))
        throw DomainError("index: base year " + std::to_string(base_year) + " not in series");
    const double base = series.at(base_year);
    if (base == 0.0)
        throw DomainError("index: base-year value is zero");
    AnnualSeries out;
    for (const auto& [y, v] : series)
        out.set(y, v / base);
    return out;
}

AnnualSeries read_series_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    AnnualSeries series;
    int last_year = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            if (line != "year,value")
                throw ParseError("expected header 'year,value'", lineno);
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError("expected 'year,value'", lineno);
        const std::string ys = trim(line.substr(0, comma));
        const std::string vs = trim(line.substr(comma + 1));
        int year = 0;
        const auto res = std::from_chars(ys.data(), ys.data() + ys.size(), year);
        if (res.ec != std::errc{} || res.ptr != ys.data() + ys.size())
            throw ParseError("invalid year '" + ys + "'", lineno);
        double v = 0.0;
        if (!parse_double(vs, v) || !std::isfinite(v))
            throw ParseError("invalid value '" + vs + "'", lineno);
        if (!series.empty() && year <= last_year)
            throw ParseError("years must be strictly increasing", lineno);
        series.set(year, v);
        last_year = year;
    }
    if (!header)
        throw ParseError("missing header 'year,value'");
    return series;
}

AnnualSeries read_series_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open series file '" + path + "'");
    try {
        return read_series_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_series_csv(std::ostream& out, const AnnualSeries& series) {
    out << "year,value\n";
    for (const auto& [y, v] : series)
        out << y << ',' << format_shortest(v) << '\n';
}

void write_report_csv(std::ostream& out, const EvaluationReport& report) {
    out << "year,actual,predicted,residual\n";
    for (const auto& r : report.rows)
        out << r.year << ',' << format_shortest(r.actual) << ',' << format_shortest(r.predicted) << ','
            << format_shortest(r.residual) << '\n';
    out << "# mse=" << format_shortest(report.mse) << '\n';
}

} // namespace ntl
