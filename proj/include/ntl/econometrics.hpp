#ifndef NTL_ECONOMETRICS_HPP
#define NTL_ECONOMETRICS_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ntl/regression.hpp"

namespace ntl {

/// Year -> value series (GDP, sum of lights, boat counts, port throughput).
class AnnualSeries {
public:
    AnnualSeries() = default;
    explicit AnnualSeries(std::map<int, double> entries);

    void set(int year, double value);
    bool contains(int year) const { return m_entries.count(year) != 0; }
    double at(int year) const;
    std::size_t size() const noexcept { return m_entries.size(); }
    bool empty() const noexcept { return m_entries.empty(); }

    const std::map<int, double>& entries() const noexcept { return m_entries; }
    auto begin() const { return m_entries.begin(); }
    auto end() const { return m_entries.end(); }

    friend bool operator==(const AnnualSeries&, const AnnualSeries&) = default;

private:
    std::map<int, double> m_entries;
};

struct AlignedYear {
    int year;
    double first;
    double second;
};

/// Years present in both series, ascending. Throws DomainError when none are shared.
std::vector<AlignedYear> align(const AnnualSeries& a, const AnnualSeries& b);

struct GDPModel {
    LinearFit fit; ///< intercept = beta0, slope = beta1
    std::vector<int> training_years;

    double beta0() const noexcept { return fit.intercept; }
    double beta1() const noexcept { return fit.slope; }
};

inline constexpr std::size_t kMinGdpYears = 3;

/// OLS of GDP on the light statistic over the shared years (at least 3).
GDPModel fit_gdp_model(const AnnualSeries& lights, const AnnualSeries& gdp);

double predict_gdp(const GDPModel& model, double light);

struct EvaluationRow {
    int year;
    double actual;
    double predicted;
    double residual; ///< actual - predicted
};

struct EvaluationReport {
    std::vector<EvaluationRow> rows;
    double mse = 0.0;
};

EvaluationReport evaluate(const GDPModel& model, const AnnualSeries& lights, const AnnualSeries& gdp);

/// Divides every value by the base-year value, so the base year maps to 1.
AnnualSeries index_to_base(const AnnualSeries& series, int base_year);

// CSV --------------------------------------------------------------------------

/// `year,value` header then one row per year.
AnnualSeries read_series_csv(std::istream& in);
AnnualSeries read_series_csv_file(const std::string& path);
void write_series_csv(std::ostream& out, const AnnualSeries& series);

/// `year,actual,predicted,residual` rows then `# mse=<value>`.
void write_report_csv(std::ostream& out, const EvaluationReport& report);

} // namespace ntl

#endif
