#ifndef NTL_NUMERIC_HPP
#define NTL_NUMERIC_HPP

#include <cmath>
#include <string>

namespace ntl {

/// Neumaier-compensated accumulator. Summation order is the call order, so
/// results are reproducible bit-for-bit for a fixed input order.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = m_sum + v;
        if (std::fabs(m_sum) >= std::fabs(v))
            m_comp += (m_sum - t) + v;
        else
            m_comp += (v - t) + m_sum;
        m_sum = t;
    }

    CompensatedSum& operator+=(double v) noexcept {
        add(v);
        return *this;
    }

    double value() const noexcept { return m_sum + m_comp; }

private:
    double m_sum = 0.0;
    double m_comp = 0.0;
};

/// Shortest decimal text that parses back to exactly `v`.
std::string format_shortest(double v);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double v, int decimals);

/// Parses a full token as a double. Returns false on any trailing garbage.
bool parse_double(const std::string& token, double& out);

} // namespace ntl

#endif
