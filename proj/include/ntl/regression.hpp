#ifndef NTL_REGRESSION_HPP
#define NTL_REGRESSION_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace ntl {

/// Simple linear least-squares fit y = intercept + slope * x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::vector<double> residuals; ///< y_i - (intercept + slope * x_i), in input order
    std::size_t n = 0;

    double predict(double x) const noexcept { return intercept + slope * x; }
};

/**
 * Closed-form ordinary least squares via centered normal equations.
 *
 * slope = Sxy / Sxx, intercept = mean(y) - slope * mean(x), accumulated with
 * compensated sums. r2 = 1 - RSS/TSS, and 1 whenever RSS is exactly zero.
 *
 * Throws DomainError on length mismatch, fewer than two points, zero variance
 * in xs, or a nonzero RSS over a constant response.
 */
LinearFit fit_ols(std::span<const double> xs, std::span<const double> ys);

/// Mean squared error (1/n) * sum (actual_i - predicted_i)^2.
double mse(std::span<const double> actual, std::span<const double> predicted);

} // namespace ntl

#endif
