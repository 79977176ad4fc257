#include "ntl/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ntl/error.hpp"
#include "ntl/numeric.hpp"

namespace ntl {

LinearFit fit_ols(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw DomainError("fit_ols: length mismatch (" + std::to_string(xs.size()) + " xs vs " +
                          std::to_string(ys.size()) + " ys)");
    const std::size_t n = xs.size();
    if (n < 2)
        throw DomainError("fit_ols: need at least 2 points, got " + std::to_string(n));

    CompensatedSum sx, sy;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            throw DomainError("fit_ols: non-finite sample at index " + std::to_string(i));
        sx += xs[i];
        sy += ys[i];
    }
    const double xbar = sx.value() / static_cast<double>(n);
    const double ybar = sy.value() / static_cast<double>(n);

    CompensatedSum sxx, sxy, syy;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - xbar;
        const double dy = ys[i] - ybar;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // Exact tests: a rounded mean can leave tiny nonzero deviations.
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    if (*xmin == *xmax || !(sxx.value() > 0.0))
        throw DomainError("fit_ols: degenerate design, xs have zero variance");

    LinearFit fit;
    fit.n = n;
    if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys[0]; })) {
        fit.intercept = ys[0];
        fit.residuals.assign(n, 0.0);
        fit.r2 = 1.0;
        return fit;
    }
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = ybar - fit.slope * xbar;
    fit.residuals.resize(n);
    CompensatedSum rss;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        fit.residuals[i] = e;
        rss += e * e;
    }

    const double tss = syy.value();
    if (rss.value() == 0.0) {
        fit.r2 = 1.0;
    } else if (tss == 0.0) {
        throw DomainError("fit_ols: constant response with nonzero residuals");
    } else {
        fit.r2 = std::clamp(1.0 - rss.value() / tss, 0.0, 1.0);
    }
    return fit;
}

double mse(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size())
        throw DomainError("mse: length mismatch (" + std::to_string(actual.size()) + " vs " +
                          std::to_string(predicted.size()) + ")");
    if (actual.empty())
        throw DomainError("mse: empty input");
    CompensatedSum s;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - predicted[i];
        s += d * d;
    }
    return s.value() / static_cast<double>(actual.size());
}

} // namespace ntl
