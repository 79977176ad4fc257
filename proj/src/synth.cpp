#include "ntl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ntl/error.hpp"

namespace ntl {

namespace {

// std::*_distribution output is implementation-defined; the engine is not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    /// Uniform in (0, 1).
    double uniform() {
        double u = 0.0;
        while (u == 0.0)
            u = static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
        return u;
    }

    double normal() {
        if (m_has_spare) {
            m_has_spare = false;
            return m_spare;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        m_spare = r * std::sin(t);
        m_has_spare = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 m_engine;
    double m_spare = 0.0;
    bool m_has_spare = false;
};

} // namespace

void SceneSpec::validate() const {
    if (ncols == 0 || nrows == 0)
        throw ConfigError("scene dimensions must be positive");
    if (!std::isfinite(background) || !(noise_sigma >= 0.0))
        throw ConfigError("scene background must be finite and noise_sigma >= 0");
    for (const auto& s : sources) {
        if (s.coord.row >= nrows || s.coord.col >= ncols)
            throw DomainError("scene source (" + std::to_string(s.coord.row) + ", " + std::to_string(s.coord.col) +
                              ") out of bounds");
        if (!(s.intensity > background) || !std::isfinite(s.intensity))
            throw ConfigError("scene source intensity must exceed the background");
    }
}

DNGrid gen_scene(const SceneSpec& spec) {
    spec.validate();
    DNGrid grid(spec.ncols, spec.nrows, spec.background);
    for (const auto& s : spec.sources)
        grid.set(s.coord, s.intensity);
    if (spec.noise_sigma > 0.0)
        return add_gaussian_noise(grid, spec.noise_sigma, spec.seed);
    return grid;
}

DNGrid gen_log_uniform_field(std::size_t ncols, std::size_t nrows, double lo, double hi, std::uint64_t seed) {
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
        throw ConfigError("log-uniform field needs 0 < lo <= hi");
    Rng rng(seed);
    const double llo = std::log(lo), lhi = std::log(hi);
    std::vector<double> cells(ncols * nrows);
    for (auto& c : cells)
        c = std::exp(llo + (lhi - llo) * rng.uniform());
    return DNGrid(ncols, nrows, std::move(cells));
}

DNGrid add_gaussian_noise(const DNGrid& grid, double sigma, std::uint64_t seed, const PixelMask* mask) {
    if (mask)
        require_same_shape(grid, *mask, "noise");
    if (!(sigma >= 0.0))
        throw ConfigError("noise sigma must be >= 0");
    Rng rng(seed);
    std::vector<double> out(grid.cells());
    for (std::size_t i = 0; i < grid.nrows(); ++i) {
        for (std::size_t j = 0; j < grid.ncols(); ++j) {
            auto& v = out[i * grid.ncols() + j];
            if (grid.is_nodata(v) || (mask && !mask->at(i, j)))
                continue;
            v += sigma * rng.normal();
        }
    }
    return grid.with_cells(std::move(out));
}

DNGrid forward_bloom(const DNGrid& truth, double a, double b, int radius) {
    const Window window(radius);
    const std::size_t nr = truth.nrows(), nc = truth.ncols();
    const auto r = static_cast<std::size_t>(window.radius());

    PixelMask footprint = PixelMask::like(truth);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            const double v = truth.at(i, j);
            if (truth.is_nodata(v) || v <= 0.0)
                continue;
            for (std::size_t fi = (i > r ? i - r : 0); fi <= std::min(nr - 1, i + r); ++fi)
                for (std::size_t fj = (j > r ? j - r : 0); fj <= std::min(nc - 1, j + r); ++fj)
                    footprint.set(fi, fj, true);
        }
    }

    std::vector<double> out(truth.cells());
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            if (!footprint.at(i, j) || truth.is_nodata(i, j))
                continue;
            // Spatial response computed directly, independent of the deblooming module.
            double feature = 0.0;
            for (std::size_t qi = (i > r ? i - r : 0); qi <= std::min(nr - 1, i + r); ++qi) {
                for (std::size_t qj = (j > r ? j - r : 0); qj <= std::min(nc - 1, j + r); ++qj) {
                    if ((qi == i && qj == j) || truth.is_nodata(qi, qj))
                        continue;
                    const double di = static_cast<double>(qi) - static_cast<double>(i);
                    const double dj = static_cast<double>(qj) - static_cast<double>(j);
                    feature += truth.at(qi, qj) / (di * di + dj * dj);
                }
            }
            out[i * nc + j] = truth.at(i, j) + a * feature + b;
        }
    }
    return truth.with_cells(std::move(out));
}

DNGrid forward_saturate(const DNGrid& radiance, double a, double b, double cap) {
    std::vector<double> out(radiance.cells());
    for (std::size_t k = 0; k < out.size(); ++k) {
        double& v = out[k];
        if (radiance.is_nodata(v))
            continue;
        if (v < 0.0)
            throw DomainError("forward_saturate: negative radiance at (" + std::to_string(k / radiance.ncols()) +
                              ", " + std::to_string(k % radiance.ncols()) + ")");
        v = v == 0.0 ? 0.0 : std::clamp(a * std::log(v) + b, 0.0, cap);
    }
    return radiance.with_cells(std::move(out));
}

DNGrid forward_intercal(const DNGrid& grid, double a, double b) {
    std::vector<double> out(grid.cells());
    for (auto& v : out) {
        if (grid.is_nodata(v))
            continue;
        if (v < 0.0)
            throw DomainError("forward_intercal: negative DN " + std::to_string(v));
        v = a * std::pow(v + 1.0, b) - 1.0;
    }
    return grid.with_cells(std::move(out));
}

} // namespace ntl
