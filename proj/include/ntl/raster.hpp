#ifndef NTL_RASTER_HPP
#define NTL_RASTER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ntl/error.hpp"

namespace ntl {

/// 0-based raster position.
struct PixelCoord {
    std::size_t row = 0;
    std::size_t col = 0;

    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Square moving window of Chebyshev radius `radius` (pixels).
class Window {
public:
    explicit Window(int radius) : m_radius(radius) {
        if (radius < 1)
            throw ConfigError("window radius must be >= 1, got " + std::to_string(radius));
    }

    int radius() const noexcept { return m_radius; }

private:
    int m_radius;
};

/// Georeferencing fields carried through I/O but never interpreted.
struct GridGeometry {
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 1.0;

    friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

/**
 * Rectangular raster of real digital numbers, stored row-major.
 *
 * A cell is nodata when it compares exactly equal to the nodata sentinel.
 * Every other cell is finite.
 */
class DNGrid {
public:
    static constexpr double kDefaultNodata = -9999.0;

    DNGrid(std::size_t ncols, std::size_t nrows, double fill = 0.0,
           double nodata = kDefaultNodata, GridGeometry geometry = {});
    DNGrid(std::size_t ncols, std::size_t nrows, std::vector<double> cells,
           double nodata = kDefaultNodata, GridGeometry geometry = {});

    std::size_t ncols() const noexcept { return m_ncols; }
    std::size_t nrows() const noexcept { return m_nrows; }
    std::size_t size() const noexcept { return m_cells.size(); }
    double nodata() const noexcept { return m_nodata; }
    const GridGeometry& geometry() const noexcept { return m_geometry; }

    double at(std::size_t row, std::size_t col) const { return m_cells[index(row, col)]; }
    double at(PixelCoord p) const { return at(p.row, p.col); }
    void set(std::size_t row, std::size_t col, double v);
    void set(PixelCoord p, double v) { set(p.row, p.col, v); }

    bool is_nodata(double v) const noexcept { return v == m_nodata; }
    bool is_nodata(std::size_t row, std::size_t col) const { return is_nodata(at(row, col)); }

    bool contains(PixelCoord p) const noexcept { return p.row < m_nrows && p.col < m_ncols; }

    const std::vector<double>& cells() const noexcept { return m_cells; }

    /// Copy with identical shape, nodata and geometry but new cell values.
    DNGrid with_cells(std::vector<double> cells) const;

    friend bool operator==(const DNGrid&, const DNGrid&) = default;

private:
    std::size_t index(std::size_t row, std::size_t col) const noexcept { return row * m_ncols + col; }

    std::size_t m_ncols;
    std::size_t m_nrows;
    std::vector<double> m_cells;
    double m_nodata;
    GridGeometry m_geometry;
};

/// Boolean raster aligned to a DNGrid.
class PixelMask {
public:
    PixelMask(std::size_t ncols, std::size_t nrows, bool fill = false);
    PixelMask(std::size_t ncols, std::size_t nrows, std::vector<std::uint8_t> bits);

    static PixelMask like(const DNGrid& g, bool fill = false) { return {g.ncols(), g.nrows(), fill}; }

    std::size_t ncols() const noexcept { return m_ncols; }
    std::size_t nrows() const noexcept { return m_nrows; }

    bool at(std::size_t row, std::size_t col) const { return m_bits[row * m_ncols + col] != 0; }
    bool at(PixelCoord p) const { return at(p.row, p.col); }
    void set(std::size_t row, std::size_t col, bool v) { m_bits[row * m_ncols + col] = v ? 1 : 0; }
    void set(PixelCoord p, bool v) { set(p.row, p.col, v); }

    std::size_t count() const noexcept;
    bool any() const noexcept { return count() > 0; }

    PixelMask complement() const;

    friend bool operator==(const PixelMask&, const PixelMask&) = default;

private:
    std::size_t m_ncols;
    std::size_t m_nrows;
    std::vector<std::uint8_t> m_bits;
};

/// Throws DomainError naming `what` unless the two rasters share dimensions.
template <class A, class B>
void require_same_shape(const A& a, const B& b, const char* what) {
    if (a.ncols() != b.ncols() || a.nrows() != b.nrows())
        throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a.ncols()) + "x" +
                          std::to_string(a.nrows()) + " vs " + std::to_string(b.ncols()) + "x" +
                          std::to_string(b.nrows()) + ")");
}

// ASCII grid I/O -------------------------------------------------------------

DNGrid read_grid(std::istream& in);
DNGrid read_grid_file(const std::string& path);

void write_grid(std::ostream& out, const DNGrid& grid);
std::string write_grid(const DNGrid& grid);

/// Masks share the grid format; nonzero non-nodata cells are true.
PixelMask read_mask(std::istream& in);
PixelMask read_mask_file(const std::string& path);
void write_mask(std::ostream& out, const PixelMask& mask);

// Statistics and neighborhoods -----------------------------------------------

/// Sum of non-nodata cells, restricted to mask-true cells when a mask is given.
/// Row-major compensated summation.
double sum_of_lights(const DNGrid& grid, const PixelMask* mask = nullptr);
inline double sum_of_lights(const DNGrid& grid, const PixelMask& mask) { return sum_of_lights(grid, &mask); }

/// (pending, reference) values for every mask-true cell that is valid in both grids.
std::vector<std::pair<double, double>> extract_pairs(const DNGrid& pending, const DNGrid& reference,
                                                     const PixelMask& mask);

struct Neighbor {
    PixelCoord coord;
    double value;
    double distance;
};

/**
 * Visits every in-window cell other than the center that is not nodata, in
 * row-major order, as fn(coord, value, squared_distance). The window is
 * truncated at the grid border.
 */
template <class Fn>
void for_each_neighbor(const DNGrid& grid, PixelCoord center, Window window, Fn&& fn) {
    if (!grid.contains(center))
        throw DomainError("window center (" + std::to_string(center.row) + ", " + std::to_string(center.col) +
                          ") outside grid");
    const auto r = static_cast<std::ptrdiff_t>(window.radius());
    const auto cr = static_cast<std::ptrdiff_t>(center.row);
    const auto cc = static_cast<std::ptrdiff_t>(center.col);
    const auto nr = static_cast<std::ptrdiff_t>(grid.nrows());
    const auto nc = static_cast<std::ptrdiff_t>(grid.ncols());
    const std::ptrdiff_t r0 = std::max<std::ptrdiff_t>(0, cr - r), r1 = std::min(nr - 1, cr + r);
    const std::ptrdiff_t c0 = std::max<std::ptrdiff_t>(0, cc - r), c1 = std::min(nc - 1, cc + r);
    for (std::ptrdiff_t i = r0; i <= r1; ++i) {
        for (std::ptrdiff_t j = c0; j <= c1; ++j) {
            if (i == cr && j == cc)
                continue;
            const double v = grid.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (grid.is_nodata(v))
                continue;
            const auto di = i - cr, dj = j - cc;
            fn(PixelCoord{static_cast<std::size_t>(i), static_cast<std::size_t>(j)}, v,
               static_cast<double>(di * di + dj * dj));
        }
    }
}

/// In-window neighbors with their Euclidean distance from the center.
std::vector<Neighbor> window_neighbors(const DNGrid& grid, PixelCoord center, Window window);

} // namespace ntl

#endif
