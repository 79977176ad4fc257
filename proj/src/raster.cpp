#include "ntl/raster.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ntl/numeric.hpp"

namespace ntl {

namespace {

void check_cells(const std::vector<double>& cells, double nodata) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] != nodata && !std::isfinite(cells[i]))
            throw DomainError("non-finite cell value at index " + std::to_string(i));
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

bool iequals(const std::string& a, const char* b) {
    std::size_t i = 0;
    for (; i < a.size() && b[i]; ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return i == a.size() && !b[i];
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : m_in(in) {}

    bool next(std::string& line) {
        if (!std::getline(m_in, line))
            return false;
        ++m_line;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        return true;
    }

    std::size_t line() const noexcept { return m_line; }

private:
    std::istream& m_in;
    std::size_t m_line = 0;
};

double header_real(LineReader& r, const char* key) {
    std::string line;
    if (!r.next(line))
        throw ParseError(std::string("unexpected end of input, expected '") + key + "'", r.line() + 1);
    const auto tok = split_ws(line);
    if (tok.size() != 2 || !iequals(tok[0], key))
        throw ParseError(std::string("expected header '") + key + " <value>'", r.line());
    double v = 0.0;
    if (!parse_double(tok[1], v) || !std::isfinite(v))
        throw ParseError(std::string("invalid value for '") + key + "': " + tok[1], r.line());
    return v;
}

std::size_t header_count(LineReader& r, const char* key) {
    const double v = header_real(r, key);
    if (v < 1 || v != std::floor(v) || v > 1e9)
        throw ParseError(std::string("'") + key + "' must be a positive integer", r.line());
    return static_cast<std::size_t>(v);
}

} // namespace

DNGrid::DNGrid(std::size_t ncols, std::size_t nrows, double fill, double nodata, GridGeometry geometry)
    : DNGrid(ncols, nrows, std::vector<double>(ncols * nrows, fill), nodata, geometry) {}

DNGrid::DNGrid(std::size_t ncols, std::size_t nrows, std::vector<double> cells, double nodata,
               GridGeometry geometry)
    : m_ncols(ncols), m_nrows(nrows), m_cells(std::move(cells)), m_nodata(nodata), m_geometry(geometry) {
    if (ncols == 0 || nrows == 0)
        throw DomainError("grid dimensions must be positive");
    if (m_cells.size() != ncols * nrows)
        throw DomainError("grid cell count " + std::to_string(m_cells.size()) + " != ncols*nrows " +
                          std::to_string(ncols * nrows));
    if (!std::isfinite(nodata))
        throw DomainError("nodata sentinel must be finite");
    check_cells(m_cells, m_nodata);
}

void DNGrid::set(std::size_t row, std::size_t col, double v) {
    if (v != m_nodata && !std::isfinite(v))
        throw DomainError("non-finite cell value at (" + std::to_string(row) + ", " + std::to_string(col) + ")");
    m_cells[index(row, col)] = v;
}

DNGrid DNGrid::with_cells(std::vector<double> cells) const {
    return DNGrid(m_ncols, m_nrows, std::move(cells), m_nodata, m_geometry);
}

PixelMask::PixelMask(std::size_t ncols, std::size_t nrows, bool fill)
    : PixelMask(ncols, nrows, std::vector<std::uint8_t>(ncols * nrows, fill ? 1 : 0)) {}

PixelMask::PixelMask(std::size_t ncols, std::size_t nrows, std::vector<std::uint8_t> bits)
    : m_ncols(ncols), m_nrows(nrows), m_bits(std::move(bits)) {
    if (ncols == 0 || nrows == 0)
        throw DomainError("mask dimensions must be positive");
    if (m_bits.size() != ncols * nrows)
        throw DomainError("mask bit count does not match ncols*nrows");
    for (auto& b : m_bits)
        b = b ? 1 : 0;
}

std::size_t PixelMask::count() const noexcept {
    std::size_t n = 0;
    for (auto b : m_bits)
        n += b;
    return n;
}

PixelMask PixelMask::complement() const {
    auto bits = m_bits;
    for (auto& b : bits)
        b = b ? 0 : 1;
    return {m_ncols, m_nrows, std::move(bits)};
}

DNGrid read_grid(std::istream& in) {
    LineReader r(in);
    const std::size_t ncols = header_count(r, "ncols");
    const std::size_t nrows = header_count(r, "nrows");
    GridGeometry geo;
    geo.xllcorner = header_real(r, "xllcorner");
    geo.yllcorner = header_real(r, "yllcorner");
    geo.cellsize = header_real(r, "cellsize");
    const double nodata = header_real(r, "NODATA_value");

    std::vector<double> cells;
    cells.reserve(ncols * nrows);
    std::string line;
    for (std::size_t row = 0; row < nrows; ++row) {
        if (!r.next(line))
            throw ParseError("expected " + std::to_string(nrows) + " data rows, found " + std::to_string(row),
                             r.line() + 1);
        const auto tok = split_ws(line);
        if (tok.size() != ncols)
            throw ParseError("expected " + std::to_string(ncols) + " cell values, found " +
                                 std::to_string(tok.size()),
                             r.line());
        for (const auto& t : tok) {
            double v = 0.0;
            if (!parse_double(t, v))
                throw ParseError("non-numeric cell value '" + t + "'", r.line());
            if (v != nodata && !std::isfinite(v))
                throw ParseError("non-finite cell value '" + t + "'", r.line());
            cells.push_back(v);
        }
    }
    while (r.next(line)) {
        if (!split_ws(line).empty())
            throw ParseError("unexpected data after " + std::to_string(nrows) + " rows", r.line());
    }
    return DNGrid(ncols, nrows, std::move(cells), nodata, geo);
}

DNGrid read_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open grid file '" + path + "'");
    try {
        return read_grid(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_grid(std::ostream& out, const DNGrid& grid) {
    const auto& g = grid.geometry();
    const std::string nodata = format_shortest(grid.nodata());
    out << "ncols " << grid.ncols() << '\n'
        << "nrows " << grid.nrows() << '\n'
        << "xllcorner " << format_shortest(g.xllcorner) << '\n'
        << "yllcorner " << format_shortest(g.yllcorner) << '\n'
        << "cellsize " << format_shortest(g.cellsize) << '\n'
        << "NODATA_value " << nodata << '\n';
    std::string row;
    for (std::size_t i = 0; i < grid.nrows(); ++i) {
        row.clear();
        for (std::size_t j = 0; j < grid.ncols(); ++j) {
            if (j)
                row += ' ';
            const double v = grid.at(i, j);
            row += grid.is_nodata(v) ? nodata : format_fixed(v == 0.0 ? 0.0 : v, 6);
        }
        row += '\n';
        out << row;
    }
}

std::string write_grid(const DNGrid& grid) {
    std::ostringstream os;
    write_grid(os, grid);
    return os.str();
}

PixelMask read_mask(std::istream& in) {
    const DNGrid g = read_grid(in);
    std::vector<std::uint8_t> bits(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = g.cells()[i];
        bits[i] = (!g.is_nodata(v) && v != 0.0) ? 1 : 0;
    }
    return {g.ncols(), g.nrows(), std::move(bits)};
}

PixelMask read_mask_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open mask file '" + path + "'");
    try {
        return read_mask(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_mask(std::ostream& out, const PixelMask& mask) {
    std::vector<double> cells(mask.ncols() * mask.nrows());
    for (std::size_t i = 0; i < mask.nrows(); ++i)
        for (std::size_t j = 0; j < mask.ncols(); ++j)
            cells[i * mask.ncols() + j] = mask.at(i, j) ? 1.0 : 0.0;
    write_grid(out, DNGrid(mask.ncols(), mask.nrows(), std::move(cells)));
}

double sum_of_lights(const DNGrid& grid, const PixelMask* mask) {
    if (mask)
        require_same_shape(grid, *mask, "sum_of_lights");
    CompensatedSum sum;
    for (std::size_t i = 0; i < grid.nrows(); ++i) {
        for (std::size_t j = 0; j < grid.ncols(); ++j) {
            const double v = grid.at(i, j);
            if (grid.is_nodata(v) || (mask && !mask->at(i, j)))
                continue;
            sum += v;
        }
    }
    return sum.value();
}

std::vector<std::pair<double, double>> extract_pairs(const DNGrid& pending, const DNGrid& reference,
                                                     const PixelMask& mask) {
    require_same_shape(pending, reference, "extract_pairs");
    require_same_shape(pending, mask, "extract_pairs");
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < pending.nrows(); ++i) {
        for (std::size_t j = 0; j < pending.ncols(); ++j) {
            if (!mask.at(i, j) || pending.is_nodata(i, j) || reference.is_nodata(i, j))
                continue;
            pairs.emplace_back(pending.at(i, j), reference.at(i, j));
        }
    }
    return pairs;
}

std::vector<Neighbor> window_neighbors(const DNGrid& grid, PixelCoord center, Window window) {
    std::vector<Neighbor> out;
    for_each_neighbor(grid, center, window, [&](PixelCoord p, double v, double d2) {
        out.push_back({p, v, std::sqrt(d2)});
    });
    return out;
}

} // namespace ntl
