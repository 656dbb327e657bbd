#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace inls {

using Complex = std::complex<double>;

// Periodic Cartesian grid on [-L, L)^dim with M points per axis.
// With the half-cell offset enabled no node sits at x = 0, so singular
// weights |x|^-b are finite at every node.
struct GridSpec {
    int dim = 3;           // spatial dimension, 1..3
    int points = 64;       // nodes per axis, power of two
    double half_width = 12.0;
    bool offset = true;    // shift nodes by h/2

    double spacing() const { return 2.0 * half_width / points; }
    std::int64_t size() const;

    // Node coordinate along one axis, j in [0, points).
    double coord(int j) const {
        return -half_width + (j + (offset ? 0.5 : 0.0)) * spacing();
    }
    // Wavenumber in standard periodic FFT ordering, spacing pi/L.
    double wavenumber(int j) const {
        const int m = (j < points / 2) ? j : j - points;
        return m * 3.14159265358979323846 / half_width;
    }

    // Decompose a row-major flat index into per-axis indices.
    std::array<int, 3> unravel(std::int64_t idx) const;

    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int dim, int points, double half_width, bool offset);

// Complex-valued state u on a grid, row-major axis order.
struct ComplexField {
    GridSpec grid;
    std::vector<Complex> values;

    ComplexField() = default;
    explicit ComplexField(const GridSpec& g) : grid(g), values(g.size()) {}
    ComplexField(const GridSpec& g, std::vector<Complex> v)
        : grid(g), values(std::move(v)) {}
};

// |x| at every node.
std::vector<double> radial_distance_field(const GridSpec& grid);

// Per-axis coordinate field x_axis at every node.
std::vector<double> coordinate_field(const GridSpec& grid, int axis);

// Riemann sum times the cell volume h^dim.
double integrate(std::span<const double> values, const GridSpec& grid);

double mass(const ComplexField& u);

bool all_finite(const ComplexField& u);

}  // namespace inls
