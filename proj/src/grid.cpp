#include "inls/grid.hpp"

#include <cmath>

#include "inls/errors.hpp"

namespace inls {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

std::int64_t GridSpec::size() const {
    std::int64_t n = 1;
    for (int d = 0; d < dim; ++d) n *= points;
    return n;
}

std::array<int, 3> GridSpec::unravel(std::int64_t idx) const {
    std::array<int, 3> out{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
        out[d] = static_cast<int>(idx % points);
        idx /= points;
    }
    return out;
}

GridSpec make_grid(int dim, int points, double half_width, bool offset) {
    if (dim < 1 || dim > 3) throw ConfigError("grid dimension must be 1, 2 or 3");
    if (!power_of_two(points) || points < 8)
        throw ConfigError("grid points per axis must be a power of two >= 8");
    if (!(half_width > 0.0)) throw ConfigError("grid half_width must be positive");
    return GridSpec{dim, points, half_width, offset};
}

std::vector<double> radial_distance_field(const GridSpec& grid) {
    std::vector<double> out(grid.size());
    // Precompute per-axis coordinates once.
    std::vector<double> c(grid.points);
    for (int j = 0; j < grid.points; ++j) c[j] = grid.coord(j);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        auto ix = grid.unravel(i);
        double s = 0.0;
        for (int d = 0; d < grid.dim; ++d) s += c[ix[d]] * c[ix[d]];
        out[i] = std::sqrt(s);
    }
    return out;
}

std::vector<double> coordinate_field(const GridSpec& grid, int axis) {
    if (axis < 0 || axis >= grid.dim) throw ParameterError("coordinate axis out of range");
    std::vector<double> out(grid.size());
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        out[i] = grid.coord(grid.unravel(i)[axis]);
    }
    return out;
}

double integrate(std::span<const double> values, const GridSpec& grid) {
    if (static_cast<std::int64_t>(values.size()) != grid.size())
        throw ParameterError("integrate: array length does not match grid");
    double cell = 1.0;
    for (int d = 0; d < grid.dim; ++d) cell *= grid.spacing();
    double s = 0.0;
    for (double v : values) s += v;
    return s * cell;
}

double mass(const ComplexField& u) {
    double cell = 1.0;
    for (int d = 0; d < u.grid.dim; ++d) cell *= u.grid.spacing();
    double s = 0.0;
    for (const Complex& v : u.values) s += std::norm(v);
    return s * cell;
}

bool all_finite(const ComplexField& u) {
    for (const Complex& v : u.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

}  // namespace inls
