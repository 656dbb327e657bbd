#include <doctest.h>

#include <cmath>

#include "inls/errors.hpp"
#include "inls/grid.hpp"
#include "inls/propagator.hpp"

using namespace inls;

namespace {

ComplexField gaussian(const GridSpec& g, double amplitude, double width) {
    ComplexField u(g);
    const auto r = radial_distance_field(g);
    for (std::int64_t i = 0; i < g.size(); ++i)
        u.values[i] = amplitude * std::exp(-r[i] * r[i] / (2.0 * width * width));
    return u;
}

// e^{it Delta} applied to A exp(-|x|^2/(2 w^2))
ComplexField gaussian_flow(const GridSpec& g, double amplitude, double width, double t) {
    ComplexField u(g);
    const auto r = radial_distance_field(g);
    const Complex denom(width * width, 2.0 * t);
    const Complex front =
        amplitude * std::pow(Complex(width * width, 0.0) / denom, 0.5 * g.dim);
    for (std::int64_t i = 0; i < g.size(); ++i)
        u.values[i] = front * std::exp(-r[i] * r[i] / (2.0 * denom));
    return u;
}

double sup_diff(const ComplexField& a, const ComplexField& b) {
    double s = 0.0;
    for (std::int64_t i = 0; i < a.grid.size(); ++i)
        s = std::max(s, std::abs(a.values[i] - b.values[i]));
    return s;
}

}  // namespace

TEST_CASE("free flow matches the closed-form Gaussian in 1d") {
    const GridSpec g = make_grid(1, 256, 16.0, true);
    const ComplexField u0 = gaussian(g, 1.0, 1.0);
    CHECK(sup_diff(free_evolve(u0, 0.7), gaussian_flow(g, 1.0, 1.0, 0.7)) < 1e-10);
}

TEST_CASE("free flow matches the closed-form Gaussian in 3d") {
    const GridSpec g = make_grid(3, 64, 10.0, true);
    const ComplexField u0 = gaussian(g, 1.0, 1.2);
    CHECK(sup_diff(free_evolve(u0, 0.5), gaussian_flow(g, 1.0, 1.2, 0.5)) < 1e-9);
}

TEST_CASE("free flow obeys the group law and conserves mass") {
    const GridSpec g = make_grid(2, 64, 8.0, true);
    const ComplexField u0 = gaussian(g, 0.8, 1.0);
    const ComplexField two_steps = free_evolve(free_evolve(u0, 0.3), 0.45);
    const ComplexField one_step = free_evolve(u0, 0.75);
    CHECK(sup_diff(two_steps, one_step) < 1e-13);
    CHECK(mass(one_step) == doctest::Approx(mass(u0)).epsilon(1e-13));
}

TEST_CASE("free flow at t=0 is the identity") {
    const GridSpec g = make_grid(1, 64, 8.0, true);
    const ComplexField u0 = gaussian(g, 1.0, 1.0);
    CHECK(sup_diff(free_evolve(u0, 0.0), u0) < 1e-14);
}

TEST_CASE("boundary shell mass fraction separates centered from edge bumps") {
    const GridSpec g = make_grid(1, 128, 10.0, true);
    CHECK(boundary_shell_mass_fraction(gaussian(g, 1.0, 0.5)) < 1e-12);

    ComplexField edge(g);
    for (int j = 0; j < g.points; ++j) {
        const double x = g.coord(j);
        edge.values[j] = std::exp(-(x - 9.8) * (x - 9.8) * 50.0);
    }
    CHECK(boundary_shell_mass_fraction(edge) > 0.9);
}

TEST_CASE("1d dispersive decay exponent is -1/2") {
    const GridSpec g = make_grid(1, 1024, 64.0, true);
    const ComplexField u0 = gaussian(g, 1.0, 1.0);
    const std::vector<double> times = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    const auto fit = dispersive_decay_fit(u0, times);
    CHECK(std::abs(fit.slope + 0.5) < 0.05);
    CHECK(fit.sup_norms.size() == times.size());
    // sup norms decrease monotonically over the fit window
    for (std::size_t i = 1; i < fit.sup_norms.size(); ++i)
        CHECK(fit.sup_norms[i] < fit.sup_norms[i - 1]);
}

TEST_CASE("decay fit throws once the wraparound horizon is exceeded") {
    const GridSpec g = make_grid(1, 128, 6.0, true);  // small box
    const ComplexField u0 = gaussian(g, 1.0, 1.0);
    const std::vector<double> times = {1.0, 5.0, 25.0};
    CHECK_THROWS_AS(dispersive_decay_fit(u0, times), HorizonError);
}

TEST_CASE("decay fit validates its time lattice") {
    const GridSpec g = make_grid(1, 128, 6.0, true);
    const ComplexField u0 = gaussian(g, 1.0, 1.0);
    CHECK_THROWS_AS(dispersive_decay_fit(u0, std::vector<double>{1.0}), ParameterError);
    CHECK_THROWS_AS(dispersive_decay_fit(u0, std::vector<double>{2.0, 1.0}),
                    ParameterError);
    CHECK_THROWS_AS(dispersive_decay_fit(u0, std::vector<double>{0.0, 1.0}),
                    ParameterError);
}
