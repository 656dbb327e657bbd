#include <doctest.h>

#include <cmath>
#include <random>

#include "inls/errors.hpp"
#include "inls/grid.hpp"
#include "inls/spectral.hpp"

using namespace inls;

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexField random_field(const GridSpec& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexField u(g);
    for (auto& v : u.values) v = Complex(gauss(rng), gauss(rng));
    return u;
}

}  // namespace

TEST_CASE("make_grid validates its arguments") {
    CHECK_NOTHROW(make_grid(3, 64, 12.0, true));
    CHECK_THROWS_AS(make_grid(0, 64, 12.0, true), ConfigError);
    CHECK_THROWS_AS(make_grid(4, 64, 12.0, true), ConfigError);
    CHECK_THROWS_AS(make_grid(3, 48, 12.0, true), ConfigError);  // not a power of two
    CHECK_THROWS_AS(make_grid(3, 4, 12.0, true), ConfigError);   // too small
    CHECK_THROWS_AS(make_grid(3, 64, -1.0, true), ConfigError);
}

TEST_CASE("offset grid has no node at the origin") {
    const GridSpec g = make_grid(3, 64, 12.0, true);
    const auto r = radial_distance_field(g);
    double rmin = r[0];
    for (double v : r) rmin = std::min(rmin, v);
    // nearest node sits at half a cell along each axis: sqrt(3) h / 2
    const double expected = std::sqrt(3.0) * 0.5 * g.spacing();
    CHECK(rmin == doctest::Approx(expected).epsilon(1e-14));
    CHECK(rmin > 0.0);
}

TEST_CASE("grid coordinates tile [-L, L)") {
    const GridSpec g = make_grid(1, 8, 4.0, false);
    CHECK(g.spacing() == doctest::Approx(1.0));
    CHECK(g.coord(0) == doctest::Approx(-4.0));
    CHECK(g.coord(7) == doctest::Approx(3.0));
    const GridSpec go = make_grid(1, 8, 4.0, true);
    CHECK(go.coord(0) == doctest::Approx(-3.5));
    CHECK(go.coord(7) == doctest::Approx(3.5));
}

TEST_CASE("wavenumbers follow standard FFT ordering with spacing pi/L") {
    const GridSpec g = make_grid(1, 8, 4.0, true);
    CHECK(g.wavenumber(0) == doctest::Approx(0.0));
    CHECK(g.wavenumber(1) == doctest::Approx(kPi / 4.0));
    CHECK(g.wavenumber(4) == doctest::Approx(-kPi));  // Nyquist
    CHECK(g.wavenumber(7) == doctest::Approx(-kPi / 4.0));
}

TEST_CASE("unravel is the row-major inverse") {
    const GridSpec g = make_grid(3, 8, 4.0, true);
    const auto ix = g.unravel(5 * 64 + 3 * 8 + 7);
    CHECK(ix[0] == 5);
    CHECK(ix[1] == 3);
    CHECK(ix[2] == 7);
}

TEST_CASE("3d Gaussian integral matches pi^{3/2}") {
    const GridSpec g = make_grid(3, 64, 12.0, true);
    const auto r = radial_distance_field(g);
    std::vector<double> f(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i) f[i] = std::exp(-r[i] * r[i]);
    const double exact = std::pow(kPi, 1.5);
    CHECK(integrate(f, g) == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("mass of a constant field is the box volume") {
    const GridSpec g = make_grid(2, 32, 5.0, true);
    ComplexField u(g);
    for (auto& v : u.values) v = Complex(0.0, 1.0);
    CHECK(mass(u) == doctest::Approx(100.0).epsilon(1e-13));
}

TEST_CASE("fft roundtrip is the identity") {
    const GridSpec g = make_grid(3, 16, 3.0, true);
    const ComplexField u = random_field(g, 7);
    ComplexField v = fft_inverse(fft_forward(u));
    double err = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i)
        err = std::max(err, std::abs(u.values[i] - v.values[i]));
    CHECK(err < 1e-12);
}

TEST_CASE("Parseval kinetic integral matches the gradient-field quadrature") {
    const GridSpec g = make_grid(3, 32, 6.0, true);
    // band-limit a random field so the gradient is well resolved
    ComplexField uk = random_field(g, 11);
    const auto k2 = wavenumber_squared_field(g);
    double kmax2 = 0.0;
    for (double v : k2) kmax2 = std::max(kmax2, v);
    for (std::int64_t i = 0; i < g.size(); ++i)
        if (k2[i] > 0.25 * kmax2) uk.values[i] = 0.0;
    const ComplexField u = fft_inverse(uk);

    // independent path: materialize the gradient and integrate |grad u|^2
    const auto grads = gradient(u);
    std::vector<double> f(g.size(), 0.0);
    for (int d = 0; d < g.dim; ++d)
        for (std::int64_t i = 0; i < g.size(); ++i) f[i] += std::norm(grads[d].values[i]);
    const double direct = integrate(f, g);
    CHECK(kinetic_energy_integral(u) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(grad_norm_l2(u) == doctest::Approx(std::sqrt(direct)).epsilon(1e-12));
}

TEST_CASE("spectral gradient is exact on a Fourier mode") {
    const GridSpec g = make_grid(2, 32, 4.0, true);
    const double k0 = 2.0 * kPi / (2.0 * g.half_width) * 3.0;  // third harmonic
    const auto x = coordinate_field(g, 0);
    ComplexField u(g);
    for (std::int64_t i = 0; i < g.size(); ++i) u.values[i] = std::sin(k0 * x[i]);
    const auto grads = gradient(u);
    double err0 = 0.0, err1 = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        err0 = std::max(err0, std::abs(grads[0].values[i] - k0 * std::cos(k0 * x[i])));
        err1 = std::max(err1, std::abs(grads[1].values[i]));
    }
    CHECK(err0 < 1e-11);
    CHECK(err1 < 1e-11);
}

TEST_CASE("integrate rejects mismatched array lengths") {
    const GridSpec g = make_grid(1, 8, 1.0, true);
    std::vector<double> f(7, 1.0);
    CHECK_THROWS_AS(integrate(f, g), ParameterError);
}

TEST_CASE("all_finite detects contamination") {
    const GridSpec g = make_grid(1, 8, 1.0, true);
    ComplexField u(g);
    CHECK(all_finite(u));
    u.values[3] = Complex(std::nan(""), 0.0);
    CHECK_FALSE(all_finite(u));
}
