#include <doctest.h>

#include <cmath>
#include <functional>

#include "inls/errors.hpp"
#include "inls/ground_state.hpp"
#include "inls/model.hpp"

using namespace inls;

namespace {

// Independent oracle: adaptive Runge-Kutta-Fehlberg 4(5) integration of the
// radial equation, with its own step control. Returns the outcome of a shot
// from Q(0) = q0 (zero crossing, upturn, or decay past r_max).
ShotOutcome rkf45_outcome(const ModelParams& mp, double q0, double r_max) {
    const double N = mp.dim;
    auto rhs = [&](double r, double q, double p, double& dq, double& dp) {
        dq = p;
        dp = -(N - 1) / r * p + q - std::pow(r, -mp.b) * std::pow(std::abs(q), mp.p - 1.0) * q;
    };

    // series start as in the solver, but the integration path is independent
    double r = 1e-6;
    double q = q0 + q0 * r * r / (2.0 * N) -
               std::pow(q0, mp.p) * std::pow(r, 2.0 - mp.b) / ((2.0 - mp.b) * (N - mp.b));
    double p = q0 * r / N - std::pow(q0, mp.p) * std::pow(r, 1.0 - mp.b) / (N - mp.b);

    double h = 1e-7;
    const double tol = 1e-12;
    while (r < r_max) {
        h = std::min(h, r_max - r);
        // classic Fehlberg tableau
        double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p, k5q, k5p, k6q, k6p;
        rhs(r, q, p, k1q, k1p);
        rhs(r + h / 4, q + h / 4 * k1q, p + h / 4 * k1p, k2q, k2p);
        rhs(r + 3 * h / 8, q + h * (3.0 / 32 * k1q + 9.0 / 32 * k2q),
            p + h * (3.0 / 32 * k1p + 9.0 / 32 * k2p), k3q, k3p);
        rhs(r + 12 * h / 13,
            q + h * (1932.0 / 2197 * k1q - 7200.0 / 2197 * k2q + 7296.0 / 2197 * k3q),
            p + h * (1932.0 / 2197 * k1p - 7200.0 / 2197 * k2p + 7296.0 / 2197 * k3p),
            k4q, k4p);
        rhs(r + h,
            q + h * (439.0 / 216 * k1q - 8.0 * k2q + 3680.0 / 513 * k3q -
                     845.0 / 4104 * k4q),
            p + h * (439.0 / 216 * k1p - 8.0 * k2p + 3680.0 / 513 * k3p -
                     845.0 / 4104 * k4p),
            k5q, k5p);
        rhs(r + h / 2,
            q + h * (-8.0 / 27 * k1q + 2.0 * k2q - 3544.0 / 2565 * k3q +
                     1859.0 / 4104 * k4q - 11.0 / 40 * k5q),
            p + h * (-8.0 / 27 * k1p + 2.0 * k2p - 3544.0 / 2565 * k3p +
                     1859.0 / 4104 * k4p - 11.0 / 40 * k5p),
            k6q, k6p);

        const double q4 = q + h * (25.0 / 216 * k1q + 1408.0 / 2565 * k3q +
                                   2197.0 / 4104 * k4q - k5q / 5);
        const double p4 = p + h * (25.0 / 216 * k1p + 1408.0 / 2565 * k3p +
                                   2197.0 / 4104 * k4p - k5p / 5);
        const double q5 = q + h * (16.0 / 135 * k1q + 6656.0 / 12825 * k3q +
                                   28561.0 / 56430 * k4q - 9.0 / 50 * k5q +
                                   2.0 / 55 * k6q);
        const double p5 = p + h * (16.0 / 135 * k1p + 6656.0 / 12825 * k3p +
                                   28561.0 / 56430 * k4p - 9.0 / 50 * k5p +
                                   2.0 / 55 * k6p);
        const double err = std::max(std::abs(q5 - q4), std::abs(p5 - p4));
        if (err > tol && h > 1e-10) {
            h *= 0.5;
            continue;
        }
        r += h;
        q = q5;
        p = p5;
        if (err < tol / 32) h *= 2.0;
        h = std::min(h, 0.1 * r + 1e-8);

        if (q < 0.0) return ShotOutcome::crossed_zero;
        if (p > 0.0) return ShotOutcome::turned_up;
    }
    return ShotOutcome::decayed;
}

ModelParams paper_params() { return ModelParams{}; }

ModelParams line_params(double p) {
    ModelParams mp;
    mp.dim = 1;
    mp.p = p;
    mp.b = 0.0;
    mp.paper_regime = false;
    return mp;
}

}  // namespace

TEST_CASE("critical index arithmetic") {
    CHECK(critical_index(paper_params()) == doctest::Approx(0.5));
    ModelParams mp;
    mp.dim = 3;
    mp.p = 3.0;
    mp.b = 0.1;
    CHECK(critical_index(mp) == doctest::Approx(1.5 - 1.9 / 2.0));  // 0.55
    mp.dim = 2;
    mp.p = 3.0;
    mp.b = 0.0;
    mp.paper_regime = false;
    CHECK(critical_index(mp) == doctest::Approx(0.0));  // mass-critical
    mp.p = 1.0;
    CHECK_THROWS_AS(critical_index(mp), ParameterError);
}

TEST_CASE("paper regime gate") {
    CHECK_NOTHROW(validate_params(paper_params()));
    ModelParams bad = paper_params();
    bad.b = 2.5;
    CHECK_THROWS_AS(validate_params(bad), ConfigError);
    bad = paper_params();
    bad.dim = 2;
    CHECK_THROWS_AS(validate_params(bad), ConfigError);
    bad = paper_params();
    bad.p = 1.5;  // below 1 + (4-2b)/N = 2
    CHECK_THROWS_AS(validate_params(bad), ConfigError);
    bad.paper_regime = false;  // same parameters allowed outside the regime
    CHECK_NOTHROW(validate_params(bad));
}

TEST_CASE("1d cubic ground state is sqrt(2) sech(x)") {
    const auto prof = solve_ground_state(line_params(3.0), 1e-8);
    CHECK(prof.q0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    double sup = 0.0;
    for (std::size_t i = 0; i < prof.r.size(); ++i)
        sup = std::max(sup, std::abs(prof.q[i] - std::sqrt(2.0) / std::cosh(prof.r[i])));
    CHECK(sup < 1e-8);
    // closed-form norms: int Q^2 = 4, int Q'^2 = 4/3, int Q^4 = 16/3
    CHECK(prof.mass_norm == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(prof.kinetic_norm == doctest::Approx(4.0 / 3.0).epsilon(1e-7));
    CHECK(prof.potential_norm == doctest::Approx(16.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("1d ground-state family ((p+1)/2)^{1/(p-1)} sech^{2/(p-1)}((p-1)x/2)") {
    for (double p : {2.0, 4.0}) {
        const auto prof = solve_ground_state(line_params(p), 1e-7);
        const double amp = std::pow(0.5 * (p + 1.0), 1.0 / (p - 1.0));
        double sup = 0.0;
        for (std::size_t i = 0; i < prof.r.size(); ++i) {
            const double exact =
                amp * std::pow(1.0 / std::cosh(0.5 * (p - 1.0) * prof.r[i]),
                               2.0 / (p - 1.0));
            sup = std::max(sup, std::abs(prof.q[i] - exact));
        }
        CAPTURE(p);
        CHECK(sup < 1e-7);
    }
}

TEST_CASE("paper-regime ground state agrees with an independent RKF45 shooter") {
    const auto mp = paper_params();
    const auto prof = solve_ground_state(mp, 1e-8);
    // the solver's Q(0) must sit on the oracle's separatrix: slightly below
    // turns up, slightly above crosses zero
    CHECK(rkf45_outcome(mp, prof.q0 * (1.0 - 1e-6), 30.0) == ShotOutcome::turned_up);
    CHECK(rkf45_outcome(mp, prof.q0 * (1.0 + 1e-6), 30.0) == ShotOutcome::crossed_zero);
}

TEST_CASE("Pohozaev-type identity holds on converged profiles") {
    CHECK(pohozaev_residual(solve_ground_state(line_params(3.0), 1e-8)) < 1e-8);
    CHECK(pohozaev_residual(solve_ground_state(paper_params(), 1e-8)) < 1e-8);
}

TEST_CASE("shooting value is sensitive at the 1e-3 level") {
    const auto mp = paper_params();
    const auto prof = solve_ground_state(mp, 1e-8);
    CHECK(shoot_outcome(mp, prof.q0 * 0.999) == ShotOutcome::turned_up);
    CHECK(shoot_outcome(mp, prof.q0 * 1.001) == ShotOutcome::crossed_zero);
}

TEST_CASE("bisection trace is monotone in Q(0)") {
    const auto mp = paper_params();
    const auto prof = solve_ground_state(mp, 1e-8);
    // outcomes flip exactly once across the separatrix
    for (double f : {0.5, 0.8, 0.95}) {
        CHECK(shoot_outcome(mp, prof.q0 * f) == ShotOutcome::turned_up);
    }
    for (double f : {1.05, 1.3, 2.0}) {
        CHECK(shoot_outcome(mp, prof.q0 * f) == ShotOutcome::crossed_zero);
    }
}

TEST_CASE("threshold arithmetic for s_c = 1/2") {
    GroundStateProfile prof;
    prof.params = paper_params();
    prof.mass_norm = 4.0;
    prof.kinetic_norm = 9.0;
    prof.potential_norm = 13.0;  // Pohozaev: kinetic + mass
    const auto th = thresholds(prof);
    // (1 - s_c)/s_c = 1: ME = M * E, MK = ||Q||_2 ||grad Q||_2
    CHECK(th.s_c == doctest::Approx(0.5));
    const double energy = 0.5 * 9.0 - 13.0 / 3.5;
    CHECK(th.me == doctest::Approx(4.0 * energy).epsilon(1e-14));
    CHECK(th.mk == doctest::Approx(2.0 * 3.0).epsilon(1e-14));
}

TEST_CASE("thresholds reject non-intercritical parameters") {
    GroundStateProfile prof;
    prof.params = line_params(3.0);  // s_c = -1/2
    prof.mass_norm = 1.0;
    prof.kinetic_norm = 1.0;
    CHECK_THROWS_AS(thresholds(prof), ParameterError);
}

TEST_CASE("classification of c Q against grid-based thresholds") {
    const auto mp = paper_params();
    const auto prof = solve_ground_state(mp, 1e-8);
    const GridSpec g = make_grid(3, 64, 12.0, true);
    const auto pot = make_potential_weight(g, mp.b);

    // build thresholds from the same grid functionals so quadrature bias
    // cancels and the boundary case is exactly on the boundary
    const auto fq = data_functionals(sample_on_grid(prof, g, 1.0), pot, mp);
    Thresholds th;
    th.s_c = 0.5;
    th.me = fq.me;
    th.mk = fq.mk;

    const auto f_below = data_functionals(sample_on_grid(prof, g, 0.9), pot, mp);
    CHECK(classify_data(f_below, th) == DataClass::below_threshold);
    const auto f_above = data_functionals(sample_on_grid(prof, g, 1.2), pot, mp);
    CHECK(classify_data(f_above, th) == DataClass::above_threshold);
    CHECK(classify_data(fq, th) == DataClass::at_boundary);
}

TEST_CASE("profile interpolation hits nodes and decays in the tail") {
    const auto prof = solve_ground_state(line_params(3.0), 1e-8);
    CHECK(prof.value(0.0) == doctest::Approx(prof.q0));
    const std::size_t mid = prof.r.size() / 2;
    CHECK(prof.value(prof.r[mid]) == doctest::Approx(prof.q[mid]).epsilon(1e-12));
    const double far = prof.r.back() + 3.0;
    CHECK(prof.value(far) > 0.0);
    CHECK(prof.value(far) < prof.q.back());
}

TEST_CASE("solver rejects bad arguments") {
    CHECK_THROWS_AS(solve_ground_state(paper_params(), -1.0), ParameterError);
    ModelParams bad = paper_params();
    bad.b = 2.5;
    CHECK_THROWS_AS(solve_ground_state(bad, 1e-8), ConfigError);
}
