#include "inls/verify.hpp"

#include <algorithm>
#include <cmath>

#include "inls/diagnostics.hpp"
#include "inls/errors.hpp"
#include "inls/propagator.hpp"
#include "inls/spectral.hpp"
#include "inls/virial.hpp"

namespace inls {

namespace {

constexpr double kPi = 3.14159265358979323846;

CheckResult make_check(const std::string& name, bool pass, double measured,
                       const std::string& detail) {
    return CheckResult{name, pass, measured, detail};
}

// relative L^2 distance on a common grid
double rel_l2(const ComplexField& u, const ComplexField& v) {
    double num = 0.0, den = 0.0;
    for (std::int64_t i = 0; i < u.grid.size(); ++i) {
        num += std::norm(u.values[i] - v.values[i]);
        den += std::norm(v.values[i]);
    }
    return std::sqrt(num / den);
}

double max_mass_drift(const TrajectoryLog& log) {
    const double m0 = log.records.front().mass;
    double drift = 0.0;
    for (const auto& r : log.records) drift = std::max(drift, std::abs(r.mass - m0) / m0);
    return drift;
}

double max_energy_drift(const TrajectoryLog& log) {
    const double e0 = log.records.front().energy;
    double drift = 0.0;
    for (const auto& r : log.records)
        drift = std::max(drift, std::abs(r.energy - e0) / std::abs(e0));
    return drift;
}

// The virial identity is a whole-space statement: once a measurable mass
// fraction has wrapped around the torus and crossed the weight seam, the
// defect acquires a dt-independent wraparound term and the dt^2 convergence
// is unobservable. The defect maximum is therefore taken over the trusted
// window where the boundary shell holds less than this mass fraction (the
// stencil records must all qualify).
constexpr double kVirialWindowTol = 1e-4;

// max over interior logged times of |centered-difference dZ/dt - virial rhs|
double max_virial_defect(const TrajectoryLog& log) {
    double defect = 0.0;
    for (std::size_t i = 1; i + 1 < log.records.size(); ++i) {
        if (log.records[i - 1].boundary_mass > kVirialWindowTol ||
            log.records[i].boundary_mass > kVirialWindowTol ||
            log.records[i + 1].boundary_mass > kVirialWindowTol)
            continue;
        const double fd = (log.records[i + 1].z - log.records[i - 1].z) /
                          (log.times[i + 1] - log.times[i - 1]);
        defect = std::max(defect, std::abs(fd - log.records[i].dzdt_rhs));
    }
    return defect;
}

ComplexField centered_gaussian(const GridSpec& g, double amplitude, double width) {
    ComplexField u(g);
    const auto r = radial_distance_field(g);
    const double w2 = width * width;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        u.values[i] = amplitude * std::exp(-r[i] * r[i] / (2.0 * w2));
    }
    return u;
}

// closed-form free evolution of A exp(-|x|^2 / (2 w^2))
ComplexField gaussian_free_flow(const GridSpec& g, double amplitude, double width,
                                double t) {
    ComplexField u(g);
    const auto r = radial_distance_field(g);
    const Complex denom(width * width, 2.0 * t);
    const Complex front =
        amplitude * std::pow(Complex(width * width, 0.0) / denom, 0.5 * g.dim);
    for (std::int64_t i = 0; i < g.size(); ++i) {
        u.values[i] = front * std::exp(-r[i] * r[i] / (2.0 * denom));
    }
    return u;
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

// --- criterion 1: closed-form ground state ------------------------------

std::vector<CheckResult> criterion_ground_state_closed_form() {
    ModelParams params;
    params.dim = 1;
    params.p = 3.0;
    params.b = 0.0;
    params.paper_regime = false;

    const auto profile = solve_ground_state(params, 1e-8);
    double sup = 0.0;
    for (std::size_t i = 0; i < profile.r.size(); ++i) {
        const double exact = std::sqrt(2.0) / std::cosh(profile.r[i]);
        sup = std::max(sup, std::abs(profile.q[i] - exact));
    }
    std::vector<CheckResult> out;
    out.push_back(make_check("sech sup-error", sup <= 1e-8, sup, "<= 1e-8"));
    const double poho = pohozaev_residual(profile);
    out.push_back(make_check("pohozaev residual", poho <= 1e-8, poho, "<= 1e-8"));
    return out;
}

// --- criterion 2: paper-regime ground state ------------------------------

std::vector<CheckResult> criterion_paper_ground_state() {
    ModelParams params;  // N=3, p=2.5, b=0.5
    const auto profile = solve_ground_state(params, 1e-8);

    std::vector<CheckResult> out;
    out.push_back(make_check("ODE residual", profile.residual <= 1e-8,
                             profile.residual, "<= 1e-8"));

    ShootingOptions fine;
    fine.dr = 0.5e-3;
    fine.r_max = 60.0;
    const auto refined = solve_ground_state(params, 1e-8, fine);
    double worst = 0.0;
    worst = std::max(worst, std::abs(profile.mass_norm / refined.mass_norm - 1.0));
    worst = std::max(worst, std::abs(profile.kinetic_norm / refined.kinetic_norm - 1.0));
    worst = std::max(worst, std::abs(profile.potential_norm / refined.potential_norm - 1.0));
    out.push_back(make_check("norm stability under refinement", worst <= 1e-6, worst,
                             "<= 1e-6 relative, dr/2 and r_max*2"));

    const auto th = thresholds(profile);
    const bool finite = std::isfinite(th.me) && std::isfinite(th.mk) && th.me > 0.0 &&
                        th.mk > 0.0 && std::abs(th.s_c - 0.5) < 1e-12;
    out.push_back(make_check("thresholds emitted (s_c = 1/2)", finite, th.me,
                             "ME, MK finite and positive"));
    return out;
}

// --- criteria 3-4: conservation + virial identity -----------------------

RunConfig conservation_reference_config() {
    RunConfig cfg;
    cfg.model = ModelParams{};  // N=3, p=2.5, b=0.5
    cfg.grid = make_grid(3, 64, 12.0, true);
    cfg.evolve.dt = 2e-3;
    cfg.evolve.T = 5.0;
    // log spacing 0.2 at dt = 2e-3 and 0.1 at dt = 1e-3: large enough that
    // the centered-difference truncation of dZ/dt dominates the spatial
    // quadrature floor of the virial rhs inside the trusted window
    cfg.evolve.log_every = 100;
    // a sub-threshold Gaussian necessarily disperses, so radiation reaches
    // the box edge long before T = 5; conservation on the torus is exact
    // regardless, hence the boundary guard is disabled for this run
    cfg.evolve.boundary_tol = 1.0;
    cfg.evolve.diagnostics.virial_radius = 6.0;
    // the boost carries the packet off the |x|^{-b} cusp early (shrinking the
    // cusp quadrature bias of the rhs) and drives a strongly varying Z(t)
    // while the solution is still localized
    cfg.initial.kind = InitialKind::boosted_gaussian;
    cfg.initial.amplitude = 1.2;
    cfg.initial.width = 1.0;
    cfg.initial.velocity = {1.0, 0.0, 0.0};
    return cfg;
}

ConservationArtifacts run_conservation_pair(const RunConfig& cfg) {
    ConservationArtifacts art;
    art.cfg = cfg;
    const ComplexField u0 = build_initial_data(cfg, 0);

    EvolveOptions coarse = cfg.evolve;
    art.coarse = evolve(u0, cfg.model, coarse);

    EvolveOptions half = cfg.evolve;
    half.dt = 0.5 * cfg.evolve.dt;
    // keep log_every fixed: the logged-time spacing halves along with dt, so
    // both the splitting error and the centered-difference truncation scale
    // as dt^2
    art.half = evolve(u0, cfg.model, half);
    return art;
}

std::vector<CheckResult> criterion_conservation(const ConservationArtifacts& a) {
    std::vector<CheckResult> out;

    const ComplexField u0 = build_initial_data(a.cfg, 0);
    const auto pot = make_potential_weight(a.cfg.grid, a.cfg.model.b);
    const auto profile = solve_ground_state(a.cfg.model, 1e-8);
    const auto cls = classify_data(u0, profile);
    out.push_back(make_check("initial data sub-threshold",
                             cls == DataClass::below_threshold,
                             static_cast<double>(cls), "classified below threshold"));

    out.push_back(make_check("run completed",
                             a.coarse.status == RunStatus::completed &&
                                 a.half.status == RunStatus::completed,
                             static_cast<double>(a.coarse.status), "both dt runs"));

    const double mdrift = max_mass_drift(a.coarse);
    out.push_back(make_check("mass drift", mdrift <= 1e-10, mdrift, "<= 1e-10 relative"));

    const double e_coarse = max_energy_drift(a.coarse);
    const double e_half = max_energy_drift(a.half);
    const double ratio = e_coarse / e_half;
    out.push_back(make_check("energy drift halves-dt ratio",
                             ratio >= 3.4 && ratio <= 4.6, ratio, "in [3.4, 4.6]"));
    return out;
}

std::vector<CheckResult> criterion_virial_identity(const ConservationArtifacts& a) {
    const double d_coarse = max_virial_defect(a.coarse);
    const double d_half = max_virial_defect(a.half);
    const double ratio = d_coarse / d_half;
    std::vector<CheckResult> out;
    out.push_back(make_check("virial defect halves-dt ratio",
                             ratio >= 3.4 && ratio <= 4.6, ratio, "in [3.4, 4.6]"));
    return out;
}

// --- criterion 5: weight invariants --------------------------------------

std::vector<CheckResult> criterion_weight_invariants() {
    const GridSpec g = make_grid(3, 64, 16.0, true);
    const double R = 8.0;
    const auto w = build_virial_weight(g, R);
    const auto r = radial_distance_field(g);
    const int N = g.dim;

    double inner_defect = 0.0, outer_defect = 0.0;
    double min_slope = 0.0, min_slope2 = 0.0;
    bool has_outer = false;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        if (r[i] <= 0.5 * R) {
            inner_defect = std::max(inner_defect, std::abs(w.a[i] - r[i] * r[i]));
            inner_defect = std::max(inner_defect, std::abs(w.lap_a[i] - 2.0 * N));
            inner_defect = std::max(inner_defect, std::abs(w.bilap_a[i]));
            for (int di = 0; di < N; ++di)
                for (int dj = di; dj < N; ++dj) {
                    const double expect = (di == dj) ? 2.0 : 0.0;
                    inner_defect = std::max(
                        inner_defect, std::abs(w.hess_a[w.hess_index(di, dj)][i] - expect));
                }
        } else if (r[i] > R) {
            has_outer = true;
            const double expect = 2.0 * (N - 1) * R / r[i];
            outer_defect =
                std::max(outer_defect, std::abs(w.lap_a[i] / expect - 1.0));
        }
        min_slope = std::min(min_slope, w.radial_slope[i]);
        min_slope2 = std::min(min_slope2, w.radial_slope2[i]);
    }

    std::vector<CheckResult> out;
    out.push_back(make_check("inner region exact", inner_defect == 0.0, inner_defect,
                             "a=|x|^2, lap a=2N, bilap a=0, hess=2I, node-wise exact"));
    out.push_back(make_check("outer Laplacian", has_outer && outer_defect <= 1e-10,
                             outer_defect, "lap a = 2(N-1)R/|x|, <= 1e-10 relative"));
    out.push_back(make_check("ramp monotonicity", min_slope >= 0.0 && min_slope2 >= -1e-12,
                             std::min(min_slope, min_slope2),
                             "d_r a >= 0 and d_r^2 a >= 0 node-wise"));
    return out;
}

// --- criterion 6: commutator identity ------------------------------------

std::vector<CheckResult> criterion_commutator(std::uint64_t seed) {
    const double R = 10.0, A = 2.0;

    RunConfig cfg;
    cfg.model.paper_regime = false;
    cfg.initial.kind = InitialKind::random_band_limited;
    cfg.initial.band_fraction = 0.25;  // absolute cutoff 0.25 * k_max(64)

    cfg.grid = make_grid(3, 64, 12.0, true);
    const double res64 = commutator_check(build_initial_data(cfg, seed), R, A);

    cfg.grid = make_grid(3, 128, 12.0, true);
    cfg.initial.band_fraction = 0.125;  // same physical band at doubled resolution
    const double res128 = commutator_check(build_initial_data(cfg, seed), R, A);

    std::vector<CheckResult> out;
    out.push_back(make_check("residual at 64^3", res64 <= 1e-8, res64, "<= 1e-8"));
    out.push_back(make_check("improves at 128^3", res128 < res64, res128,
                             "< 64^3 residual at fixed physical band"));
    return out;
}

// --- criterion 7: dispersive decay ---------------------------------------

std::vector<CheckResult> criterion_dispersive_decay() {
    std::vector<CheckResult> out;

    // closed-form Gaussian match at moderate resolution
    {
        const GridSpec g = make_grid(3, 128, 12.0, true);
        const ComplexField u0 = centered_gaussian(g, 1.0, 1.0);
        const ComplexField numeric = free_evolve(u0, 0.5);
        const ComplexField exact = gaussian_free_flow(g, 1.0, 1.0, 0.5);
        double sup = 0.0;
        for (std::int64_t i = 0; i < g.size(); ++i)
            sup = std::max(sup, std::abs(numeric.values[i] - exact.values[i]));
        out.push_back(make_check("closed-form match", sup <= 1e-8, sup,
                                 "sup-norm <= 1e-8 at t = 0.5"));
    }

    // decay exponent on a wide box, fit before the wraparound horizon. The
    // closed-form sup-norm slope is -(3/2) (4t^2/w^4) / (1 + 4t^2/w^4); with
    // w = 0.5 it is within 0.01 of the asymptote -3/2 over the whole window.
    // The packet |u|^2 width is sqrt(w^2 + 4t^2/w^2), so capping the window at
    // t = 3 keeps the boundary shell fraction ~3e-11, under the horizon
    // guard's 1e-8 (t = 4 would trip it).
    {
        const GridSpec g = make_grid(3, 256, 64.0, true);
        const ComplexField u0 = centered_gaussian(g, 1.0, 0.5);
        const std::vector<double> times = {1.5, 2.0, 2.5, 3.0};
        const auto fit = dispersive_decay_fit(u0, times);
        const bool pass = std::abs(fit.slope + 1.5) <= 0.05;
        out.push_back(make_check("decay exponent", pass, fit.slope, "-1.5 +/- 0.05"));
    }
    return out;
}

// --- criterion 8: integrator cross-validation ----------------------------

std::vector<CheckResult> criterion_integrator_order() {
    const ModelParams params;  // paper regime
    const GridSpec g = make_grid(3, 32, 8.0, true);
    const auto pot = make_potential_weight(g, params.b);
    const ComplexField u0 = centered_gaussian(g, 0.8, 1.0);
    const double T = 1.0;

    auto strang_run = [&](double dt) {
        ComplexField u = u0;
        const auto steps = static_cast<std::int64_t>(std::llround(T / dt));
        for (std::int64_t s = 0; s < steps; ++s) u = strang_step(u, pot, params, dt);
        return u;
    };
    auto rk4_run = [&](double dt) {
        ComplexField u = u0;
        const auto steps = static_cast<std::int64_t>(std::llround(T / dt));
        for (std::int64_t s = 0; s < steps; ++s) u = rk4_reference_step(u, pot, params, dt);
        return u;
    };

    const ComplexField ref = rk4_run(5e-4);
    const double e0 = rel_l2(strang_run(4e-3), ref);
    const double e1 = rel_l2(strang_run(2e-3), ref);
    const double e2 = rel_l2(strang_run(1e-3), ref);
    const double order01 = std::log2(e0 / e1);
    const double order12 = std::log2(e1 / e2);

    std::vector<CheckResult> out;
    out.push_back(make_check("order over dt 4e-3 -> 2e-3",
                             order01 >= 1.8 && order01 <= 2.2, order01, "in [1.8, 2.2]"));
    out.push_back(make_check("order over dt 2e-3 -> 1e-3",
                             order12 >= 1.8 && order12 <= 2.2, order12, "in [1.8, 2.2]"));
    return out;
}

// --- criterion 9: scaling covariance -------------------------------------

std::vector<CheckResult> criterion_scaling_covariance() {
    const ModelParams params;  // paper regime
    const double lambda = 2.0;
    const GridSpec g = make_grid(3, 32, 8.0, true);
    const auto pot = make_potential_weight(g, params.b);
    const ComplexField u0 = centered_gaussian(g, 0.8, 1.0);
    const double T = 0.5, dt = 1e-3;

    auto run = [&](ComplexField u, const PotentialWeight& w, double horizon,
                   double step) {
        const auto steps = static_cast<std::int64_t>(std::llround(horizon / step));
        for (std::int64_t s = 0; s < steps; ++s) u = strang_step(u, w, params, step);
        return u;
    };

    // path A: evolve on the original grid, then rescale
    const ComplexField path_a = scaling_transform(run(u0, pot, T, dt), params, lambda);
    // path B: rescale, then evolve for T / lambda^2 at dt / lambda^2
    const ComplexField v0 = scaling_transform(u0, params, lambda);
    const auto pot_scaled = make_potential_weight(v0.grid, params.b);
    const ComplexField path_b =
        run(v0, pot_scaled, T / (lambda * lambda), dt / (lambda * lambda));

    const double diff = rel_l2(path_a, path_b);
    std::vector<CheckResult> out;
    out.push_back(make_check("two-path relative L2", diff <= 1e-6, diff,
                             "<= 1e-6, lambda = 2"));
    return out;
}

// --- criteria 10-12: scattering / blowup dichotomy -----------------------

ScatterArtifacts run_scatter_preset(const RunConfig& cfg) {
    if (cfg.initial.kind != InitialKind::scaled_ground_state)
        throw ConfigError("scattering preset requires scaled_ground_state data");

    ScatterArtifacts art;
    art.cfg = cfg;
    art.profile = solve_ground_state(cfg.model, cfg.ground_state_tol);
    art.th = thresholds(art.profile);

    const ComplexField u0 = sample_on_grid(art.profile, cfg.grid, cfg.initial.scale);
    const auto pot = make_potential_weight(cfg.grid, cfg.model.b);

    EvolveOptions opts = cfg.evolve;
    opts.on_log = [&](const ComplexField& u, double) {
        const auto check = local_coercivity_check(u, pot, cfg.model, art.th,
                                                  cfg.coercivity_radius,
                                                  cfg.coercivity_sharpness);
        if (!check.applicable) ++art.inapplicable_count;
        art.coercivity_margins.push_back(check.margin);
    };
    art.log = evolve(u0, cfg.model, opts);
    return art;
}

std::vector<CheckResult> criterion_dichotomy(const ScatterArtifacts& s,
                                             const RunConfig& blowup_cfg) {
    std::vector<CheckResult> out;

    out.push_back(make_check("scattering run completed",
                             s.log.status == RunStatus::completed,
                             static_cast<double>(s.log.status), "status completed"));
    out.push_back(make_check("H1 trapping monitor", h1_trapping_monitor(s.log, s.th),
                             s.th.mk, "true at all logged times"));

    // potential energy at the nominal horizon T (half the run length) versus
    // its initial value
    const double t_nominal = 0.5 * s.log.times.back();
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s.log.times.size(); ++i) {
        if (std::abs(s.log.times[i] - t_nominal) < std::abs(s.log.times[idx] - t_nominal))
            idx = i;
    }
    const double frac = s.log.records[idx].potential / s.log.records.front().potential;
    out.push_back(make_check("potential decayed", frac <= 0.5, frac,
                             "<= 1/2 of initial at t = T"));

    const ComplexField w0 = build_initial_data(blowup_cfg, 0);
    const TrajectoryLog blow = evolve(w0, blowup_cfg.model, blowup_cfg.evolve);
    out.push_back(make_check("blowup preset detected",
                             blow.status == RunStatus::blowup_detected,
                             static_cast<double>(blow.status),
                             "status blowup_detected"));
    return out;
}

std::vector<CheckResult> criterion_evacuation(const ScatterArtifacts& s) {
    std::vector<CheckResult> out;
    const auto& diag = s.cfg.evolve.diagnostics;
    const double T = 0.5 * s.log.times.back();

    for (double R : {8.0, 12.0, 16.0}) {
        std::size_t col = diag.radii.size();
        for (std::size_t c = 0; c < diag.radii.size(); ++c)
            if (std::abs(diag.radii[c] - R) < 1e-9) col = c;
        if (col == diag.radii.size())
            throw ConfigError("scattering preset lacks a Morawetz column at R");
        std::vector<double> vals;
        for (const auto& rec : s.log.records) vals.push_back(rec.morawetz[col]);
        const double at_t = morawetz_average(s.log.times, vals, T);
        const double at_2t = morawetz_average(s.log.times, vals, 2.0 * T);
        char name[64];
        std::snprintf(name, sizeof name, "morawetz average at R=%g", R);
        out.push_back(make_check(name, at_2t <= at_t, at_2t / at_t,
                                 "avg over [0,2T] <= avg over [0,T]"));
    }

    const auto scan = evacuation_scan(s.log, diag, s.cfg.model.b, s.cfg.horizons);
    bool monotone = true;
    double worst = 0.0;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        const double rel = scan[i].average / scan[i - 1].average;
        worst = std::max(worst, rel);
        if (scan[i].average > scan[i - 1].average * (1.0 + 1e-9)) monotone = false;
    }
    out.push_back(make_check("evacuation averages non-increasing", monotone, worst,
                             "over three horizons, R_n = T_n^{1/(1+b)}"));
    return out;
}

std::vector<CheckResult> criterion_coercivity(const ScatterArtifacts& s) {
    double min_margin = s.coercivity_margins.empty() ? -1.0 : s.coercivity_margins.front();
    for (double m : s.coercivity_margins) min_margin = std::min(min_margin, m);
    std::vector<CheckResult> out;
    out.push_back(make_check("coercivity margins positive",
                             s.inapplicable_count == 0 && min_margin > 0.0, min_margin,
                             "> 0 at every logged time, R = configured R-bar"));
    return out;
}

}  // namespace inls
