#include "inls/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "inls/errors.hpp"
#include "inls/spectral.hpp"

namespace inls {

namespace {

struct OdeState {
    double q;  // Q
    double p;  // Q'
};

struct OdeSystem {
    int N;
    double p;
    double b;

    OdeState rhs(double r, const OdeState& s) const {
        const double forcing = std::pow(r, -b) * std::pow(std::abs(s.q), p - 1.0) * s.q;
        return {s.p, -(N - 1) / r * s.p + s.q - forcing};
    }
};

OdeState rk4_step(const OdeSystem& sys, double r, const OdeState& s, double h) {
    const OdeState k1 = sys.rhs(r, s);
    const OdeState k2 = sys.rhs(r + 0.5 * h, {s.q + 0.5 * h * k1.q, s.p + 0.5 * h * k1.p});
    const OdeState k3 = sys.rhs(r + 0.5 * h, {s.q + 0.5 * h * k2.q, s.p + 0.5 * h * k2.p});
    const OdeState k4 = sys.rhs(r + h, {s.q + h * k3.q, s.p + h * k3.p});
    return {s.q + h / 6.0 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q),
            s.p + h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p)};
}

// Advance from r_from to r_to. Near the origin the 1/r and r^-b coefficients
// vary by orders of magnitude across a lattice cell, so the step is split
// geometrically: each substep is at most a fifth of the current radius.
OdeState advance(const OdeSystem& sys, double r_from, double r_to, OdeState s) {
    double r = r_from;
    while (r < r_to) {
        const double h = std::min(r_to - r, std::max(0.2 * r, 1e-12));
        s = rk4_step(sys, r, s, h);
        r += h;
    }
    return s;
}

// Two-term expansion around r = 0 balancing the Laplacian against the
// constant and forcing terms:
//   Q(r) = Q0 + Q0 r^2 / (2N) - Q0^p r^{2-b} / ((2-b)(N-b)) + O(r^{4-b}).
OdeState series_start(const ModelParams& mp, double q0, double r0) {
    const double N = mp.dim;
    const double b = mp.b;
    const double c2 = q0 / (2.0 * N);
    const double c3 = -std::pow(q0, mp.p) / ((2.0 - b) * (N - b));
    const double q = q0 + c2 * r0 * r0 + c3 * std::pow(r0, 2.0 - b);
    const double p = 2.0 * c2 * r0 + (2.0 - b) * c3 * std::pow(r0, 1.0 - b);
    return {q, p};
}

struct ShotResult {
    ShotOutcome outcome;
    std::vector<double> r, q, p;  // filled only when recording
};

ShotResult shoot(const ModelParams& mp, double q0, const ShootingOptions& opts,
                 bool record) {
    const OdeSystem sys{mp.dim, mp.p, mp.b};
    double r = opts.r_start;
    OdeState s = series_start(mp, q0, r);
    ShotResult res{ShotOutcome::decayed, {}, {}, {}};
    const auto nsteps = static_cast<std::int64_t>(std::ceil((opts.r_max - r) / opts.dr));
    if (record) {
        res.r.reserve(nsteps + 1);
        res.q.reserve(nsteps + 1);
        res.p.reserve(nsteps + 1);
        res.r.push_back(r);
        res.q.push_back(s.q);
        res.p.push_back(s.p);
    }
    for (std::int64_t i = 0; i < nsteps; ++i) {
        const double r_next = opts.r_start + (i + 1) * opts.dr;
        s = advance(sys, r, r_next, s);
        r = r_next;
        if (record) {
            res.r.push_back(r);
            res.q.push_back(s.q);
            res.p.push_back(s.p);
        }
        if (s.q < 0.0) {
            res.outcome = ShotOutcome::crossed_zero;
            return res;
        }
        if (s.p > 0.0) {
            res.outcome = ShotOutcome::turned_up;
            return res;
        }
        if (record && s.q < opts.tail_cut) break;
    }
    return res;
}

double simpson_radial(const std::vector<double>& r, const std::vector<double>& f,
                      int dim) {
    // composite Simpson over uniform nodes with measure w_N r^{N-1} dr
    const double pi = 3.14159265358979323846;
    const double omega = 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
    const std::size_t n = r.size();
    if (n < 3) return 0.0;
    const double h = r[1] - r[0];
    auto g = [&](std::size_t i) { return f[i] * std::pow(r[i], dim - 1); };
    double s = 0.0;
    std::size_t i = 0;
    while (i + 2 < n) {
        s += h / 3.0 * (g(i) + 4.0 * g(i + 1) + g(i + 2));
        i += 2;
    }
    if (i + 1 < n) s += 0.5 * h * (g(i) + g(i + 1));
    return omega * s;
}

}  // namespace

ShotOutcome shoot_outcome(const ModelParams& params, double q0,
                          const ShootingOptions& opts) {
    return shoot(params, q0, opts, false).outcome;
}

GroundStateProfile solve_ground_state(const ModelParams& params, double tol,
                                      const ShootingOptions& opts) {
    validate_params(params);
    if (!(tol > 0.0)) throw ParameterError("solver tolerance must be positive");

    // Bracket scan over a geometric ladder of Q(0) values. The decaying
    // separatrix sits between the last turned_up and the first crossed_zero.
    double lo = 0.0, hi = 0.0;
    double q0 = opts.bracket_lo;
    double prev_up = 0.0;
    while (q0 <= opts.bracket_hi) {
        const ShotOutcome oc = shoot(params, q0, opts, false).outcome;
        if (oc == ShotOutcome::crossed_zero) {
            if (prev_up == 0.0)
                throw SolverError("ground state bracket not found: ladder starts above the separatrix");
            lo = prev_up;
            hi = q0;
            break;
        }
        prev_up = q0;
        q0 *= 2.0;
    }
    if (hi == 0.0) throw SolverError("ground state bracket not found in Q(0) ladder");

    for (int it = 0; it < opts.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // interval at machine resolution
        const ShotOutcome oc = shoot(params, mid, opts, false).outcome;
        if (oc == ShotOutcome::crossed_zero)
            hi = mid;
        else
            lo = mid;
    }

    const double q0_final = 0.5 * (lo + hi);
    ShotResult rec = shoot(params, q0_final, opts, true);

    // Trim any misbehaving tail (the shot eventually leaves the separatrix
    // at the level of the bisection resolution).
    std::size_t n = rec.q.size();
    while (n > 2 && (rec.q[n - 1] <= 0.0 || rec.q[n - 1] > rec.q[n - 2])) --n;
    rec.r.resize(n);
    rec.q.resize(n);
    rec.p.resize(n);

    GroundStateProfile prof;
    prof.params = params;
    prof.q0 = q0_final;
    prof.dr = opts.dr;
    prof.r = rec.r;
    prof.q = rec.q;

    for (std::size_t i = 1; i < prof.q.size(); ++i) {
        if (!(prof.q[i] > 0.0) || !(prof.q[i] < prof.q[i - 1]))
            throw SolverError("converged ground-state profile is not positive decreasing");
    }

    std::vector<double> f(prof.q.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = prof.q[i] * prof.q[i];
    prof.mass_norm = simpson_radial(prof.r, f, params.dim);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = rec.p[i] * rec.p[i];
    prof.kinetic_norm = simpson_radial(prof.r, f, params.dim);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::pow(prof.r[i], -params.b) * std::pow(prof.q[i], params.p + 1.0);
    prof.potential_norm = simpson_radial(prof.r, f, params.dim);

    // head correction for the untabulated [0, r_start] segment, with Q held
    // at Q(0) and the radial moment integrated exactly (Q' vanishes there, so
    // the kinetic norm needs none)
    {
        const double pi = 3.14159265358979323846;
        const double omega = 2.0 * std::pow(pi, 0.5 * params.dim) /
                             std::tgamma(0.5 * params.dim);
        const double N = params.dim;
        prof.mass_norm += omega * q0_final * q0_final *
                          std::pow(opts.r_start, N) / N;
        prof.potential_norm += omega * std::pow(q0_final, params.p + 1.0) *
                               std::pow(opts.r_start, N - params.b) / (N - params.b);
    }

    // ODE defect by 4th-order finite differences. The window starts at
    // r = 0.5: for b > 0 the r^{2-b} component makes high derivatives large
    // near the origin and the finite-difference defect meaningless there.
    // The stencil is strided so its spacing stays near 1e-3 regardless of dr;
    // finer spacings amplify roundoff through the 1/h^2 second-difference.
    double defect = 0.0;
    const std::size_t s = std::max<std::size_t>(1, std::llround(1e-3 / opts.dr));
    const double h = s * opts.dr;
    for (std::size_t i = 2 * s; i + 2 * s < prof.q.size(); ++i) {
        if (prof.r[i] < 0.5) continue;
        const double d1 = (prof.q[i - 2 * s] - 8 * prof.q[i - s] + 8 * prof.q[i + s] -
                           prof.q[i + 2 * s]) / (12 * h);
        const double d2 = (-prof.q[i - 2 * s] + 16 * prof.q[i - s] - 30 * prof.q[i] +
                           16 * prof.q[i + s] - prof.q[i + 2 * s]) / (12 * h * h);
        const double def = d2 + (params.dim - 1) / prof.r[i] * d1 - prof.q[i] +
                           std::pow(prof.r[i], -params.b) * std::pow(prof.q[i], params.p);
        defect = std::max(defect, std::abs(def));
    }
    prof.residual = defect;
    if (prof.residual > tol)
        throw SolverError("ground-state ODE residual " + std::to_string(prof.residual) +
                          " exceeds tolerance");
    return prof;
}

double GroundStateProfile::energy() const {
    return 0.5 * kinetic_norm - potential_norm / (params.p + 1.0);
}

double GroundStateProfile::value(double radius) const {
    if (r.empty()) return 0.0;
    if (radius <= r.front()) return q0;
    if (radius >= r.back()) {
        // exponential far field with the leading radial prefactor
        const double pref = std::pow(r.back() / radius, 0.5 * (params.dim - 1));
        return q.back() * pref * std::exp(-(radius - r.back()));
    }
    const double s = (radius - r.front()) / dr;
    auto i = static_cast<std::size_t>(s);
    if (i + 1 >= q.size()) return q.back();
    const double t = s - static_cast<double>(i);
    if (i == 0 || i + 2 >= q.size()) {
        return q[i] * (1.0 - t) + q[i + 1] * t;
    }
    // Catmull-Rom cubic through the four surrounding nodes
    const double qm = q[i - 1], qa = q[i], qb = q[i + 1], qc = q[i + 2];
    const double a0 = -0.5 * qm + 1.5 * qa - 1.5 * qb + 0.5 * qc;
    const double a1 = qm - 2.5 * qa + 2.0 * qb - 0.5 * qc;
    const double a2 = -0.5 * qm + 0.5 * qb;
    return ((a0 * t + a1) * t + a2) * t + qa;
}

Thresholds thresholds(const GroundStateProfile& profile) {
    const double sc = critical_index(profile.params);
    if (!(sc > 0.0 && sc < 1.0))
        throw ParameterError("thresholds require critical index in (0,1)");
    const double e = (1.0 - sc) / sc;
    Thresholds th;
    th.s_c = sc;
    th.me = std::pow(profile.mass_norm, e) * profile.energy();
    th.mk = std::pow(std::sqrt(profile.mass_norm), e) * std::sqrt(profile.kinetic_norm);
    return th;
}

double pohozaev_residual(const GroundStateProfile& profile) {
    const double lhs = profile.kinetic_norm + profile.mass_norm;
    const double rhs = profile.potential_norm;
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

DataFunctionals data_functionals(const ComplexField& u0, const PotentialWeight& pot,
                                 const ModelParams& params) {
    if (!(u0.grid == pot.grid)) throw ParameterError("data_functionals: grid mismatch");
    DataFunctionals f;
    f.mass = mass(u0);
    f.kinetic = kinetic_energy_integral(u0);
    double cell = 1.0;
    for (int d = 0; d < u0.grid.dim; ++d) cell *= u0.grid.spacing();
    double s = 0.0;
    for (std::int64_t i = 0; i < u0.grid.size(); ++i) {
        s += pot.values[i] * std::pow(std::abs(u0.values[i]), params.p + 1.0);
    }
    f.potential = s * cell;
    const double sc = critical_index(params);
    const double e = (1.0 - sc) / sc;
    const double energy = 0.5 * f.kinetic - f.potential / (params.p + 1.0);
    f.me = std::pow(f.mass, e) * energy;
    f.mk = std::pow(std::sqrt(f.mass), e) * std::sqrt(f.kinetic);
    return f;
}

DataClass classify_data(const DataFunctionals& f, const Thresholds& th, double margin) {
    const double me_lo = th.me * (1.0 - margin), me_hi = th.me * (1.0 + margin);
    const double mk_lo = th.mk * (1.0 - margin), mk_hi = th.mk * (1.0 + margin);
    if (f.me < me_lo && f.mk < mk_lo) return DataClass::below_threshold;
    if (f.me > me_hi || f.mk > mk_hi) return DataClass::above_threshold;
    return DataClass::at_boundary;
}

DataClass classify_data(const ComplexField& u0, const GroundStateProfile& profile,
                        double margin) {
    const PotentialWeight pot = make_potential_weight(u0.grid, profile.params.b);
    return classify_data(data_functionals(u0, pot, profile.params),
                         thresholds(profile), margin);
}

ComplexField sample_on_grid(const GroundStateProfile& profile, const GridSpec& grid,
                            double scale) {
    if (grid.dim != profile.params.dim)
        throw ParameterError("sample_on_grid: dimension mismatch");
    ComplexField u(grid);
    const auto r = radial_distance_field(grid);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        u.values[i] = scale * profile.value(r[i]);
    }
    return u;
}

void write_profile_csv(const GroundStateProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "r,Q\n";
    char buf[80];
    for (std::size_t i = 0; i < profile.r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", profile.r[i], profile.q[i]);
        out << buf;
    }
}

void write_profile_json(const GroundStateProfile& profile, const std::string& path) {
    // outside the intercritical range the thresholds are undefined; emit
    // nulls so the artifact schema stays fixed
    Thresholds th;
    th.s_c = critical_index(profile.params);
    const bool intercritical = th.s_c > 0.0 && th.s_c < 1.0;
    if (intercritical) th = thresholds(profile);
    nlohmann::json j{
        {"N", profile.params.dim},
        {"p", profile.params.p},
        {"b", profile.params.b},
        {"s_c", th.s_c},
        {"Q0", profile.q0},
        {"mass", profile.mass_norm},
        {"kinetic", profile.kinetic_norm},
        {"potential", profile.potential_norm},
        {"ME", intercritical ? nlohmann::json(th.me) : nlohmann::json()},
        {"MK", intercritical ? nlohmann::json(th.mk) : nlohmann::json()},
        {"residual", profile.residual},
    };
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << "\n";
}

}  // namespace inls
