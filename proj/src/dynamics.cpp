#include "inls/dynamics.hpp"

#include <cmath>

#include "inls/errors.hpp"
#include "inls/propagator.hpp"
#include "inls/spectral.hpp"
#include "inls/virial.hpp"

namespace inls {

ComplexField nonlinear_phase_step(const ComplexField& u, const PotentialWeight& weight,
                                  const ModelParams& params, double dt) {
    if (!(u.grid == weight.grid)) throw ParameterError("phase step: grid mismatch");
    ComplexField out = u;
    if (dt == 0.0) return out;
    for (std::int64_t i = 0; i < u.grid.size(); ++i) {
        const double am = std::abs(out.values[i]);
        if (am == 0.0) continue;
        const double phase = dt * weight.values[i] * std::pow(am, params.p - 1.0);
        out.values[i] *= std::polar(1.0, phase);
    }
    return out;
}

ComplexField strang_step(const ComplexField& u, const PotentialWeight& weight,
                         const ModelParams& params, double dt) {
    ComplexField half = free_evolve(u, 0.5 * dt);
    half = nonlinear_phase_step(half, weight, params, dt);
    half = free_evolve(half, 0.5 * dt);
    if (!all_finite(half))
        throw OverflowError("non-finite values after Strang step (incipient blowup)");
    return half;
}

ComplexField rk4_reference_step(const ComplexField& u, const PotentialWeight& weight,
                                const ModelParams& params, double dt) {
    if (!(u.grid == weight.grid)) throw ParameterError("rk4 step: grid mismatch");
    const auto k2 = wavenumber_squared_field(u.grid);
    const auto n = u.grid.size();

    auto rhs = [&](const ComplexField& v) {
        ComplexField lap = fft_forward(v);
        for (std::int64_t i = 0; i < n; ++i) lap.values[i] *= -k2[i];
        fft_inverse_inplace(lap);
        ComplexField out(v.grid);
        for (std::int64_t i = 0; i < n; ++i) {
            const double am = std::abs(v.values[i]);
            const double nl = weight.values[i] * std::pow(am, params.p - 1.0);
            out.values[i] = Complex(0.0, 1.0) * (lap.values[i] + nl * v.values[i]);
        }
        return out;
    };

    const ComplexField k1 = rhs(u);
    ComplexField tmp(u.grid);
    for (std::int64_t i = 0; i < n; ++i) tmp.values[i] = u.values[i] + 0.5 * dt * k1.values[i];
    const ComplexField k2s = rhs(tmp);
    for (std::int64_t i = 0; i < n; ++i) tmp.values[i] = u.values[i] + 0.5 * dt * k2s.values[i];
    const ComplexField k3 = rhs(tmp);
    for (std::int64_t i = 0; i < n; ++i) tmp.values[i] = u.values[i] + dt * k3.values[i];
    const ComplexField k4 = rhs(tmp);

    ComplexField out(u.grid);
    for (std::int64_t i = 0; i < n; ++i) {
        out.values[i] = u.values[i] + dt / 6.0 * (k1.values[i] + 2.0 * k2s.values[i] +
                                                  2.0 * k3.values[i] + k4.values[i]);
    }
    const double m0 = mass(u);
    if (m0 > 0.0 && mass(out) > 100.0 * m0)
        throw OracleStabilityError("rk4 reference step unstable: norm grew more than 10x");
    return out;
}

TrajectoryLog evolve(const ComplexField& u0, const ModelParams& params,
                     const EvolveOptions& opts) {
    if (!(opts.dt > 0.0) || !(opts.T > 0.0))
        throw ParameterError("evolve requires dt > 0 and T > 0");
    if (opts.log_every < 1) throw ParameterError("log_every must be >= 1");

    const PotentialWeight weight = make_potential_weight(u0.grid, params.b);
    VirialWeight vw;
    const VirialWeight* vwp = nullptr;
    if (opts.diagnostics.virial_radius > 0.0) {
        vw = build_virial_weight(u0.grid, opts.diagnostics.virial_radius);
        vwp = &vw;
    }

    TrajectoryLog log;
    auto log_state = [&](const ComplexField& u, double t) {
        log.times.push_back(t);
        log.records.push_back(make_record(u, t, weight, params, vwp, opts.diagnostics));
        if (opts.store_snapshots) log.snapshots.push_back(u);
        if (opts.on_log) opts.on_log(u, t);
    };

    ComplexField u = u0;
    log_state(u, 0.0);
    const double grad0 = log.records.front().grad_norm;

    // keep the state in frequency space between steps so each Strang step
    // costs two transforms
    const auto k2 = wavenumber_squared_field(u.grid);
    const auto n = u.grid.size();
    const auto nsteps = static_cast<std::int64_t>(std::llround(opts.T / opts.dt));
    std::vector<Complex> half_mult(n);
    for (std::int64_t i = 0; i < n; ++i) half_mult[i] = std::polar(1.0, -k2[i] * 0.5 * opts.dt);

    for (std::int64_t step = 0; step < nsteps; ++step) {
        fft_forward_inplace(u);
        for (std::int64_t i = 0; i < n; ++i) u.values[i] *= half_mult[i];
        fft_inverse_inplace(u);
        u = nonlinear_phase_step(u, weight, params, opts.dt);
        fft_forward_inplace(u);
        for (std::int64_t i = 0; i < n; ++i) u.values[i] *= half_mult[i];
        fft_inverse_inplace(u);

        if (!all_finite(u)) {
            log.status = RunStatus::blowup_detected;
            return log;
        }

        if ((step + 1) % opts.log_every == 0 || step + 1 == nsteps) {
            const double t = (step + 1) * opts.dt;
            log_state(u, t);
            const auto& rec = log.records.back();
            if (grad0 > 0.0 && rec.grad_norm > opts.blowup_factor * grad0) {
                log.status = RunStatus::blowup_detected;
                return log;
            }
            if (boundary_shell_mass_fraction(u) > opts.boundary_tol) {
                log.status = RunStatus::horizon_exceeded;
                return log;
            }
        }
    }
    log.status = RunStatus::completed;
    return log;
}

ComplexField scaling_transform(const ComplexField& u, const ModelParams& params,
                               double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("scaling_transform requires lambda > 0");
    const double amp = std::pow(lambda, (2.0 - params.b) / (params.p - 1.0));
    GridSpec g = u.grid;
    g.half_width = u.grid.half_width / lambda;
    // Target nodes are x_j / lambda, so lambda * x'_j lands exactly on the
    // source nodes: the resampling is an index-preserving relabeling.
    ComplexField out(g);
    for (std::int64_t i = 0; i < g.size(); ++i) out.values[i] = amp * u.values[i];
    return out;
}

std::vector<EvacuationPoint> evacuation_scan(const TrajectoryLog& log,
                                             const DiagnosticsConfig& cfg, double b,
                                             const std::vector<double>& horizons) {
    std::vector<EvacuationPoint> out;
    for (double T : horizons) {
        if (log.times.empty() || log.times.back() + 1e-9 < T)
            throw ParameterError("evacuation_scan: log does not cover horizon");
        EvacuationPoint pt;
        pt.horizon = T;
        pt.radius = std::pow(T, 1.0 / (1.0 + b));
        // locate the configured radius column matching R_n
        std::size_t col = cfg.radii.size();
        for (std::size_t c = 0; c < cfg.radii.size(); ++c) {
            if (std::abs(cfg.radii[c] - pt.radius) <= 1e-9 * std::max(1.0, pt.radius)) {
                col = c;
                break;
            }
        }
        if (col == cfg.radii.size())
            throw ParameterError("evacuation_scan: no morawetz column at R_n");
        std::vector<double> vals;
        vals.reserve(log.records.size());
        for (const auto& r : log.records) vals.push_back(r.morawetz[col]);
        pt.average = morawetz_average(log.times, vals, T);
        pt.witness_value = vals.front();
        pt.witness_time = log.times.front();
        for (std::size_t i = 0; i < log.times.size() && log.times[i] <= T + 1e-12; ++i) {
            if (vals[i] < pt.witness_value) {
                pt.witness_value = vals[i];
                pt.witness_time = log.times[i];
            }
        }
        out.push_back(pt);
    }
    return out;
}

bool h1_trapping_monitor(const TrajectoryLog& log, const Thresholds& th) {
    if (log.records.empty()) return true;
    const double m0 = log.records.front().mass;
    if (m0 == 0.0) return true;
    const double e = (1.0 - th.s_c) / th.s_c;
    const double factor = std::pow(std::sqrt(m0), e);
    for (const auto& rec : log.records) {
        if (!(factor * rec.grad_norm < th.mk)) return false;
    }
    return true;
}

}  // namespace inls
