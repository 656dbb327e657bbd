#pragma once

#include <functional>
#include <vector>

#include "inls/diagnostics.hpp"
#include "inls/grid.hpp"
#include "inls/model.hpp"

namespace inls {

enum class RunStatus { completed, blowup_detected, horizon_exceeded };

struct TrajectoryLog {
    std::vector<double> times;
    std::vector<DiagnosticsRecord> records;
    RunStatus status = RunStatus::completed;
    // optional field snapshots (times aligned with `times` when enabled)
    std::vector<ComplexField> snapshots;
};

// Exact flow of i u_t = -|x|^-b |u|^{p-1} u:
// u -> u exp(i dt |x|^-b |u|^{p-1}); |u| is unchanged at every node.
ComplexField nonlinear_phase_step(const ComplexField& u, const PotentialWeight& weight,
                                  const ModelParams& params, double dt);

// Strang composition free(dt/2) o phase(dt) o free(dt/2).
ComplexField strang_step(const ComplexField& u, const PotentialWeight& weight,
                         const ModelParams& params, double dt);

// One explicit RK4 step of the method-of-lines system
// u_t = i(Delta u + |x|^-b |u|^{p-1} u) with spectral Laplacian.
// Needs dt small enough for explicit stability (dt of order h^2/pi^2).
ComplexField rk4_reference_step(const ComplexField& u, const PotentialWeight& weight,
                                const ModelParams& params, double dt);

struct EvolveOptions {
    double dt = 2e-3;
    double T = 5.0;
    int log_every = 25;
    double blowup_factor = 50.0;    // halt when ||grad u|| exceeds this multiple
    double boundary_tol = 1e-8;     // wraparound guard on the outer 10% shell
    DiagnosticsConfig diagnostics;  // radius ladder + virial radius
    bool store_snapshots = false;
    // invoked at every logged time; lets callers run field-level monitors
    // without retaining snapshots
    std::function<void(const ComplexField&, double)> on_log;
};

// Repeated Strang steps with diagnostics every log_every steps. Halts early
// with blowup_detected on gradient-norm growth past blowup_factor, or
// horizon_exceeded once the wraparound guard trips.
TrajectoryLog evolve(const ComplexField& u0, const ModelParams& params,
                     const EvolveOptions& opts);

// u_lambda(x) = lambda^{(2-b)/(p-1)} u(lambda x) on the grid with
// half_width L/lambda. With matching resolution the resampling is an exact
// node relabeling.
ComplexField scaling_transform(const ComplexField& u, const ModelParams& params,
                               double lambda);

// Mean-value evacuation scan: for each horizon T_n, R_n = T_n^{1/(1+b)} and
// the Morawetz average over [0, T_n] in the ball R_n. The log must carry a
// morawetz column at each R_n (matched within 1e-9).
std::vector<EvacuationPoint> evacuation_scan(const TrajectoryLog& log,
                                             const DiagnosticsConfig& cfg, double b,
                                             const std::vector<double>& horizons);

// True iff ||u0||_2^{(1-s_c)/s_c} ||grad u(t)||_2 < MK at every logged time.
bool h1_trapping_monitor(const TrajectoryLog& log, const Thresholds& th);

}  // namespace inls
