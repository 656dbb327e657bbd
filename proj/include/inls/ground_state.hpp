#pragma once

#include <string>
#include <vector>

#include "inls/grid.hpp"
#include "inls/model.hpp"

namespace inls {

// Radial profile of the positive decaying solution of
//   Q'' + (N-1)/r Q' - Q + r^-b Q^p = 0,  Q'(0) = 0,  Q -> 0,
// together with its norms and derived scattering thresholds.
struct GroundStateProfile {
    ModelParams params;
    double q0 = 0.0;              // shooting value Q(0)
    double dr = 0.0;              // uniform node spacing
    std::vector<double> r;        // increasing positive radial nodes
    std::vector<double> q;        // positive decreasing values
    double mass_norm = 0.0;       // int Q^2
    double kinetic_norm = 0.0;    // int |grad Q|^2
    double potential_norm = 0.0;  // int |x|^-b Q^{p+1}
    double residual = 0.0;        // sup-norm ODE defect on the profile

    double energy() const;        // E[Q] = kinetic/2 - potential/(p+1)

    // Profile value at radius x, cubic interpolation inside the tabulated
    // range, exponential tail beyond it.
    double value(double radius) const;
};

struct Thresholds {
    double s_c = 0.0;
    double me = 0.0;  // M[Q]^{(1-s_c)/s_c} E[Q]
    double mk = 0.0;  // ||Q||_2^{(1-s_c)/s_c} ||grad Q||_2
};

struct ShootingOptions {
    double r_start = 1e-6;
    double r_max = 30.0;
    double dr = 5e-4;
    double bracket_lo = 0.1;
    double bracket_hi = 1e4;
    int max_bisections = 200;
    double tail_cut = 1e-6;  // stop the stored profile once Q drops below
};

GroundStateProfile solve_ground_state(const ModelParams& params, double tol,
                                      const ShootingOptions& opts = {});

// Outcome of a single shot from Q(0) = q0: trajectories either cross zero
// (q0 too large), turn upward while positive (q0 too small), or decay past
// r_max without doing either.
enum class ShotOutcome { crossed_zero, turned_up, decayed };

ShotOutcome shoot_outcome(const ModelParams& params, double q0,
                          const ShootingOptions& opts = {});

Thresholds thresholds(const GroundStateProfile& profile);

// Relative residual of int |grad Q|^2 + int Q^2 - int |x|^-b Q^{p+1}.
double pohozaev_residual(const GroundStateProfile& profile);

enum class DataClass { below_threshold, above_threshold, at_boundary };

// Functionals of candidate initial data, evaluated by grid quadrature.
struct DataFunctionals {
    double mass = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double me = 0.0;
    double mk = 0.0;
};

DataFunctionals data_functionals(const ComplexField& u0, const PotentialWeight& pot,
                                 const ModelParams& params);

DataClass classify_data(const DataFunctionals& f, const Thresholds& th,
                        double margin = 1e-9);
DataClass classify_data(const ComplexField& u0, const GroundStateProfile& profile,
                        double margin = 1e-9);

// Sample the radial profile onto a grid (for c*Q initial data).
ComplexField sample_on_grid(const GroundStateProfile& profile, const GridSpec& grid,
                            double scale = 1.0);

// Profile artifact output: CSV with columns r,Q plus a JSON sidecar holding
// {N, p, b, s_c, Q0, mass, kinetic, potential, ME, MK, residual}.
void write_profile_csv(const GroundStateProfile& profile, const std::string& path);
void write_profile_json(const GroundStateProfile& profile, const std::string& path);

}  // namespace inls
