#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inls/grid.hpp"
#include "inls/ground_state.hpp"
#include "inls/model.hpp"
#include "inls/virial.hpp"

namespace inls {

// M = int |u|^2 lives in grid.hpp as mass(u).

// E = 1/2 int |grad u|^2 - 1/(p+1) int |x|^-b |u|^{p+1}
double energy(const ComplexField& u, const PotentialWeight& pot, const ModelParams& params);

// int |x|^-b |u|^{p+1}
double potential_energy_integral(const ComplexField& u, const PotentialWeight& pot,
                                 const ModelParams& params);

// int_{|x| <= R} |u|^2 with a sharp ball indicator.
double mass_in_ball(const ComplexField& u, double R);

// int_{|x| <= R} |x|^-b |u|^{p+1}, the Morawetz integrand.
double ball_potential(const ComplexField& u, const PotentialWeight& pot,
                      const ModelParams& params, double R);

// Per-time-step scalar observables.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double z = 0.0;
    double dzdt_rhs = 0.0;
    double grad_norm = 0.0;
    double boundary_mass = 0.0;        // wraparound-guard shell mass fraction
    std::vector<double> mass_in_ball;  // one entry per configured radius
    std::vector<double> morawetz;      // ball potential per configured radius
};

struct DiagnosticsConfig {
    std::vector<double> radii;     // radius ladder for the ball columns
    double virial_radius = 0.0;    // 0 disables Z / dZdt columns
};

DiagnosticsRecord make_record(const ComplexField& u, double t,
                              const PotentialWeight& pot, const ModelParams& params,
                              const VirialWeight* vw, const DiagnosticsConfig& cfg);

// CSV serialization with 17 significant digits:
// t,mass,energy,kinetic,potential,Z,dZdt_rhs,grad_norm,mass_in_ball@R...,morawetz@R...
void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const DiagnosticsConfig& cfg, const std::string& path);

// Trapezoidal time average of the ball potential over [0, T].
double morawetz_average(const std::vector<double>& times,
                        const std::vector<double>& ball_potentials, double T);

// Field-snapshot variant (used on short trajectories).
double morawetz_average(const std::vector<double>& times,
                        const std::vector<ComplexField>& fields,
                        const PotentialWeight& pot, const ModelParams& params,
                        double R, double T);

// Degree-9 polynomial smoothstep cutoff: 1 on |x| <= R/2, 0 outside
// |x| <= R/2 + R/A, C^4 across the ramp.
std::vector<double> cutoff_field(const GridSpec& grid, double R, double A);

// Relative residual of int |grad(phi f)|^2 =
//   int phi^2 |grad f|^2 - int phi Delta(phi) |f|^2   (spectral derivatives).
double commutator_check(const ComplexField& f, double R, double A);

struct CoercivityCheck {
    bool applicable = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // lhs / rhs when rhs > 0
};

// lhs = int |grad(phi_R u)|^2 + ((N-b)/(p+1) - N/2) int |x|^-b |phi_R u|^{p+1},
// rhs = int |x|^-b |phi_R u|^{p+1}. Only meaningful for data classified
// below_threshold; otherwise reported as not applicable.
CoercivityCheck local_coercivity_check(const ComplexField& u, const PotentialWeight& pot,
                                       const ModelParams& params, const Thresholds& th,
                                       double R, double A);

struct EvacuationPoint {
    double horizon = 0.0;       // T_n
    double radius = 0.0;        // R_n = T_n^{1/(1+b)}
    double average = 0.0;       // Morawetz average over [0, T_n] in the ball R_n
    double witness_time = 0.0;  // logged time of the minimal ball potential
    double witness_value = 0.0;
};

}  // namespace inls
