#pragma once

#include <span>
#include <vector>

#include "inls/grid.hpp"

namespace inls {

// Exact free flow e^{it Delta} on the grid: uhat_k -> e^{-i|k|^2 t} uhat_k.
ComplexField free_evolve(const ComplexField& u, double t);

// Fraction of total mass carried by nodes with max_d |x_d| > 0.9 L.
// A run is trusted only while this stays below the wraparound tolerance.
double boundary_shell_mass_fraction(const ComplexField& u);

struct DecayFit {
    double slope = 0.0;      // least-squares slope of log sup|u| vs log t
    double intercept = 0.0;
    std::vector<double> sup_norms;
};

// Fit the L^infinity decay exponent of the free flow applied to u0 over the
// given increasing times. Throws HorizonError once the boundary shell mass
// fraction exceeds `boundary_tol`.
DecayFit dispersive_decay_fit(const ComplexField& u0, std::span<const double> t_list,
                              double boundary_tol = 1e-8);

}  // namespace inls
