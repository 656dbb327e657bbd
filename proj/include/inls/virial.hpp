#pragma once

#include <vector>

#include "inls/grid.hpp"
#include "inls/model.hpp"

namespace inls {

// Truncated virial weight a(x): a = |x|^2 for |x| <= R/2, and radial slope
// d_r a = 2R for |x| > R, joined on (R/2, R] by a monotone quintic ramp on
// d_r a that matches value and two derivatives at both ends (C^4 overall,
// so Delta Delta a is still well defined). a itself is recovered by radial
// integration from 0, which fixes the irrelevant additive constant.
struct VirialWeight {
    GridSpec grid;
    double R = 0.0;
    std::vector<double> a;                    // weight value
    std::vector<std::vector<double>> grad_a;  // d a / d x_j, one per axis
    std::vector<std::vector<double>> hess_a;  // a_ij, packed upper triangle
    std::vector<double> lap_a;                // Delta a
    std::vector<double> bilap_a;              // Delta Delta a
    // cached radial pieces used by the identity evaluation
    std::vector<double> radial_slope;         // d_r a at each node
    std::vector<double> radial_slope2;        // d_r^2 a at each node

    int hess_index(int i, int j) const {
        if (i > j) std::swap(i, j);
        // packed upper triangle for dim <= 3
        const int n = grid.dim;
        return i * n - i * (i - 1) / 2 + (j - i);
    }
};

// Scalar radial profile of the weight, exposed for node-wise invariant tests.
struct VirialWeightProfile {
    double R;
    double slope(double r) const;    // d_r a
    double slope1(double r) const;   // d^2_r a
    double slope2(double r) const;   // d^3_r a
    double slope3(double r) const;   // d^4_r a
    double value(double r) const;    // a(r), a(0) = 0
};

VirialWeight build_virial_weight(const GridSpec& grid, double R);

// Z = 2 Im int conj(u) grad u . grad a
double virial_Z(const ComplexField& u, const VirialWeight& w);

struct VirialRhs {
    double potential_term = 0.0;   // (4/(p+1) - 2) int |x|^-b |u|^{p+1} Delta a
    double weight_term = 0.0;      // -(4b/(p+1)) int |x|^{-b-2} |u|^{p+1} x . grad a
    double bilaplacian_term = 0.0; // -int |u|^2 Delta Delta a
    double hessian_term = 0.0;     // 4 Re sum_ij int a_ij conj(u_i) u_j
    double total() const {
        return potential_term + weight_term + bilaplacian_term + hessian_term;
    }
};

VirialRhs virial_rhs(const ComplexField& u, const VirialWeight& w,
                     const PotentialWeight& pot, const ModelParams& params);

}  // namespace inls
