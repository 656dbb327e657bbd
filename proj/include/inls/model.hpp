#pragma once

#include <vector>

#include "inls/grid.hpp"

namespace inls {

// Parameters of i u_t + Delta u + |x|^-b |u|^{p-1} u = 0.
// The paper regime is N >= 3 with 0 < b < min(N/2, 2) and
// 1 + (4-2b)/N < p < 1 + (4-2b)/(N-2); N in {1, 2} is allowed for
// validation runs behind the explicit flag.
struct ModelParams {
    int dim = 3;
    double p = 2.5;
    double b = 0.5;
    bool paper_regime = true;
};

// s_c = N/2 - (2-b)/(p-1). Throws ParameterError for p <= 1.
double critical_index(const ModelParams& params);

// Throws ConfigError when paper_regime is set but (N, p, b) violates the
// intercritical condition.
void validate_params(const ModelParams& params);

// |x|^-b sampled at every node. Equals 1 everywhere when b = 0.
struct PotentialWeight {
    GridSpec grid;
    std::vector<double> values;
};

PotentialWeight make_potential_weight(const GridSpec& grid, double b);

}  // namespace inls
