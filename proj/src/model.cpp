#include "inls/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "inls/errors.hpp"

namespace inls {

double critical_index(const ModelParams& params) {
    if (!(params.p > 1.0)) throw ParameterError("critical_index requires p > 1");
    return 0.5 * params.dim - (2.0 - params.b) / (params.p - 1.0);
}

void validate_params(const ModelParams& params) {
    if (params.dim < 1) throw ConfigError("dimension must be >= 1");
    if (!(params.p > 1.0)) throw ConfigError("nonlinearity power must satisfy p > 1");
    if (params.b < 0.0) throw ConfigError("inhomogeneity decay b must be >= 0");
    if (!params.paper_regime) return;

    const double N = params.dim;
    if (params.dim < 3)
        throw ConfigError("paper regime requires N >= 3 (use paper_regime=false for validation runs)");
    if (!(params.b > 0.0 && params.b < std::min(N / 2.0, 2.0)))
        throw ConfigError("paper regime requires 0 < b < min(N/2, 2); got b = " +
                          std::to_string(params.b));
    const double lo = 1.0 + (4.0 - 2.0 * params.b) / N;
    const double hi = 1.0 + (4.0 - 2.0 * params.b) / (N - 2.0);
    if (!(params.p > lo && params.p < hi))
        throw ConfigError("paper regime requires p in (" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "); got p = " + std::to_string(params.p));
    const double sc = critical_index(params);
    if (!(sc > 0.0 && sc < 1.0))
        throw ConfigError("critical index outside (0,1)");
}

PotentialWeight make_potential_weight(const GridSpec& grid, double b) {
    if (b < 0.0) throw ParameterError("potential weight requires b >= 0");
    PotentialWeight w{grid, {}};
    if (b == 0.0) {
        w.values.assign(grid.size(), 1.0);
        return w;
    }
    const auto r = radial_distance_field(grid);
    w.values.resize(grid.size());
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        // offset grids keep r >= h/2 > 0; a node at the origin would make
        // the weight infinite, which we reject up front
        if (r[i] == 0.0) throw ConfigError("singular weight needs an offset grid (node at x=0)");
        w.values[i] = std::pow(r[i], -b);
    }
    return w;
}

}  // namespace inls
