#include "inls/propagator.hpp"

#include <cmath>

#include "inls/errors.hpp"
#include "inls/spectral.hpp"

namespace inls {

ComplexField free_evolve(const ComplexField& u, double t) {
    ComplexField uk = fft_forward(u);
    const auto k2 = wavenumber_squared_field(u.grid);
    for (std::int64_t i = 0; i < u.grid.size(); ++i) {
        uk.values[i] *= std::polar(1.0, -k2[i] * t);
    }
    fft_inverse_inplace(uk);
    return uk;
}

double boundary_shell_mass_fraction(const ComplexField& u) {
    const GridSpec& g = u.grid;
    const double cut = 0.9 * g.half_width;
    std::vector<double> c(g.points);
    for (int j = 0; j < g.points; ++j) c[j] = std::abs(g.coord(j));
    double shell = 0.0, total = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const double m = std::norm(u.values[i]);
        total += m;
        auto ix = g.unravel(i);
        double mx = 0.0;
        for (int d = 0; d < g.dim; ++d) mx = std::max(mx, c[ix[d]]);
        if (mx > cut) shell += m;
    }
    return total > 0.0 ? shell / total : 0.0;
}

DecayFit dispersive_decay_fit(const ComplexField& u0, std::span<const double> t_list,
                              double boundary_tol) {
    if (t_list.size() < 2) throw ParameterError("decay fit needs at least two times");
    for (std::size_t i = 1; i < t_list.size(); ++i) {
        if (!(t_list[i] > t_list[i - 1]))
            throw ParameterError("decay fit times must be increasing");
    }
    if (!(t_list.front() > 0.0)) throw ParameterError("decay fit times must be positive");

    DecayFit fit;
    std::vector<double> lx, ly;
    for (double t : t_list) {
        ComplexField ut = free_evolve(u0, t);
        if (boundary_shell_mass_fraction(ut) > boundary_tol) {
            throw HorizonError("wraparound horizon exceeded at t = " + std::to_string(t));
        }
        double sup = 0.0;
        for (const Complex& v : ut.values) sup = std::max(sup, std::abs(v));
        fit.sup_norms.push_back(sup);
        lx.push_back(std::log(t));
        ly.push_back(std::log(sup));
    }
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace inls
