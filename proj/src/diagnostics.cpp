#include "inls/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "inls/errors.hpp"
#include "inls/propagator.hpp"
#include "inls/spectral.hpp"

namespace inls {

double potential_energy_integral(const ComplexField& u, const PotentialWeight& pot,
                                 const ModelParams& params) {
    if (!(u.grid == pot.grid)) throw ParameterError("grid mismatch");
    double cell = 1.0;
    for (int d = 0; d < u.grid.dim; ++d) cell *= u.grid.spacing();
    double s = 0.0;
    for (std::int64_t i = 0; i < u.grid.size(); ++i) {
        s += pot.values[i] * std::pow(std::abs(u.values[i]), params.p + 1.0);
    }
    return s * cell;
}

double energy(const ComplexField& u, const PotentialWeight& pot, const ModelParams& params) {
    return 0.5 * kinetic_energy_integral(u) -
           potential_energy_integral(u, pot, params) / (params.p + 1.0);
}

double mass_in_ball(const ComplexField& u, double R) {
    if (!(R > 0.0)) throw ParameterError("ball radius must be positive");
    const auto r = radial_distance_field(u.grid);
    double cell = 1.0;
    for (int d = 0; d < u.grid.dim; ++d) cell *= u.grid.spacing();
    double s = 0.0;
    for (std::int64_t i = 0; i < u.grid.size(); ++i) {
        if (r[i] <= R) s += std::norm(u.values[i]);
    }
    return s * cell;
}

double ball_potential(const ComplexField& u, const PotentialWeight& pot,
                      const ModelParams& params, double R) {
    if (!(u.grid == pot.grid)) throw ParameterError("grid mismatch");
    const auto r = radial_distance_field(u.grid);
    double cell = 1.0;
    for (int d = 0; d < u.grid.dim; ++d) cell *= u.grid.spacing();
    double s = 0.0;
    for (std::int64_t i = 0; i < u.grid.size(); ++i) {
        if (r[i] <= R) s += pot.values[i] * std::pow(std::abs(u.values[i]), params.p + 1.0);
    }
    return s * cell;
}

DiagnosticsRecord make_record(const ComplexField& u, double t,
                              const PotentialWeight& pot, const ModelParams& params,
                              const VirialWeight* vw, const DiagnosticsConfig& cfg) {
    DiagnosticsRecord rec;
    rec.t = t;
    rec.mass = mass(u);
    rec.kinetic = kinetic_energy_integral(u);
    rec.potential = potential_energy_integral(u, pot, params);
    rec.energy = 0.5 * rec.kinetic - rec.potential / (params.p + 1.0);
    rec.grad_norm = std::sqrt(rec.kinetic);
    rec.boundary_mass = boundary_shell_mass_fraction(u);
    if (vw != nullptr) {
        rec.z = virial_Z(u, *vw);
        rec.dzdt_rhs = virial_rhs(u, *vw, pot, params).total();
    }
    for (double R : cfg.radii) {
        rec.mass_in_ball.push_back(mass_in_ball(u, R));
        rec.morawetz.push_back(ball_potential(u, pot, params, R));
    }
    return rec;
}

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const DiagnosticsConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,mass,energy,kinetic,potential,Z,dZdt_rhs,grad_norm";
    char buf[64];
    for (double R : cfg.radii) {
        std::snprintf(buf, sizeof buf, ",mass_in_ball@%g", R);
        out << buf;
    }
    for (double R : cfg.radii) {
        std::snprintf(buf, sizeof buf, ",morawetz@%g", R);
        out << buf;
    }
    out << "\n";
    auto put = [&](double v, bool lead_comma) {
        std::snprintf(buf, sizeof buf, "%s%.17g", lead_comma ? "," : "", v);
        out << buf;
    };
    for (const auto& r : records) {
        put(r.t, false);
        put(r.mass, true);
        put(r.energy, true);
        put(r.kinetic, true);
        put(r.potential, true);
        put(r.z, true);
        put(r.dzdt_rhs, true);
        put(r.grad_norm, true);
        for (double v : r.mass_in_ball) put(v, true);
        for (double v : r.morawetz) put(v, true);
        out << "\n";
    }
}

double morawetz_average(const std::vector<double>& times,
                        const std::vector<double>& ball_potentials, double T) {
    if (times.size() != ball_potentials.size() || times.size() < 2)
        throw ParameterError("morawetz_average: mismatched or short series");
    if (!(times.front() <= 0.0 + 1e-12) || times.back() + 1e-12 < T)
        throw ParameterError("morawetz_average: time lattice does not cover [0, T]");
    double acc = 0.0;
    double prev_t = times[0], prev_v = ball_potentials[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
        double t = times[i], v = ball_potentials[i];
        if (t > T) {
            // interpolate the last partial interval up to T
            const double w = (T - prev_t) / (t - prev_t);
            v = prev_v + w * (v - prev_v);
            t = T;
        }
        acc += 0.5 * (prev_v + v) * (t - prev_t);
        prev_t = t;
        prev_v = v;
        if (t >= T) break;
    }
    return acc / T;
}

double morawetz_average(const std::vector<double>& times,
                        const std::vector<ComplexField>& fields,
                        const PotentialWeight& pot, const ModelParams& params,
                        double R, double T) {
    if (times.size() != fields.size())
        throw ParameterError("morawetz_average: times/fields mismatch");
    std::vector<double> vals;
    vals.reserve(fields.size());
    for (const auto& f : fields) vals.push_back(ball_potential(f, pot, params, R));
    return morawetz_average(times, vals, T);
}

namespace {
// degree-9 smoothstep, C^4 at both ends
double smoothstep9(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double y5 = y * y * y * y * y;
    return y5 * (126.0 + y * (-420.0 + y * (540.0 + y * (-315.0 + y * 70.0))));
}
}  // namespace

std::vector<double> cutoff_field(const GridSpec& grid, double R, double A) {
    if (!(R > 0.0) || !(A > 0.0)) throw ParameterError("cutoff needs R > 0, A > 0");
    const double inner = 0.5 * R;
    const double outer = 0.5 * R + R / A;
    const auto r = radial_distance_field(grid);
    std::vector<double> phi(grid.size());
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        phi[i] = smoothstep9((outer - r[i]) / (outer - inner));
    }
    return phi;
}

double commutator_check(const ComplexField& f, double R, double A) {
    const auto phi = cutoff_field(f.grid, R, A);
    const auto n = f.grid.size();
    double cell = 1.0;
    for (int d = 0; d < f.grid.dim; ++d) cell *= f.grid.spacing();

    ComplexField pf(f.grid);
    for (std::int64_t i = 0; i < n; ++i) pf.values[i] = phi[i] * f.values[i];
    const double lhs = kinetic_energy_integral(pf);

    const auto gf = gradient(f);
    double t1 = 0.0;
    for (int d = 0; d < f.grid.dim; ++d) {
        for (std::int64_t i = 0; i < n; ++i) {
            t1 += phi[i] * phi[i] * std::norm(gf[d].values[i]);
        }
    }
    t1 *= cell;

    // spectral Laplacian of phi
    ComplexField phic(f.grid);
    for (std::int64_t i = 0; i < n; ++i) phic.values[i] = phi[i];
    fft_forward_inplace(phic);
    const auto k2 = wavenumber_squared_field(f.grid);
    for (std::int64_t i = 0; i < n; ++i) phic.values[i] *= -k2[i];
    fft_inverse_inplace(phic);
    double t2 = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        t2 += phi[i] * phic.values[i].real() * std::norm(f.values[i]);
    }
    t2 *= cell;

    const double rhs = t1 - t2;
    const double scale = std::max({std::abs(lhs), std::abs(t1), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

CoercivityCheck local_coercivity_check(const ComplexField& u, const PotentialWeight& pot,
                                       const ModelParams& params, const Thresholds& th,
                                       double R, double A) {
    CoercivityCheck out;
    const auto f = data_functionals(u, pot, params);
    if (classify_data(f, th) != DataClass::below_threshold) {
        return out;  // no contract above the threshold
    }
    out.applicable = true;

    const auto phi = cutoff_field(u.grid, R, A);
    ComplexField pu(u.grid);
    for (std::int64_t i = 0; i < u.grid.size(); ++i) pu.values[i] = phi[i] * u.values[i];

    const double grad2 = kinetic_energy_integral(pu);
    const double pot_int = potential_energy_integral(pu, pot, params);
    const double N = params.dim;
    const double coeff = (N - params.b) / (params.p + 1.0) - 0.5 * N;
    out.lhs = grad2 + coeff * pot_int;
    out.rhs = pot_int;
    out.margin = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    return out;
}

}  // namespace inls
