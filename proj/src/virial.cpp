#include "inls/virial.hpp"

#include <cmath>

#include "inls/errors.hpp"
#include "inls/spectral.hpp"

namespace inls {

namespace {
// Ramp for the radial slope d_r a on (R/2, R], in t = (r - R/2)/(R/2). The
// slope derivative (in t) is
//   g(t) = (1 - s9(t)) + 315 t^4 (1-t)^4,
// where s9 is the degree-9 smoothstep (s9' = 630 t^4 (1-t)^4). Both summands
// are nonnegative, so d_r^2 a >= 0; g and its first three derivatives match
// the inner region (g(0) = 1) and the outer plateau (g(1) = 0), making the
// slope C^3 and a C^4 across both junctions (the bilaplacian of a is then
// continuous, which keeps its lattice quadrature second-order). The bump is
// scaled so int_0^1 g = 1, i.e. the slope still rises from R to exactly 2R.
double ramp1(double t) {
    const double t2 = t * t, omt = 1.0 - t;
    const double w = t2 * t2 * omt * omt * omt * omt;
    const double s9 = t2 * t2 * t *
                      (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + t * 70.0))));
    return 1.0 - s9 + 315.0 * w;
}
// ramp(t) = 1 + int_0^t ramp1, so slope(r) = R * ramp(t)
double ramp(double t) {
    const double t2 = t * t, t4 = t2 * t2;
    // int s9 = 21 t^6 - 60 t^7 + 67.5 t^8 - 35 t^9 + 7 t^10
    const double S9 = t4 * t2 * (21.0 + t * (-60.0 + t * (67.5 + t * (-35.0 + t * 7.0))));
    // int t^4 (1-t)^4 = t^5/5 - 2 t^6/3 + 6 t^7/7 - t^8/2 + t^9/9
    const double W = t4 * t * (1.0 / 5.0 + t * (-2.0 / 3.0 + t * (6.0 / 7.0 +
                     t * (-1.0 / 2.0 + t * (1.0 / 9.0)))));
    return 1.0 + t - S9 + 315.0 * W;
}
double ramp2(double t) {
    const double omt = 1.0 - t;
    const double p3 = t * t * t * omt * omt * omt;
    // g' = -630 t^4 (1-t)^4 + 1260 t^3 (1-t)^3 (1-2t)
    return p3 * (-630.0 * t * omt + 1260.0 * (1.0 - 2.0 * t));
}
double ramp3(double t) {
    const double omt = 1.0 - t;
    const double p2 = t * t * omt * omt;
    const double q = 630.0 * t * t - 3150.0 * t + 1260.0;
    return 3.0 * p2 * (1.0 - 2.0 * t) * q + p2 * t * omt * (1260.0 * t - 3150.0);
}
// int_0^t ramp dt'
double ramp_int(double t) {
    const double t2 = t * t, t4 = t2 * t2, t6 = t4 * t2;
    // int S9 = 3 t^7 - 7.5 t^8 + 7.5 t^9 - 3.5 t^10 + (7/11) t^11
    const double IS9 = t6 * t * (3.0 + t * (-7.5 + t * (7.5 + t * (-3.5 + t * (7.0 / 11.0)))));
    // int W = t^6/30 - 2 t^7/21 + 3 t^8/28 - t^9/18 + t^10/90
    const double IW = t6 * (1.0 / 30.0 + t * (-2.0 / 21.0 + t * (3.0 / 28.0 +
                      t * (-1.0 / 18.0 + t * (1.0 / 90.0)))));
    return t + 0.5 * t2 - IS9 + 315.0 * IW;
}
}  // namespace

double VirialWeightProfile::slope(double r) const {
    if (r <= 0.5 * R) return 2.0 * r;
    if (r > R) return 2.0 * R;
    return R * ramp((r - 0.5 * R) / (0.5 * R));
}
double VirialWeightProfile::slope1(double r) const {
    if (r <= 0.5 * R) return 2.0;
    if (r > R) return 0.0;
    return 2.0 * ramp1((r - 0.5 * R) / (0.5 * R));
}
double VirialWeightProfile::slope2(double r) const {
    if (r <= 0.5 * R || r > R) return 0.0;
    return (4.0 / R) * ramp2((r - 0.5 * R) / (0.5 * R));
}
double VirialWeightProfile::slope3(double r) const {
    if (r <= 0.5 * R || r > R) return 0.0;
    return (8.0 / (R * R)) * ramp3((r - 0.5 * R) / (0.5 * R));
}
double VirialWeightProfile::value(double r) const {
    if (r <= 0.5 * R) return r * r;
    const double aR2 = 0.25 * R * R;
    if (r <= R) return aR2 + 0.5 * R * R * ramp_int((r - 0.5 * R) / (0.5 * R));
    const double aR = aR2 + 0.5 * R * R * ramp_int(1.0);
    return aR + 2.0 * R * (r - R);
}

VirialWeight build_virial_weight(const GridSpec& grid, double R) {
    if (!(R > 0.0)) throw ParameterError("virial weight radius must be positive");
    if (R > 0.5 * grid.half_width)
        throw ConfigError("virial radius too large for grid: need R <= L/2");

    const VirialWeightProfile prof{R};
    const int N = grid.dim;
    const auto n = grid.size();
    const auto r = radial_distance_field(grid);

    VirialWeight w;
    w.grid = grid;
    w.R = R;
    w.a.resize(n);
    w.lap_a.resize(n);
    w.bilap_a.resize(n);
    w.radial_slope.resize(n);
    w.radial_slope2.resize(n);
    w.grad_a.assign(N, std::vector<double>(n));
    w.hess_a.assign(N * (N + 1) / 2, std::vector<double>(n));

    std::vector<double> c(grid.points);
    for (int j = 0; j < grid.points; ++j) c[j] = grid.coord(j);

    for (std::int64_t i = 0; i < n; ++i) {
        const double ri = r[i];
        const auto ix = grid.unravel(i);
        double x[3] = {0, 0, 0};
        for (int d = 0; d < N; ++d) x[d] = c[ix[d]];

        w.a[i] = prof.value(ri);
        if (ri <= 0.5 * R) {
            // inner region: a = |x|^2 exactly
            w.radial_slope[i] = 2.0 * ri;
            w.radial_slope2[i] = 2.0;
            w.lap_a[i] = 2.0 * N;
            w.bilap_a[i] = 0.0;
            for (int d = 0; d < N; ++d) w.grad_a[d][i] = 2.0 * x[d];
            for (int di = 0; di < N; ++di)
                for (int dj = di; dj < N; ++dj)
                    w.hess_a[w.hess_index(di, dj)][i] = (di == dj) ? 2.0 : 0.0;
        } else if (ri > R) {
            // outer region: d_r a = 2R
            const double s = 2.0 * R;
            w.radial_slope[i] = s;
            w.radial_slope2[i] = 0.0;
            w.lap_a[i] = (N - 1) * s / ri;
            w.bilap_a[i] = (N - 1) * (3 - N) * s / (ri * ri * ri);
            for (int d = 0; d < N; ++d) w.grad_a[d][i] = s * x[d] / ri;
            for (int di = 0; di < N; ++di)
                for (int dj = di; dj < N; ++dj) {
                    const double del = (di == dj) ? 1.0 : 0.0;
                    w.hess_a[w.hess_index(di, dj)][i] =
                        (s / ri) * (del - x[di] * x[dj] / (ri * ri));
                }
        } else {
            const double s = prof.slope(ri);
            const double s1 = prof.slope1(ri);
            const double s2 = prof.slope2(ri);
            const double s3 = prof.slope3(ri);
            w.radial_slope[i] = s;
            w.radial_slope2[i] = s1;
            // Delta a = s' + (N-1) s / r, and its radial Laplacian
            const double f1 = s2 + (N - 1) * (s1 / ri - s / (ri * ri));
            const double f2 = s3 + (N - 1) * (s2 / ri - 2.0 * s1 / (ri * ri) +
                                              2.0 * s / (ri * ri * ri));
            w.lap_a[i] = s1 + (N - 1) * s / ri;
            w.bilap_a[i] = f2 + (N - 1) * f1 / ri;
            for (int d = 0; d < N; ++d) w.grad_a[d][i] = s * x[d] / ri;
            for (int di = 0; di < N; ++di)
                for (int dj = di; dj < N; ++dj) {
                    const double del = (di == dj) ? 1.0 : 0.0;
                    w.hess_a[w.hess_index(di, dj)][i] =
                        (s / ri) * del + (s1 - s / ri) * x[di] * x[dj] / (ri * ri);
                }
        }
    }
    return w;
}

double virial_Z(const ComplexField& u, const VirialWeight& w) {
    if (!(u.grid == w.grid)) throw ParameterError("virial_Z: field/weight grid mismatch");
    const auto grads = gradient(u);
    double cell = 1.0;
    for (int d = 0; d < u.grid.dim; ++d) cell *= u.grid.spacing();
    double s = 0.0;
    for (int d = 0; d < u.grid.dim; ++d) {
        const auto& g = grads[d].values;
        const auto& ga = w.grad_a[d];
        for (std::int64_t i = 0; i < u.grid.size(); ++i) {
            s += std::imag(std::conj(u.values[i]) * g[i]) * ga[i];
        }
    }
    return 2.0 * s * cell;
}

VirialRhs virial_rhs(const ComplexField& u, const VirialWeight& w,
                     const PotentialWeight& pot, const ModelParams& params) {
    if (!(u.grid == w.grid) || !(u.grid == pot.grid))
        throw ParameterError("virial_rhs: grid mismatch");
    const int N = u.grid.dim;
    const double p = params.p;
    const double b = params.b;
    const auto n = u.grid.size();
    double cell = 1.0;
    for (int d = 0; d < N; ++d) cell *= u.grid.spacing();

    const auto r = radial_distance_field(u.grid);
    const auto grads = gradient(u);

    VirialRhs out;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double am = std::abs(u.values[i]);
        const double up1 = std::pow(am, p + 1.0);
        t1 += pot.values[i] * up1 * w.lap_a[i];
        if (b > 0.0) {
            // |x|^{-b-2} x . grad a = |x|^{-b-1} d_r a
            t2 += pot.values[i] / r[i] * w.radial_slope[i] * up1;
        }
        t3 += std::norm(u.values[i]) * w.bilap_a[i];
    }
    out.potential_term = (4.0 / (p + 1.0) - 2.0) * t1 * cell;
    out.weight_term = -(4.0 * b / (p + 1.0)) * t2 * cell;
    out.bilaplacian_term = -t3 * cell;

    double t4 = 0.0;
    for (int di = 0; di < N; ++di) {
        for (int dj = di; dj < N; ++dj) {
            const auto& h = w.hess_a[w.hess_index(di, dj)];
            const double mult = (di == dj) ? 1.0 : 2.0;
            const auto& gi = grads[di].values;
            const auto& gj = grads[dj].values;
            double s = 0.0;
            for (std::int64_t i = 0; i < n; ++i) {
                s += h[i] * std::real(std::conj(gi[i]) * gj[i]);
            }
            t4 += mult * s;
        }
    }
    out.hessian_term = 4.0 * t4 * cell;
    return out;
}

}  // namespace inls
