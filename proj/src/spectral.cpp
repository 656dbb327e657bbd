#include "inls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "inls/errors.hpp"

namespace inls {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// FFTW plan creation is not thread-safe; guard the cache. Plans are created
// with FFTW_UNALIGNED so they can execute on any std::vector buffer via
// fftw_execute_dft, which is safe concurrently.
std::mutex plan_mutex;
std::map<std::pair<int, int>, PlanPair> plan_cache;

PlanPair& plans_for(const GridSpec& g) {
    std::scoped_lock lock(plan_mutex);
    auto key = std::make_pair(g.dim, g.points);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;

    std::vector<Complex> scratch(g.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int n[3] = {g.points, g.points, g.points};
    PlanPair pp;
    pp.fwd = fftw_plan_dft(g.dim, n, buf, buf, FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft(g.dim, n, buf, buf, FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plan_cache.emplace(key, pp).first->second;
}

}  // namespace

void fft_forward_inplace(ComplexField& u) {
    auto& pp = plans_for(u.grid);
    auto* buf = reinterpret_cast<fftw_complex*>(u.values.data());
    fftw_execute_dft(pp.fwd, buf, buf);
}

void fft_inverse_inplace(ComplexField& u) {
    auto& pp = plans_for(u.grid);
    auto* buf = reinterpret_cast<fftw_complex*>(u.values.data());
    fftw_execute_dft(pp.bwd, buf, buf);
    const double inv = 1.0 / static_cast<double>(u.grid.size());
    for (Complex& v : u.values) v *= inv;
}

ComplexField fft_forward(const ComplexField& u) {
    ComplexField out = u;
    fft_forward_inplace(out);
    return out;
}

ComplexField fft_inverse(const ComplexField& uk) {
    ComplexField out = uk;
    fft_inverse_inplace(out);
    return out;
}

std::vector<double> wavenumber_squared_field(const GridSpec& grid) {
    std::vector<double> out(grid.size());
    std::vector<double> k(grid.points);
    for (int j = 0; j < grid.points; ++j) k[j] = grid.wavenumber(j);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        auto ix = grid.unravel(i);
        double s = 0.0;
        for (int d = 0; d < grid.dim; ++d) s += k[ix[d]] * k[ix[d]];
        out[i] = s;
    }
    return out;
}

std::vector<ComplexField> gradient(const ComplexField& u) {
    ComplexField uk = fft_forward(u);
    std::vector<ComplexField> out;
    out.reserve(u.grid.dim);
    std::vector<double> k(u.grid.points);
    for (int j = 0; j < u.grid.points; ++j) k[j] = u.grid.wavenumber(j);
    for (int d = 0; d < u.grid.dim; ++d) {
        ComplexField g(u.grid);
        for (std::int64_t i = 0; i < u.grid.size(); ++i) {
            const double kd = k[u.grid.unravel(i)[d]];
            g.values[i] = Complex(0.0, kd) * uk.values[i];
        }
        fft_inverse_inplace(g);
        out.push_back(std::move(g));
    }
    return out;
}

double kinetic_energy_integral(const ComplexField& u) {
    ComplexField uk = fft_forward(u);
    const auto k2 = wavenumber_squared_field(u.grid);
    double cell = 1.0;
    for (int d = 0; d < u.grid.dim; ++d) cell *= u.grid.spacing();
    // Parseval: sum |u_j|^2 h^N = (1/M^N) sum |uhat_k|^2 h^N
    const double w = cell / static_cast<double>(u.grid.size());
    double s = 0.0;
    for (std::int64_t i = 0; i < u.grid.size(); ++i) s += k2[i] * std::norm(uk.values[i]);
    return s * w;
}

double grad_norm_l2(const ComplexField& u) {
    return std::sqrt(kinetic_energy_integral(u));
}

}  // namespace inls
