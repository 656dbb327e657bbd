#pragma once

#include <vector>

#include "inls/grid.hpp"

namespace inls {

// Forward/inverse DFT between physical and frequency space. Plans are cached
// per (dim, points) behind a mutex; execution on distinct buffers is safe to
// call concurrently.
ComplexField fft_forward(const ComplexField& u);   // unnormalized
ComplexField fft_inverse(const ComplexField& uk);  // divides by M^dim

// In-place variants operating on the value array of a field.
void fft_forward_inplace(ComplexField& u);
void fft_inverse_inplace(ComplexField& u);

// Squared wavenumber |k|^2 at every frequency-space node (row-major,
// standard FFT ordering).
std::vector<double> wavenumber_squared_field(const GridSpec& grid);

// Spectral derivative along each axis: multiply by i*k_axis and invert.
std::vector<ComplexField> gradient(const ComplexField& u);

// integral |grad u|^2 via Parseval (no gradient fields materialized).
double kinetic_energy_integral(const ComplexField& u);

double grad_norm_l2(const ComplexField& u);

}  // namespace inls
