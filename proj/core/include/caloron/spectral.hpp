#pragma once

#include <vector>

#include "caloron/dense.hpp"

namespace caloron::spectral {

/// In-place spectral derivative of a strided line of `n` uniform samples on a
/// circle of circumference `period`. Exact for trigonometric polynomials of
/// bandwidth < n/2; the Nyquist derivative mode is set to zero.
void circle_derivative(cd* p, int n, long stride, double period = theta_period);

/// Trigonometric resampling of `n` uniform circle samples onto `m >= n`
/// uniform samples (zero-padded spectrum; exact on the trig interpolant).
void circle_resample(const cd* src, int n, long sstride, cd* dst, int m, long dstride);

/// In-place 4th-order finite-difference derivative on [0,1] with n >= 5 nodes
/// (central stencils inside, one-sided 4th-order at the two nodes nearest each
/// endpoint). h = 1/(n-1).
void interval_derivative(cd* p, int n, long stride);

/// Forward DFT coefficients (unnormalized) of a strided line; index j holds
/// frequency j for j <= n/2, j-n above.
std::vector<cd> dft(const cd* p, int n, long stride);

} // namespace caloron::spectral
