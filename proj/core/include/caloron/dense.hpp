#pragma once

#include <Eigen/Dense>
#include <complex>

#include "caloron/errors.hpp"

namespace caloron {

using cd = std::complex<double>;
using cmat = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Circles always carry the honest dtheta measure on [0, 2*pi); use this
/// constant (never a literal) when converting to unit-circumference
/// conventions, so the bookkeeping stays visible at call sites.
inline constexpr double theta_period = 2.0 * pi;

/// Multiplicative factor taking a [0,2*pi) fiber integral to the
/// unit-circumference normalization. Applied explicitly by callers only.
inline constexpr double unit_circle_normalization = 1.0 / theta_period;

inline const cd iunit{0.0, 1.0};

/// 1/(2*pi*i), the normalization entering every characteristic form here.
inline const cd inv_two_pi_i = 1.0 / (cd(0.0, theta_period));

inline double max_abs(const cmat& m) { return m.cwiseAbs().maxCoeff(); }

inline double unitary_defect(const cmat& g) {
    return max_abs(g.adjoint() * g - cmat::Identity(g.rows(), g.cols()));
}

inline double skew_defect(const cmat& x) { return max_abs(x + x.adjoint()); }

/// Orthogonal projection onto skew-Hermitian matrices.
inline cmat skew_project(const cmat& x) { return 0.5 * (x - x.adjoint()); }

/// Row-major flat block <-> Eigen matrix conversions for value storage.
inline cmat block_to_mat(const cd* b, int n) {
    cmat m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = b[r * n + c];
    return m;
}

inline void mat_to_block(const cmat& m, cd* b, int n) {
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) b[r * n + c] = m(r, c);
}

/// Inverse through partial-pivot LU; rejects samples whose estimated
/// condition number exceeds `cond_threshold`.
cmat lu_inverse(const cmat& m, double cond_threshold = 1e12);

/// exp(X) for skew-Hermitian X via the spectral decomposition of -iX;
/// the result is unitary to rounding.
cmat skew_exp(const cmat& x);

/// Nearest unitary factor of the polar decomposition (SVD based).
cmat polar_unitary(const cmat& g);

} // namespace caloron
