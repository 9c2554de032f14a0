#pragma once

#include <utility>

#include "caloron/form.hpp"
#include "caloron/loop.hpp"

namespace caloron {

/// Connection + Higgs field on a trivialized loop-group bundle over a mesh.
/// `connection` is a degree-1 loop-valued MatrixForm (the theta axis lives in
/// the values), `higgs` a degree-0 loop-valued MatrixForm on the same mesh
/// with the same loop depth and rank.
struct GaugePair {
    GroupSpec spec{};
    MatrixForm connection;
    MatrixForm higgs;
};

/// Throws DimensionMismatch unless the pair is structurally consistent.
void check_gauge_pair(const GaugePair& p);

/// A sampled map from the mesh into a matrix group (loop_samples = 0) or into
/// its loop group (loop_samples > 0). Values form a degree-0 MatrixForm.
struct GroupMap {
    GroupSpec spec{};
    MatrixForm values;
};

enum class McSide { Left, Right };

/// Pointwise inverse of the value grid: conjugate transpose for U/SU, LU for
/// GL.
MatrixForm map_inverse_values(const GroupMap& g);

/// Maurer-Cartan pullback: Left gives g^{-1}dg, Right gives (dg)g^{-1}.
/// Algebra-valued 1-form with the same loop depth as g.
MatrixForm map_mc_pullback(const GroupMap& g, McSide side = McSide::Left);

/// g^{-1} (d/dtheta) g for loop-valued maps; degree-0, algebra-valued.
MatrixForm map_theta_log_derivative(const GroupMap& g);

/// Max over grid points of ||g(x)(0) - I|| for loop-valued maps.
double map_based_defect(const GroupMap& g);

/// Max over the theta = 0 value slots of a loop-valued form; the basedness
/// defect of a connection.
double loop_slice0_defect(const MatrixForm& w);

/// F = dA + (1/2)[A,A] = dA + A^A for a 1-form. Works on plain connections
/// over an extended mesh and on loop-valued frame connections alike (there d
/// never touches the theta values).
MatrixForm curvature(const MatrixForm& a);

/// Higgs covariant derivative dPhi + [A,Phi] - dA/dtheta; loop-valued 1-form.
MatrixForm higgs_cov_derivative(const GaugePair& p);

/// In-place projection of every value onto skew-Hermitian matrices,
/// X -> (X - X*)/2; returns the pre-projection defect max ||X + X*||.
double skew_project_form(MatrixForm& w);

struct GaugeTransformed {
    GaugePair pair;
    /// Skew defect of the transformed data before re-projection (recorded for
    /// diagnostics; the projection only runs for unitary families).
    double pre_projection_skew_defect = 0.0;
};

/// Gauge action A -> g^{-1}Ag + g^{-1}dg, Phi -> g^{-1}Phi g + g^{-1}dg/dtheta
/// for a based loop-valued map. Throws NonBasedGauge when some g(x)(0) sits
/// further than based_tol from the identity.
GaugeTransformed gauge_transform_pair(const GaugePair& p, const GroupMap& gamma,
                                      double based_tol = 1e-10);

/// Re-index a loop-valued p-form (plus an optional loop-valued (p-1)-form to
/// sit against the new circle differential) into a plain p-form on
/// mesh x Circle(loop_samples); the loop axis becomes the last mesh factor.
/// Exact (copies only).
MatrixForm extend_to_caloron(const MatrixForm& horizontal,
                             const MatrixForm* theta_part = nullptr);

/// Inverse re-indexing of a plain p-form along a designated circle factor:
/// components without that axis become a loop-valued p-form on the reduced
/// mesh, components with it a loop-valued (p-1)-form (sign from moving the
/// axis differential to the last slot). Exact (copies only).
std::pair<MatrixForm, MatrixForm> split_from_caloron(const MatrixForm& w, int theta_axis);

/// Re-index a GaugePair into a plain 1-form on mesh x Circle(loop_samples):
/// the loop value axis becomes the last mesh factor and the Higgs field the
/// d-theta component. Exact (copies only).
MatrixForm caloron_transform(const GaugePair& p);

/// Inverse re-indexing of a degree-1 form along a designated circle factor.
/// Exact (copies only).
GaugePair inverse_caloron_transform(const MatrixForm& a, int theta_axis, GroupSpec spec);

} // namespace caloron
