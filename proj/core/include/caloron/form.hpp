#pragma once

#include <map>
#include <vector>

#include "caloron/mesh.hpp"

namespace caloron {

/// Strictly increasing list of mesh axes naming a canonical form component.
using AxisSet = std::vector<int>;

/// A matrix-valued differential p-form on a product mesh. Only canonical
/// (strictly increasing) components are stored; antisymmetry is implicit.
///
/// Values are n x n complex matrices; when loop_samples > 0 every value is a
/// loop of such matrices (an extra theta axis stored between the mesh point
/// index and the matrix entries), which is how connection data with
/// loop-algebra values is represented. Component layout:
/// [point (row-major, last mesh axis fastest)][theta][row][col].
class MatrixForm {
public:
    MatrixForm() = default;
    MatrixForm(Mesh mesh, int degree, int value_rank, int loop_samples = 0);

    const Mesh& mesh() const { return mesh_; }
    int degree() const { return degree_; }
    int rank() const { return n_; }
    int loop_samples() const { return loop_samples_; }
    /// Number of theta slots per value (1 for plain forms).
    int value_depth() const { return loop_samples_ > 0 ? loop_samples_ : 1; }
    /// Scalars per grid point: value_depth * n * n.
    long value_len() const { return static_cast<long>(value_depth()) * n_ * n_; }

    bool valid_axis_set(const AxisSet& axes) const;
    bool has_component(const AxisSet& axes) const { return comps_.count(axes) > 0; }
    /// Mutable access; creates a zero-filled component when absent.
    std::vector<cd>& component(const AxisSet& axes);
    /// Read access; nullptr when the component is absent (i.e. zero).
    const std::vector<cd>* find_component(const AxisSet& axes) const;
    const std::map<AxisSet, std::vector<cd>>& components() const { return comps_; }
    std::map<AxisSet, std::vector<cd>>& components() { return comps_; }

    /// All strictly increasing axis sets of the form's degree.
    static std::vector<AxisSet> axis_sets(int dim, int degree);

    double max_abs() const;
    /// Max over values of ||X + X*||; the skew-Hermitian defect.
    double skew_defect() const;

    MatrixForm& operator+=(const MatrixForm& o);
    MatrixForm& operator-=(const MatrixForm& o);
    MatrixForm& operator*=(cd scale);

    friend MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }
    friend MatrixForm operator-(MatrixForm a, const MatrixForm& b) { return a -= b; }
    friend MatrixForm operator*(cd s, MatrixForm a) { return a *= s; }

private:
    Mesh mesh_;
    int degree_ = 0;
    int n_ = 1;
    int loop_samples_ = 0;
    std::map<AxisSet, std::vector<cd>> comps_;
};

/// Scalar 0-form with a constant value.
MatrixForm constant_scalar_form(const Mesh& mesh, cd value);

/// Matrix-valued 0-form taking the same value at every grid point.
MatrixForm constant_matrix_form(const Mesh& mesh, const cmat& value);

/// d via FFT-spectral derivatives on circle axes and 4th-order finite
/// differences on interval axes; standard alternating-sum assembly.
MatrixForm exterior_derivative(const MatrixForm& w);

/// Signed shuffle-sum wedge with pointwise matrix products. Ranks must agree
/// or one operand must be scalar (n = 1); a plain operand broadcasts across
/// the other's loop values.
MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);

/// [a,b] = a^b - (-1)^{pq} b^a.
MatrixForm bracket(const MatrixForm& a, const MatrixForm& b);

/// Weighted tensor-product quadrature of a top-degree plain form: trapezoid
/// on circles, Gauss-Legendre-resampled weights on intervals, times the mesh
/// weight when present.
cmat integrate_top(const MatrixForm& w, int gl_nodes = 32);

/// Integration over the fibre along one axis: components containing the axis
/// differential are integrated (sign from moving that differential to the
/// last slot); the rest are discarded. Degree drops by one, the axis leaves
/// the mesh.
MatrixForm fiber_integrate(const MatrixForm& w, int axis, int gl_nodes = 32);

/// Pullback along the coordinate slice x_axis = index: drops components
/// containing the axis and restricts the rest.
MatrixForm slice(const MatrixForm& w, int axis, int index);

/// Value-wise trace: n x n values become scalars (loop depth preserved).
MatrixForm trace_form(const MatrixForm& w);

/// Trapezoid integral of the loop values over theta in [0,2*pi); the result
/// is a plain form.
MatrixForm loop_value_integral(const MatrixForm& w);

/// Spectral theta-derivative of the loop values.
MatrixForm loop_value_derivative(const MatrixForm& w);

/// Broadcast a plain form to one with `loop_samples` constant loop values.
MatrixForm broadcast_loop_values(const MatrixForm& w, int loop_samples);

/// Value-block direct sum (top-left / bottom-right padding with zeros).
MatrixForm block_sum_values(const MatrixForm& a, const MatrixForm& b);

/// Periods of a scalar plain form over the products of circle axes matching
/// its degree, with the remaining axes sliced at index 0.
std::map<AxisSet, cd> circle_periods(const MatrixForm& w);

/// Graded forms: degree -> homogeneous part. Used for character series.
using GradedForm = std::map<int, MatrixForm>;

GradedForm graded_add(const GradedForm& a, const GradedForm& b);
GradedForm graded_scale(cd s, const GradedForm& a);
GradedForm graded_d(const GradedForm& a);
double graded_max_abs(const GradedForm& a);
double graded_distance(const GradedForm& a, const GradedForm& b);

} // namespace caloron
