#pragma once

#include <vector>

#include "caloron/dense.hpp"

namespace caloron {

enum class FactorKind { Circle, Interval };

/// One factor of a product mesh. Circles are sampled at 2*pi*j/N (periodic,
/// power-of-two N); intervals at j/(N-1) on [0,1], endpoints included.
struct MeshFactor {
    FactorKind kind = FactorKind::Circle;
    int samples = 0;
    bool operator==(const MeshFactor&) const = default;
};

/// Product of circle and interval factors with the product orientation in
/// factor order, plus an optional strictly positive integration weight
/// sampled on the grid (used by chart parametrizations such as the 3-sphere).
class Mesh {
public:
    Mesh() = default;
    explicit Mesh(std::vector<MeshFactor> factors);

    int dim() const { return static_cast<int>(factors_.size()); }
    const MeshFactor& factor(int a) const { return factors_.at(static_cast<size_t>(a)); }
    const std::vector<MeshFactor>& factors() const { return factors_; }

    long total_points() const;
    std::vector<int> shape() const;
    /// Row-major point strides (last axis fastest), in units of points.
    std::vector<long> point_strides() const;
    double coordinate(int axis, int index) const;

    bool has_weight() const { return !weight_.empty(); }
    const std::vector<double>& weight() const { return weight_; }
    void set_weight(std::vector<double> w);

    /// Per-node quadrature weights along one axis: uniform 2*pi/N on circles,
    /// Gauss-Legendre-resampled weights on intervals.
    std::vector<double> axis_quadrature(int axis, int gl_nodes = 32) const;

    Mesh with_circle_appended(int samples) const;
    Mesh without_axis(int axis) const;

    /// Factor-level equality; the weight does not participate (it is
    /// integration data, not manifold structure).
    bool same_factors(const Mesh& o) const { return factors_ == o.factors_; }

private:
    std::vector<MeshFactor> factors_;
    std::vector<double> weight_;
};

Mesh make_circle_mesh(int samples);
Mesh make_torus_mesh(const std::vector<int>& samples_per_circle);

/// Hopf-like chart of the 3-sphere: Interval(n_u) x Circle(n_phi1) x
/// Circle(n_phi2) with the chart Jacobian (pi/2) cos(pi u/2) sin(pi u/2)
/// installed as the mesh weight. Coordinate-degenerate boundary values sit at
/// interval endpoints, which the Gauss-Legendre interior nodes avoid.
Mesh make_s3_chart_mesh(int n_u, int n_phi1, int n_phi2);

} // namespace caloron
