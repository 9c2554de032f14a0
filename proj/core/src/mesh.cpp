#include "caloron/mesh.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

#include "caloron/quadrature.hpp"

namespace caloron {

namespace quadrature {

namespace {

template <int N>
void expand_gauss(std::vector<double>& nodes, std::vector<double>& weights) {
    using table = boost::math::quadrature::gauss<double, N>;
    // Boost stores the nonnegative half of the [-1,1] rule; mirror it, then
    // map to [0,1].
    nodes.clear();
    weights.clear();
    const auto& xs = table::abscissa();
    const auto& ws = table::weights();
    for (size_t i = xs.size(); i-- > 0;) {
        if (xs[i] > 0.0) {
            nodes.push_back(0.5 * (1.0 - xs[i]));
            weights.push_back(0.5 * ws[i]);
        }
    }
    for (size_t i = 0; i < xs.size(); ++i) {
        nodes.push_back(0.5 * (1.0 + xs[i]));
        weights.push_back(0.5 * ws[i]);
    }
}

} // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    switch (n) {
        case 4: expand_gauss<4>(nodes, weights); return;
        case 8: expand_gauss<8>(nodes, weights); return;
        case 16: expand_gauss<16>(nodes, weights); return;
        case 32: expand_gauss<32>(nodes, weights); return;
        case 64: expand_gauss<64>(nodes, weights); return;
        default: throw DimensionMismatch("gauss_legendre_01: supported node counts are 4,8,16,32,64");
    }
}

std::vector<double> interval_node_weights(int n, int gl_nodes) {
    if (n < 6) throw DimensionMismatch("interval_node_weights: need at least 6 nodes");
    std::vector<double> xs, ws;
    gauss_legendre_01(gl_nodes, xs, ws);
    std::vector<double> eff(static_cast<size_t>(n), 0.0);
    const double h = 1.0 / (n - 1);
    for (size_t g = 0; g < xs.size(); ++g) {
        // 6-point Lagrange window centered on the node.
        int lo = static_cast<int>(std::floor(xs[g] / h)) - 2;
        lo = std::max(0, std::min(lo, n - 6));
        for (int j = lo; j < lo + 6; ++j) {
            double l = 1.0;
            for (int k = lo; k < lo + 6; ++k) {
                if (k == j) continue;
                l *= (xs[g] - k * h) / ((j - k) * h);
            }
            eff[static_cast<size_t>(j)] += ws[g] * l;
        }
    }
    return eff;
}

} // namespace quadrature

Mesh::Mesh(std::vector<MeshFactor> factors) : factors_(std::move(factors)) {
    for (const MeshFactor& f : factors_) {
        if (f.samples < 8) throw DimensionMismatch("mesh factors need at least 8 samples");
        if (f.kind == FactorKind::Circle && (f.samples & (f.samples - 1)) != 0)
            throw DimensionMismatch("circle factors need a power-of-two sample count");
    }
}

long Mesh::total_points() const {
    long n = 1;
    for (const MeshFactor& f : factors_) n *= f.samples;
    return n;
}

std::vector<int> Mesh::shape() const {
    std::vector<int> s;
    s.reserve(factors_.size());
    for (const MeshFactor& f : factors_) s.push_back(f.samples);
    return s;
}

std::vector<long> Mesh::point_strides() const {
    std::vector<long> st(factors_.size(), 1);
    for (int a = dim() - 2; a >= 0; --a)
        st[static_cast<size_t>(a)] =
            st[static_cast<size_t>(a + 1)] * factors_[static_cast<size_t>(a + 1)].samples;
    return st;
}

double Mesh::coordinate(int axis, int index) const {
    const MeshFactor& f = factor(axis);
    if (f.kind == FactorKind::Circle) return theta_period * index / f.samples;
    return static_cast<double>(index) / (f.samples - 1);
}

void Mesh::set_weight(std::vector<double> w) {
    if (static_cast<long>(w.size()) != total_points())
        throw DimensionMismatch("weight grid size does not match the mesh");
    weight_ = std::move(w);
}

std::vector<double> Mesh::axis_quadrature(int axis, int gl_nodes) const {
    const MeshFactor& f = factor(axis);
    if (f.kind == FactorKind::Circle)
        return std::vector<double>(static_cast<size_t>(f.samples), theta_period / f.samples);
    return quadrature::interval_node_weights(f.samples, gl_nodes);
}

Mesh Mesh::with_circle_appended(int samples) const {
    if (has_weight())
        throw ValidationError("cannot append a factor to a weighted mesh");
    std::vector<MeshFactor> fs = factors_;
    fs.push_back({FactorKind::Circle, samples});
    return Mesh(std::move(fs));
}

Mesh Mesh::without_axis(int axis) const {
    if (axis < 0 || axis >= dim()) throw InvalidAxis("mesh axis out of range");
    if (has_weight())
        throw ValidationError("cannot drop a factor of a weighted mesh");
    std::vector<MeshFactor> fs = factors_;
    fs.erase(fs.begin() + axis);
    return Mesh(std::move(fs));
}

Mesh make_circle_mesh(int samples) { return Mesh({{FactorKind::Circle, samples}}); }

Mesh make_torus_mesh(const std::vector<int>& samples_per_circle) {
    std::vector<MeshFactor> fs;
    fs.reserve(samples_per_circle.size());
    for (int n : samples_per_circle) fs.push_back({FactorKind::Circle, n});
    return Mesh(std::move(fs));
}

Mesh make_s3_chart_mesh(int n_u, int n_phi1, int n_phi2) {
    Mesh m({{FactorKind::Interval, n_u},
            {FactorKind::Circle, n_phi1},
            {FactorKind::Circle, n_phi2}});
    std::vector<double> w(static_cast<size_t>(m.total_points()));
    long idx = 0;
    for (int iu = 0; iu < n_u; ++iu) {
        const double eta = 0.5 * pi * m.coordinate(0, iu);
        const double jac = 0.5 * pi * std::cos(eta) * std::sin(eta);
        for (long p = 0; p < static_cast<long>(n_phi1) * n_phi2; ++p) w[idx++] = jac;
    }
    m.set_weight(std::move(w));
    return m;
}

} // namespace caloron
