#pragma once

#include <vector>

namespace caloron::quadrature {

/// Gauss-Legendre nodes and weights on [0,1]; n in {4, 8, 16, 32, 64}.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Effective quadrature weights on the n-node uniform grid of [0,1]:
/// `gl_nodes`-point Gauss-Legendre applied to the local 6-point Lagrange
/// interpolant of the samples. integral(f) ~ sum_j w[j] f(j/(n-1)).
std::vector<double> interval_node_weights(int n, int gl_nodes = 32);

} // namespace caloron::quadrature
