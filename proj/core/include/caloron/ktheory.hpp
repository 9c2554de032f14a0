#pragma once

#include <functional>
#include <string>

#include "caloron/gauge.hpp"

namespace caloron {

/// A generator (g, chi): a sampled map into U(n) together with an
/// even-degree scalar form on the same mesh.
struct TwzElement {
    GroupMap g;
    GradedForm chi;
    /// Bookkeeping appended by operations (e.g. rank padding); not part of
    /// the serialized value.
    std::vector<std::string> notes;
};

/// (g1, chi1) + (g2, chi2) = (g1 + g2 block sum, chi1 + chi2). Mismatched
/// ranks pad the smaller map with an identity block and record a note.
TwzElement twz_combine(const TwzElement& a, const TwzElement& b);

/// Inverse representative (g^{-1}, -chi).
TwzElement twz_inverse(const TwzElement& e);

/// Curvature map F[g, chi] = odd character of g plus d chi; odd graded.
GradedForm twz_curvature(const TwzElement& e);

/// A homotopy of maps into the group: the value and its exact t-derivative
/// at any homotopy time, with stored endpoints.
struct HomotopySpec {
    GroupSpec spec{};
    std::function<MatrixForm(double)> value;
    std::function<MatrixForm(double)> derivative;
    MatrixForm g0, g1;
};

/// Throws ValidationError unless value(0)/value(1) match the stored
/// endpoints to tol.
void check_homotopy_endpoints(const HomotopySpec& h, double tol = 1e-10);

/// sum_j (-j!/(2j)!) (-1/(2 pi i))^{j+1} int_0^1 tr(g^{-1} dg/dt (g^{-1}dg)^{2j}) dt,
/// truncated at the mesh dimension; even graded parts keyed by 2j.
GradedForm homotopy_cs_integral(const HomotopySpec& h, int t_quad_nodes = 16);

/// Max over grid and quadrature nodes of |tr(g^{-1} dg/dt (g^{-1}dg)^{2j})|,
/// the pointwise integrand of the degree-2j term.
double homotopy_integrand_max(const HomotopySpec& h, int j, int t_quad_nodes = 16);

/// The explicit homotopy from g + g^{-1} (block sum) to the identity in
/// U(2n): X_t = A R(t) B R(t)^{-1} with A = diag(g, 1), B = diag(1, g^{-1})
/// and R the block rotation by angle pi t / 2.
HomotopySpec nullhomotopy_construct(const GroupMap& g);

struct EquivalenceDecision {
    bool equivalent = false;
    /// Largest distance of any generating-cycle period of
    /// (homotopy integral - (chi0 - chi1)) from zero.
    double max_period_distance = 0.0;
};

/// Decides CS-equivalence of (g0, chi0) and (g1, chi1) along the homotopy h
/// by the period test at tolerance `tol`. With flip_comparison_sign the
/// integral is compared against chi1 - chi0 instead; both sign conventions
/// are in circulation and the flag selects the opposite one.
EquivalenceDecision twz_equivalent(const TwzElement& e0, const TwzElement& e1,
                                   const HomotopySpec& h, double tol = 1e-6,
                                   bool flip_comparison_sign = false);

} // namespace caloron
