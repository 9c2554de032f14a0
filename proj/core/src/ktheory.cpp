#include "caloron/ktheory.hpp"

#include <algorithm>
#include <cmath>

#include "caloron/invariants.hpp"
#include "caloron/quadrature.hpp"

namespace caloron {

namespace {

TwzElement pad_to_rank(const TwzElement& e, int target) {
    if (e.g.spec.rank_n >= target) return e;
    const int extra = target - e.g.spec.rank_n;
    TwzElement out = e;
    out.g.spec.rank_n = target;
    out.g.values = block_sum_values(
        e.g.values, constant_matrix_form(e.g.values.mesh(), cmat::Identity(extra, extra)));
    out.notes.push_back("rank padded " + std::to_string(e.g.spec.rank_n) + " -> " +
                        std::to_string(target));
    return out;
}

} // namespace

TwzElement twz_combine(const TwzElement& a, const TwzElement& b) {
    if (!a.g.values.mesh().same_factors(b.g.values.mesh()))
        throw DimensionMismatch("twz combine: mesh mismatch");
    const int common = std::max(a.g.spec.rank_n, b.g.spec.rank_n);
    const TwzElement left = pad_to_rank(a, common);
    const TwzElement right = pad_to_rank(b, common);
    TwzElement out;
    out.g.spec = GroupSpec{a.g.spec.family, 2 * common};
    out.g.values = block_sum_values(left.g.values, right.g.values);
    out.chi = graded_add(left.chi, right.chi);
    out.notes = left.notes;
    out.notes.insert(out.notes.end(), right.notes.begin(), right.notes.end());
    return out;
}

TwzElement twz_inverse(const TwzElement& e) {
    TwzElement out;
    out.g.spec = e.g.spec;
    out.g.values = map_inverse_values(e.g);
    out.chi = graded_scale(cd(-1.0, 0.0), e.chi);
    out.notes = e.notes;
    return out;
}

GradedForm twz_curvature(const TwzElement& e) {
    return graded_add(odd_chern_character(e.g), graded_d(e.chi));
}

void check_homotopy_endpoints(const HomotopySpec& h, double tol) {
    if (!h.value || !h.derivative)
        throw ValidationError("homotopy: value/derivative rules are required");
    if ((h.value(0.0) - h.g0).max_abs() > tol || (h.value(1.0) - h.g1).max_abs() > tol)
        throw ValidationError("homotopy: evaluation at t = 0, 1 disagrees with the endpoints");
}

GradedForm homotopy_cs_integral(const HomotopySpec& h, int t_quad_nodes) {
    check_homotopy_endpoints(h);
    std::vector<double> xs, ws;
    quadrature::gauss_legendre_01(t_quad_nodes, xs, ws);
    const int dim = h.g0.mesh().dim();

    GradedForm acc;
    for (size_t q = 0; q < xs.size(); ++q) {
        const MatrixForm G = h.value(xs[q]);
        const MatrixForm D = h.derivative(xs[q]);
        GroupMap as_map{h.spec, G};
        const MatrixForm inv = map_inverse_values(as_map);
        const MatrixForm a = wedge(inv, D);
        const MatrixForm W = wedge(inv, exterior_derivative(G));

        MatrixForm term = a;
        for (int j = 0; 2 * j <= dim; ++j) {
            if (j > 0) term = wedge(wedge(term, W), W);
            MatrixForm part = trace_form(term);
            part *= cd(ws[q], 0.0);
            auto it = acc.find(2 * j);
            if (it == acc.end())
                acc.emplace(2 * j, std::move(part));
            else
                it->second += part;
        }
    }
    for (auto& [deg, part] : acc) {
        const int j = deg / 2;
        cd scale(to_double(homotopy_integral_rational(j)), 0.0);
        for (int i = 0; i <= j; ++i) scale *= -inv_two_pi_i;
        part *= scale;
    }
    return acc;
}

double homotopy_integrand_max(const HomotopySpec& h, int j, int t_quad_nodes) {
    std::vector<double> xs, ws;
    quadrature::gauss_legendre_01(t_quad_nodes, xs, ws);
    double worst = 0.0;
    for (size_t q = 0; q < xs.size(); ++q) {
        const MatrixForm G = h.value(xs[q]);
        const MatrixForm D = h.derivative(xs[q]);
        GroupMap as_map{h.spec, G};
        const MatrixForm inv = map_inverse_values(as_map);
        MatrixForm term = wedge(inv, D);
        const MatrixForm W = wedge(inv, exterior_derivative(G));
        for (int i = 0; i < j; ++i) term = wedge(wedge(term, W), W);
        worst = std::max(worst, trace_form(term).max_abs());
    }
    return worst;
}

HomotopySpec nullhomotopy_construct(const GroupMap& g) {
    if (g.values.degree() != 0 || g.values.loop_samples() != 0)
        throw DimensionMismatch("nullhomotopy: plain degree-0 map expected");
    const int n = g.spec.rank_n;
    const Mesh mesh = g.values.mesh();

    const MatrixForm one_n = constant_matrix_form(mesh, cmat::Identity(n, n));
    const MatrixForm A = block_sum_values(g.values, one_n);
    const MatrixForm B = block_sum_values(one_n, map_inverse_values(g));

    auto rotation = [mesh, n](double angle) {
        cmat r = cmat::Zero(2 * n, 2 * n);
        const double c = std::cos(angle), s = std::sin(angle);
        for (int i = 0; i < n; ++i) {
            r(i, i) = c;
            r(i, n + i) = -s;
            r(n + i, i) = s;
            r(n + i, n + i) = c;
        }
        return constant_matrix_form(mesh, r);
    };
    auto rotation_rate = [mesh, n](double angle) {
        // d/dt of the rotation with angle pi t / 2.
        cmat r = cmat::Zero(2 * n, 2 * n);
        const double c = std::cos(angle), s = std::sin(angle);
        const double rate = pi / 2.0;
        for (int i = 0; i < n; ++i) {
            r(i, i) = -rate * s;
            r(i, n + i) = -rate * c;
            r(n + i, i) = rate * c;
            r(n + i, n + i) = -rate * s;
        }
        return constant_matrix_form(mesh, r);
    };

    HomotopySpec out;
    out.spec = GroupSpec{g.spec.family, 2 * n};
    out.value = [A, B, rotation](double t) {
        const double angle = pi * t / 2.0;
        return wedge(wedge(wedge(A, rotation(angle)), B), rotation(-angle));
    };
    out.derivative = [A, B, rotation, rotation_rate](double t) {
        const double angle = pi * t / 2.0;
        const MatrixForm R = rotation(angle);
        const MatrixForm Rinv = rotation(-angle);
        const MatrixForm Rdot = rotation_rate(angle);
        // d/dt R(-t): the rate matrix evaluated at -angle, negated.
        MatrixForm Rinv_dot = rotation_rate(-angle);
        Rinv_dot *= cd(-1.0, 0.0);
        return wedge(A, wedge(wedge(Rdot, B), Rinv) + wedge(wedge(R, B), Rinv_dot));
    };
    out.g0 = out.value(0.0);
    out.g1 = out.value(1.0);
    return out;
}

EquivalenceDecision twz_equivalent(const TwzElement& e0, const TwzElement& e1,
                                   const HomotopySpec& h, double tol,
                                   bool flip_comparison_sign) {
    check_homotopy_endpoints(h);
    const int common = std::max(e0.g.spec.rank_n, e1.g.spec.rank_n);
    const TwzElement lo = pad_to_rank(e0, common);
    const TwzElement hi = pad_to_rank(e1, common);
    if ((h.g0 - lo.g.values).max_abs() > 1e-10 || (h.g1 - hi.g.values).max_abs() > 1e-10)
        throw ValidationError("twz equivalence: homotopy endpoints do not match the elements");

    GradedForm diff = homotopy_cs_integral(h);
    GradedForm chi_diff = graded_add(lo.chi, graded_scale(cd(-1.0, 0.0), hi.chi));
    if (flip_comparison_sign) chi_diff = graded_scale(cd(-1.0, 0.0), chi_diff);
    diff = graded_add(diff, graded_scale(cd(-1.0, 0.0), chi_diff));

    EquivalenceDecision out;
    for (const auto& [deg, part] : diff) {
        for (const auto& [cycle, period] : circle_periods(part))
            out.max_period_distance = std::max(out.max_period_distance, std::abs(period));
    }
    out.equivalent = out.max_period_distance <= tol;
    return out;
}

} // namespace caloron
