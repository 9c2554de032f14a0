#include "caloron/gauge.hpp"

#include <algorithm>
#include <string>

namespace caloron {

void check_gauge_pair(const GaugePair& p) {
    if (p.connection.degree() != 1 || p.higgs.degree() != 0)
        throw DimensionMismatch("gauge pair: connection must be degree 1 and higgs degree 0");
    if (!p.connection.mesh().same_factors(p.higgs.mesh()))
        throw DimensionMismatch("gauge pair: connection and higgs live on different meshes");
    if (p.connection.rank() != p.spec.rank_n || p.higgs.rank() != p.spec.rank_n)
        throw DimensionMismatch("gauge pair: value rank disagrees with the group spec");
    if (p.connection.loop_samples() == 0 || p.higgs.loop_samples() != p.connection.loop_samples())
        throw DimensionMismatch("gauge pair: both members must carry the same loop depth");
    if (p.spec.family != GroupFamily::GeneralLinearGL) {
        // Unitary-family data is algebra-valued: skew-Hermitian pointwise.
        const double defect = std::max(p.connection.skew_defect(), p.higgs.skew_defect());
        if (defect > 1e-8)
            throw ValidationError("gauge pair: values are not skew-Hermitian (defect " +
                                  std::to_string(defect) + ")");
    }
}

MatrixForm map_inverse_values(const GroupMap& g) {
    if (g.values.degree() != 0) throw DimensionMismatch("group map values must be a 0-form");
    MatrixForm out = g.values;
    const int n = out.rank();
    const long blocks = out.mesh().total_points() * out.value_depth();
    for (auto& [axes, data] : out.components()) {
        for (long b = 0; b < blocks; ++b) {
            cd* blk = data.data() + b * n * n;
            if (g.spec.family == GroupFamily::GeneralLinearGL) {
                mat_to_block(lu_inverse(block_to_mat(blk, n)), blk, n);
            } else {
                cmat m = block_to_mat(blk, n);
                mat_to_block(m.adjoint().eval(), blk, n);
            }
        }
    }
    return out;
}

MatrixForm map_mc_pullback(const GroupMap& g, McSide side) {
    MatrixForm dg = exterior_derivative(g.values);
    MatrixForm inv = map_inverse_values(g);
    return side == McSide::Left ? wedge(inv, dg) : wedge(dg, inv);
}

MatrixForm map_theta_log_derivative(const GroupMap& g) {
    if (g.values.loop_samples() == 0)
        throw DimensionMismatch("theta log-derivative needs a loop-valued map");
    return wedge(map_inverse_values(g), loop_value_derivative(g.values));
}

double map_based_defect(const GroupMap& g) {
    if (g.values.loop_samples() == 0)
        throw DimensionMismatch("basedness is a property of loop-valued maps");
    const std::vector<cd>* data = g.values.find_component({});
    if (!data) return 1.0; // the zero grid is nowhere the identity
    const int n = g.values.rank();
    const int L = g.values.loop_samples();
    const long pts = g.values.mesh().total_points();
    double worst = 0.0;
    for (long p = 0; p < pts; ++p) {
        const cd* blk = data->data() + static_cast<long>(p) * L * n * n;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                worst = std::max(worst, std::abs(blk[r * n + c] - (r == c ? cd(1.0) : cd(0.0))));
    }
    return worst;
}

double loop_slice0_defect(const MatrixForm& w) {
    if (w.loop_samples() == 0) throw DimensionMismatch("slice-0 defect needs loop values");
    const int L = w.loop_samples();
    const int nn = w.rank() * w.rank();
    const long pts = w.mesh().total_points();
    double worst = 0.0;
    for (const auto& [axes, data] : w.components())
        for (long p = 0; p < pts; ++p)
            for (int e = 0; e < nn; ++e)
                worst = std::max(worst, std::abs(data[(static_cast<long>(p) * L) * nn + e]));
    return worst;
}

MatrixForm curvature(const MatrixForm& a) {
    if (a.degree() != 1) throw DimensionMismatch("curvature expects a 1-form");
    return exterior_derivative(a) + wedge(a, a);
}

MatrixForm higgs_cov_derivative(const GaugePair& p) {
    check_gauge_pair(p);
    return exterior_derivative(p.higgs) + bracket(p.connection, p.higgs) -
           loop_value_derivative(p.connection);
}

double skew_project_form(MatrixForm& w) {
    const int n = w.rank();
    const long blocks = w.mesh().total_points() * w.value_depth();
    double worst = 0.0;
    for (auto& [axes, data] : w.components()) {
        for (long b = 0; b < blocks; ++b) {
            cd* blk = data.data() + b * n * n;
            for (int r = 0; r < n; ++r) {
                for (int c = r; c < n; ++c) {
                    const cd x = blk[r * n + c];
                    const cd yt = std::conj(blk[c * n + r]);
                    worst = std::max(worst, std::abs(x + yt));
                    const cd s = 0.5 * (x - yt);
                    blk[r * n + c] = s;
                    blk[c * n + r] = -std::conj(s);
                }
            }
        }
    }
    return worst;
}

GaugeTransformed gauge_transform_pair(const GaugePair& p, const GroupMap& gamma,
                                      double based_tol) {
    check_gauge_pair(p);
    if (gamma.values.loop_samples() != p.connection.loop_samples() ||
        gamma.values.rank() != p.spec.rank_n ||
        !gamma.values.mesh().same_factors(p.connection.mesh()))
        throw DimensionMismatch("gauge transform: map shape disagrees with the pair");
    const double based = map_based_defect(gamma);
    if (based > based_tol)
        throw NonBasedGauge("gauge transform: loop values do not start at the identity");

    MatrixForm inv = map_inverse_values(gamma);
    GaugeTransformed out;
    out.pair.spec = p.spec;
    out.pair.connection =
        wedge(wedge(inv, p.connection), gamma.values) + map_mc_pullback(gamma, McSide::Left);
    out.pair.higgs =
        wedge(wedge(inv, p.higgs), gamma.values) + map_theta_log_derivative(gamma);

    if (p.spec.family != GroupFamily::GeneralLinearGL) {
        const double da = skew_project_form(out.pair.connection);
        const double dp = skew_project_form(out.pair.higgs);
        out.pre_projection_skew_defect = std::max(da, dp);
    }
    return out;
}

MatrixForm extend_to_caloron(const MatrixForm& horizontal, const MatrixForm* theta_part) {
    const int L = horizontal.loop_samples();
    if (L == 0) throw DimensionMismatch("caloron extension expects loop-valued data");
    if (theta_part &&
        (theta_part->loop_samples() != L || theta_part->rank() != horizontal.rank() ||
         !theta_part->mesh().same_factors(horizontal.mesh()) ||
         theta_part->degree() != horizontal.degree() - 1))
        throw DimensionMismatch("caloron extension: theta part is inconsistent");
    const int base_dim = horizontal.mesh().dim();
    const Mesh ext = horizontal.mesh().with_circle_appended(L);
    MatrixForm out(ext, horizontal.degree(), horizontal.rank(), 0);
    // The appended circle is the last, fastest-varying axis, so the flat
    // layouts [point][theta][entries] and [extended point][entries] coincide
    // and every component transfers by plain copy. The appended differential
    // is already in the last (canonical) slot, so no signs appear.
    for (const auto& [axes, data] : horizontal.components()) out.component(axes) = data;
    if (theta_part)
        for (const auto& [axes, data] : theta_part->components()) {
            AxisSet target = axes;
            target.push_back(base_dim);
            out.component(target) = data;
        }
    return out;
}

std::pair<MatrixForm, MatrixForm> split_from_caloron(const MatrixForm& w, int theta_axis) {
    if (w.loop_samples() != 0)
        throw DimensionMismatch("caloron split expects a plain form");
    if (theta_axis < 0 || theta_axis >= w.mesh().dim() ||
        w.mesh().factor(theta_axis).kind != FactorKind::Circle)
        throw InvalidAxis("caloron split: designated axis is not a circle factor");

    const int L = w.mesh().factor(theta_axis).samples;
    const Mesh base = w.mesh().without_axis(theta_axis);
    MatrixForm horizontal(base, w.degree(), w.rank(), L);
    MatrixForm theta_part(base, std::max(0, w.degree() - 1), w.rank(), L);

    const auto pst = w.mesh().point_strides();
    const long suf = pst[static_cast<size_t>(theta_axis)];
    const long pre = w.mesh().total_points() / (static_cast<long>(L) * suf);
    const long nn = static_cast<long>(w.rank()) * w.rank();

    for (const auto& [axes, data] : w.components()) {
        const bool carries = std::find(axes.begin(), axes.end(), theta_axis) != axes.end();
        AxisSet target;
        int trailing = 0;
        for (int b : axes) {
            if (b == theta_axis) continue;
            if (b > theta_axis) ++trailing;
            target.push_back(b > theta_axis ? b - 1 : b);
        }
        // Moving the theta differential past the `trailing` later axes to the
        // last slot costs one sign each.
        const double sign = (carries && (trailing & 1)) ? -1.0 : 1.0;
        std::vector<cd>& dst =
            carries ? theta_part.component(target) : horizontal.component(target);
        for (long ip = 0; ip < pre; ++ip)
            for (long is = 0; is < suf; ++is)
                for (long t = 0; t < L; ++t) {
                    const long src = ((ip * L + t) * suf + is) * nn;
                    const long dest = ((ip * suf + is) * L + t) * nn;
                    for (long e = 0; e < nn; ++e) dst[dest + e] = sign * data[src + e];
                }
    }
    return {std::move(horizontal), std::move(theta_part)};
}

MatrixForm caloron_transform(const GaugePair& p) {
    check_gauge_pair(p);
    return extend_to_caloron(p.connection, &p.higgs);
}

GaugePair inverse_caloron_transform(const MatrixForm& a, int theta_axis, GroupSpec spec) {
    if (a.degree() != 1)
        throw DimensionMismatch("inverse caloron transform expects a 1-form");
    if (a.rank() != spec.rank_n)
        throw DimensionMismatch("inverse caloron transform: rank disagrees with the group spec");
    auto [horizontal, theta_part] = split_from_caloron(a, theta_axis);
    GaugePair out;
    out.spec = spec;
    out.connection = std::move(horizontal);
    out.higgs = std::move(theta_part);
    return out;
}

} // namespace caloron
