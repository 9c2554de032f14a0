#include "caloron/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "caloron/quadrature.hpp"

namespace caloron {

namespace {

// Coefficients over path nodes reproducing the Catmull-Rom interpolant (or
// its exact t-derivative) at t. Two nodes reduce to the affine path with
// constant derivative.
std::map<int, double> hermite_weights(const std::vector<double>& ts, double t, bool derivative) {
    const int m = static_cast<int>(ts.size());
    int i = 0;
    while (i + 2 < m && ts[static_cast<size_t>(i + 1)] <= t) ++i;
    const double h = ts[static_cast<size_t>(i + 1)] - ts[static_cast<size_t>(i)];
    const double s = (t - ts[static_cast<size_t>(i)]) / h;
    const double s2 = s * s, s3 = s2 * s;

    double w00, w10, w01, w11;
    if (!derivative) {
        w00 = 2 * s3 - 3 * s2 + 1;
        w10 = h * (s3 - 2 * s2 + s);
        w01 = -2 * s3 + 3 * s2;
        w11 = h * (s3 - s2);
    } else {
        w00 = (6 * s2 - 6 * s) / h;
        w10 = 3 * s2 - 4 * s + 1;
        w01 = (-6 * s2 + 6 * s) / h;
        w11 = 3 * s2 - 2 * s;
    }

    std::map<int, double> out;
    out[i] += w00;
    out[i + 1] += w01;
    auto add_slope = [&](int j, double c) {
        // Centered slope at interior nodes, one-sided at the ends.
        const int lo = j == 0 ? 0 : j - 1;
        const int hi = j == m - 1 ? m - 1 : j + 1;
        const double span = ts[static_cast<size_t>(hi)] - ts[static_cast<size_t>(lo)];
        out[lo] += -c / span;
        out[hi] += c / span;
    };
    add_slope(i, w10);
    add_slope(i + 1, w11);
    return out;
}

MatrixForm combine_forms(const std::vector<const MatrixForm*>& nodes,
                         const std::map<int, double>& weights) {
    MatrixForm acc;
    bool first = true;
    for (const auto& [j, c] : weights) {
        MatrixForm term = *nodes[static_cast<size_t>(j)];
        term *= cd(c, 0.0);
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc += term;
        }
    }
    return acc;
}

void check_path_times(const std::vector<double>& ts, size_t node_count) {
    if (ts.size() != node_count || ts.size() < 2)
        throw DimensionMismatch("path: need matching node/time lists with at least two entries");
    if (ts.front() != 0.0 || ts.back() != 1.0)
        throw DimensionMismatch("path: node times must start at 0 and end at 1");
    for (size_t i = 1; i < ts.size(); ++i)
        if (ts[i] <= ts[i - 1]) throw DimensionMismatch("path: node times must increase");
}

} // namespace

MatrixForm sym_trace(const SymTrace& f, const std::vector<MatrixForm>& args) {
    if (f.k < 1 || static_cast<int>(args.size()) != f.k)
        throw DimensionMismatch("sym_trace: argument count must equal the trace degree");
    const int k = f.k;
    std::vector<int> idx(static_cast<size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);

    MatrixForm acc;
    bool first = true;
    do {
        int parity = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (idx[static_cast<size_t>(a)] > idx[static_cast<size_t>(b)])
                    parity += args[static_cast<size_t>(idx[static_cast<size_t>(a)])].degree() *
                              args[static_cast<size_t>(idx[static_cast<size_t>(b)])].degree();
        MatrixForm prod = args[static_cast<size_t>(idx[0])];
        for (int i = 1; i < k; ++i) prod = wedge(prod, args[static_cast<size_t>(idx[static_cast<size_t>(i)])]);
        MatrixForm term = trace_form(prod);
        if (parity & 1) term *= cd(-1.0, 0.0);
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc += term;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));

    acc *= to_double(sym_trace_rational(k)) * inv_two_pi_i_pow(k);
    return acc;
}

MatrixForm chern_weil(const SymTrace& f, const MatrixForm& a) {
    const MatrixForm F = curvature(a);
    return sym_trace(f, std::vector<MatrixForm>(static_cast<size_t>(f.k), F));
}

GradedForm chern_character_even(const MatrixForm& a) {
    GradedForm out;
    out.emplace(0, constant_scalar_form(a.mesh(), cd(a.rank(), 0.0)));
    const MatrixForm F = curvature(a);
    MatrixForm Fpow = F;
    double jfact = 1.0;
    for (int j = 1; 2 * j <= a.mesh().dim(); ++j) {
        if (j > 1) Fpow = wedge(Fpow, F);
        jfact *= j;
        MatrixForm part = trace_form(Fpow);
        part *= (1.0 / jfact) * inv_two_pi_i_pow(j);
        out.emplace(2 * j, std::move(part));
    }
    return out;
}

MatrixForm string_form(const SymTrace& f, const GaugePair& p) {
    check_gauge_pair(p);
    std::vector<MatrixForm> args;
    args.reserve(static_cast<size_t>(f.k));
    args.push_back(higgs_cov_derivative(p));
    const MatrixForm F = curvature(p.connection);
    for (int i = 0; i < f.k - 1; ++i) args.push_back(F);
    MatrixForm s = loop_value_integral(sym_trace(f, args));
    s *= cd(f.k, 0.0);
    return s;
}

GradedForm total_string_form(const GaugePair& p) {
    GradedForm out;
    for (int k = 1; 2 * k - 1 <= p.connection.mesh().dim(); ++k)
        out.emplace(2 * k - 1, string_form(SymTrace{k}, p));
    return out;
}

namespace {

// Composite rule over the knot intervals: the interpolant is polynomial on
// each, so per-interval Gauss-Legendre integrates cubic-node paths exactly.
void composite_gl(const std::vector<double>& knots, int per_segment, std::vector<double>& xs,
                  std::vector<double>& ws) {
    std::vector<double> x0, w0;
    quadrature::gauss_legendre_01(per_segment, x0, w0);
    xs.clear();
    ws.clear();
    for (size_t s = 0; s + 1 < knots.size(); ++s) {
        const double a = knots[s];
        const double len = knots[s + 1] - knots[s];
        for (size_t q = 0; q < x0.size(); ++q) {
            xs.push_back(a + len * x0[q]);
            ws.push_back(len * w0[q]);
        }
    }
}

} // namespace

SmoothPath::SmoothPath(std::vector<double> times, std::vector<GaugePair> nodes)
    : times_(std::move(times)), nodes_(std::move(nodes)) {
    check_path_times(times_, nodes_.size());
    for (const GaugePair& p : nodes_) {
        check_gauge_pair(p);
        if (!p.connection.mesh().same_factors(nodes_.front().connection.mesh()) ||
            p.spec.rank_n != nodes_.front().spec.rank_n ||
            p.connection.loop_samples() != nodes_.front().connection.loop_samples())
            throw DimensionMismatch("path: nodes have mismatched shapes");
    }
}

SmoothPath SmoothPath::affine(GaugePair start, GaugePair end) {
    return SmoothPath({0.0, 1.0}, {std::move(start), std::move(end)});
}

SmoothPath SmoothPath::through(std::vector<double> times, std::vector<GaugePair> nodes) {
    return SmoothPath(std::move(times), std::move(nodes));
}

GaugePair SmoothPath::at(double t) const {
    const std::map<int, double> w = hermite_weights(times_, t, false);
    std::vector<const MatrixForm*> conns, higgses;
    for (const GaugePair& p : nodes_) {
        conns.push_back(&p.connection);
        higgses.push_back(&p.higgs);
    }
    GaugePair out;
    out.spec = nodes_.front().spec;
    out.connection = combine_forms(conns, w);
    out.higgs = combine_forms(higgses, w);
    return out;
}

std::pair<MatrixForm, MatrixForm> SmoothPath::velocity(double t) const {
    const std::map<int, double> w = hermite_weights(times_, t, true);
    std::vector<const MatrixForm*> conns, higgses;
    for (const GaugePair& p : nodes_) {
        conns.push_back(&p.connection);
        higgses.push_back(&p.higgs);
    }
    return {combine_forms(conns, w), combine_forms(higgses, w)};
}

FormPath::FormPath(std::vector<double> times, std::vector<MatrixForm> nodes)
    : times_(std::move(times)), nodes_(std::move(nodes)) {
    check_path_times(times_, nodes_.size());
    for (const MatrixForm& a : nodes_)
        if (!a.mesh().same_factors(nodes_.front().mesh()) ||
            a.degree() != nodes_.front().degree() || a.rank() != nodes_.front().rank() ||
            a.loop_samples() != nodes_.front().loop_samples())
            throw DimensionMismatch("path: nodes have mismatched shapes");
}

FormPath FormPath::affine(MatrixForm start, MatrixForm end) {
    return FormPath({0.0, 1.0}, {std::move(start), std::move(end)});
}

FormPath FormPath::through(std::vector<double> times, std::vector<MatrixForm> nodes) {
    return FormPath(std::move(times), std::move(nodes));
}

MatrixForm FormPath::at(double t) const {
    std::vector<const MatrixForm*> ptrs;
    for (const MatrixForm& a : nodes_) ptrs.push_back(&a);
    return combine_forms(ptrs, hermite_weights(times_, t, false));
}

MatrixForm FormPath::velocity(double t) const {
    std::vector<const MatrixForm*> ptrs;
    for (const MatrixForm& a : nodes_) ptrs.push_back(&a);
    return combine_forms(ptrs, hermite_weights(times_, t, true));
}

MatrixForm string_potential_relative(const SymTrace& f, const SmoothPath& path,
                                     int t_quad_nodes) {
    std::vector<double> xs, ws;
    composite_gl(path.knot_times(), t_quad_nodes, xs, ws);
    const int k = f.k;

    MatrixForm acc;
    bool first = true;
    for (size_t q = 0; q < xs.size(); ++q) {
        const GaugePair pt = path.at(xs[q]);
        const auto [B, phi] = path.velocity(xs[q]);
        const MatrixForm F = curvature(pt.connection);

        std::vector<MatrixForm> tail(static_cast<size_t>(k - 1), F);
        tail.push_back(phi);
        MatrixForm term = sym_trace(f, tail);
        if (k >= 2) {
            std::vector<MatrixForm> head;
            head.push_back(B);
            for (int i = 0; i < k - 2; ++i) head.push_back(F);
            head.push_back(higgs_cov_derivative(pt));
            MatrixForm mixed = sym_trace(f, head);
            mixed *= cd(k - 1, 0.0);
            term += mixed;
        }
        term *= cd(ws[q], 0.0);
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc += term;
        }
    }
    MatrixForm out = loop_value_integral(acc);
    out *= cd(k, 0.0);
    return out;
}

MatrixForm string_potential_total(const SymTrace& f, const GaugePair& p) {
    check_gauge_pair(p);
    const int k = f.k;
    const MatrixForm& A = p.connection;
    const MatrixForm& Phi = p.higgs;
    const MatrixForm F = curvature(A);
    const MatrixForm brAA = bracket(A, A);
    const MatrixForm brAPhi = bracket(A, Phi);
    const MatrixForm covd = higgs_cov_derivative(p);

    auto assemble = [&](std::vector<MatrixForm> head, int braa_count, int f_count) {
        for (int i = 0; i < braa_count; ++i) head.push_back(brAA);
        for (int i = 0; i < f_count; ++i) head.push_back(F);
        return sym_trace(f, head);
    };

    MatrixForm acc;
    bool first = true;
    auto add = [&](MatrixForm term, double scale) {
        term *= cd(scale, 0.0);
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc += term;
        }
    };

    for (int i = 0; i <= k - 1; ++i) {
        const double ci = to_double(total_potential_coefficient(k, i));
        add(assemble({Phi}, i, k - 1 - i), ci);
        if (i >= 1) {
            add(assemble({A, brAPhi}, i - 1, k - 1 - i), 2.0 * i * ci);
            add(assemble({A, covd}, i - 1, k - 1 - i), -2.0 * (k + i) * ci);
        }
    }
    return loop_value_integral(acc);
}

MatrixForm chern_simons_total(const SymTrace& f, const MatrixForm& a) {
    const int k = f.k;
    const MatrixForm F = curvature(a);
    const MatrixForm brAA = bracket(a, a);

    MatrixForm acc;
    bool first = true;
    for (int j = 0; j <= k - 1; ++j) {
        std::vector<MatrixForm> args;
        args.push_back(a);
        for (int i = 0; i < j; ++i) args.push_back(brAA);
        for (int i = 0; i < k - 1 - j; ++i) args.push_back(F);
        MatrixForm term = sym_trace(f, args);
        term *= cd(to_double(cs_coefficient(k, j)), 0.0);
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc += term;
        }
    }
    return acc;
}

MatrixForm chern_simons_relative(const SymTrace& f, const FormPath& path, int t_quad_nodes) {
    std::vector<double> xs, ws;
    composite_gl(path.knot_times(), t_quad_nodes, xs, ws);

    MatrixForm acc;
    bool first = true;
    for (size_t q = 0; q < xs.size(); ++q) {
        const MatrixForm At = path.at(xs[q]);
        std::vector<MatrixForm> args;
        args.push_back(path.velocity(xs[q]));
        const MatrixForm F = curvature(At);
        for (int i = 0; i < f.k - 1; ++i) args.push_back(F);
        MatrixForm term = sym_trace(f, args);
        term *= cd(ws[q], 0.0);
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc += term;
        }
    }
    acc *= cd(f.k, 0.0);
    return acc;
}

MatrixForm transgression_pullback(const SymTrace& f, const GroupMap& g) {
    const MatrixForm W = map_mc_pullback(g, McSide::Left);
    std::vector<MatrixForm> args;
    args.push_back(W);
    if (f.k >= 2) {
        const MatrixForm br = bracket(W, W);
        for (int i = 0; i < f.k - 1; ++i) args.push_back(br);
    }
    MatrixForm out = sym_trace(f, args);
    out *= cd(to_double(tau_prefactor(f.k)), 0.0);
    return out;
}

GradedForm odd_chern_character(const GroupMap& g) {
    GradedForm out;
    const MatrixForm W = map_mc_pullback(g, McSide::Left);
    MatrixForm Wpow = W;
    for (int j = 0; 2 * j + 1 <= g.values.mesh().dim(); ++j) {
        if (j > 0) Wpow = wedge(wedge(Wpow, W), W);
        MatrixForm part = trace_form(Wpow);
        cd scale(to_double(odd_character_rational(j)), 0.0);
        for (int i = 0; i <= j; ++i) scale *= -inv_two_pi_i;
        part *= scale;
        out.emplace(2 * j + 1, std::move(part));
    }
    return out;
}

CutoffFunction smoothstep_cutoff(int samples) {
    if (samples < 8) throw DimensionMismatch("cutoff: need at least 8 samples");
    CutoffFunction out;
    out.alpha.resize(static_cast<size_t>(samples));
    out.alpha_prime.resize(static_cast<size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double u = static_cast<double>(j) / (samples - 1);
        out.alpha[static_cast<size_t>(j)] = u * u * (3.0 - 2.0 * u);
        out.alpha_prime[static_cast<size_t>(j)] = 6.0 * u * (1.0 - u) / theta_period;
    }
    return out;
}

CutoffFunction sine_ramp_cutoff(int samples) {
    if (samples < 8) throw DimensionMismatch("cutoff: need at least 8 samples");
    CutoffFunction out;
    out.alpha.resize(static_cast<size_t>(samples));
    out.alpha_prime.resize(static_cast<size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double u = static_cast<double>(j) / (samples - 1);
        out.alpha[static_cast<size_t>(j)] = u - std::sin(theta_period * u) / theta_period;
        out.alpha_prime[static_cast<size_t>(j)] =
            (1.0 - std::cos(theta_period * u)) / theta_period;
    }
    return out;
}

BetaCheck beta_coefficients(int k) {
    BetaCheck out;
    out.alternating = beta_alternating_sum(k);
    out.beta = beta_kk(k);
    out.exact_equal = out.alternating == out.beta;
    return out;
}

BetaCheck beta_coefficients(int k, const CutoffFunction& alpha) {
    if (alpha.alpha.size() != alpha.alpha_prime.size() || alpha.alpha.size() < 8)
        throw DimensionMismatch("cutoff: sample/derivative lists must match, >= 8 entries");
    BetaCheck out = beta_coefficients(k);
    const int n = static_cast<int>(alpha.alpha.size());
    const std::vector<double> w = quadrature::interval_node_weights(n);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double a = alpha.alpha[static_cast<size_t>(j)];
        acc += w[static_cast<size_t>(j)] * std::pow(a, k - 1) * std::pow(1.0 - a, k - 1) *
               alpha.alpha_prime[static_cast<size_t>(j)];
    }
    out.quadrature = acc * theta_period;
    out.has_quadrature = true;
    return out;
}

std::vector<double> degree1_character(const MatrixForm& higgs) {
    if (higgs.degree() != 0 || higgs.loop_samples() == 0)
        throw DimensionMismatch("degree-1 character: loop-valued 0-form expected");
    const MatrixForm integral = loop_value_integral(trace_form(higgs));
    const long pts = higgs.mesh().total_points();
    std::vector<double> out(static_cast<size_t>(pts), 0.0);
    if (const std::vector<cd>* vals = integral.find_component({})) {
        for (long p = 0; p < pts; ++p) {
            const double v = (inv_two_pi_i * (*vals)[static_cast<size_t>(p)]).real();
            out[static_cast<size_t>(p)] = v - std::floor(v + 0.5);
        }
    }
    return out;
}

} // namespace caloron
