#include "caloron/random_data.hpp"

#include <cmath>
#include <functional>

namespace caloron {

namespace {

// Decoded per-point grid indices, last axis fastest.
std::vector<int> point_indices(const Mesh& mesh, long p) {
    const auto shp = mesh.shape();
    const auto strides = mesh.point_strides();
    std::vector<int> idx(shp.size());
    for (size_t a = 0; a < shp.size(); ++a)
        idx[a] = static_cast<int>((p / strides[a]) % shp[a]);
    return idx;
}

struct AxisTerm {
    // Circle: cos(freq * x + phase); Interval: x^power.
    int freq = 0;
    int power = 0;
    double phase = 0.0;
};

struct FieldTerm {
    cmat value;
    std::vector<AxisTerm> base;
    AxisTerm theta;
    ThetaProfile profile = ThetaProfile::Bandlimited;
    double tail_ratio = 0.5;
};

FieldTerm sample_term(CounterRng& rng, const Mesh& mesh, const TrigFieldOptions& opt,
                      const std::function<cmat()>& value_sampler) {
    FieldTerm term;
    term.value = value_sampler();
    term.profile = opt.theta_profile;
    term.tail_ratio = opt.tail_ratio;
    term.base.resize(static_cast<size_t>(mesh.dim()));
    for (int a = 0; a < mesh.dim(); ++a) {
        AxisTerm& at = term.base[static_cast<size_t>(a)];
        if (mesh.factor(a).kind == FactorKind::Circle) {
            at.freq = static_cast<int>(rng.next_u64() % (2 * opt.base_bandwidth + 1)) -
                      opt.base_bandwidth;
            at.phase = rng.uniform(0.0, 2.0 * pi);
        } else {
            at.power = static_cast<int>(rng.next_u64() % 4);
        }
    }
    term.theta.freq =
        static_cast<int>(rng.next_u64() % (2 * opt.theta_bandwidth + 1)) - opt.theta_bandwidth;
    term.theta.phase = rng.uniform(0.0, 2.0 * pi);
    return term;
}

double base_factor(const Mesh& mesh, const std::vector<int>& idx, const FieldTerm& term) {
    double f = 1.0;
    for (int a = 0; a < mesh.dim(); ++a) {
        const double x = mesh.coordinate(a, idx[static_cast<size_t>(a)]);
        const AxisTerm& at = term.base[static_cast<size_t>(a)];
        if (mesh.factor(a).kind == FactorKind::Circle)
            f *= std::cos(at.freq * x + at.phase);
        else
            f *= std::pow(x, at.power);
    }
    return f;
}

double theta_factor(double theta, const FieldTerm& term) {
    if (term.profile == ThetaProfile::Bandlimited)
        return std::cos(term.theta.freq * theta + term.theta.phase);
    const double r = term.tail_ratio;
    const double c = std::cos(theta - term.theta.phase);
    return (1.0 - r * r) / (1.0 - 2.0 * r * c + r * r);
}

// Sum of separable terms (scalar field) x (constant matrix), written into
// every canonical component of a fresh form.
MatrixForm sampled_form(CounterRng& rng, const Mesh& mesh, int degree, int n,
                        int loop_samples, const TrigFieldOptions& opt,
                        const std::function<cmat()>& value_sampler) {
    MatrixForm out(mesh, degree, n, loop_samples);
    const long pts = mesh.total_points();
    const int depth = out.value_depth();
    for (const AxisSet& axes : MatrixForm::axis_sets(mesh.dim(), degree)) {
        std::vector<cd>& comp = out.component(axes);
        for (int m = 0; m < opt.terms; ++m) {
            const FieldTerm term = sample_term(rng, mesh, opt, value_sampler);
            for (long p = 0; p < pts; ++p) {
                const double bf = base_factor(mesh, point_indices(mesh, p), term);
                for (int t = 0; t < depth; ++t) {
                    const double tf =
                        loop_samples > 0
                            ? theta_factor(theta_period * t / loop_samples, term)
                            : 1.0;
                    const double f = bf * tf;
                    cd* dst = comp.data() + (p * depth + t) * n * n;
                    for (int r = 0; r < n; ++r)
                        for (int c = 0; c < n; ++c) dst[r * n + c] += f * term.value(r, c);
                }
            }
        }
    }
    return out;
}

void make_traceless(MatrixForm& w) {
    const int n = w.rank();
    for (auto& [axes, comp] : w.components()) {
        for (size_t off = 0; off < comp.size(); off += static_cast<size_t>(n) * n) {
            cd tr(0.0, 0.0);
            for (int r = 0; r < n; ++r) tr += comp[off + static_cast<size_t>(r) * n + r];
            tr /= static_cast<double>(n);
            for (int r = 0; r < n; ++r) comp[off + static_cast<size_t>(r) * n + r] -= tr;
        }
    }
}

MatrixForm pointwise_skew_exp(const MatrixForm& x) {
    if (x.degree() != 0) throw DimensionMismatch("pointwise exp: 0-forms only");
    MatrixForm out(x.mesh(), 0, x.rank(), x.loop_samples());
    const int n = x.rank();
    std::vector<cd>& dst = out.component({});
    const std::vector<cd>* src = x.find_component({});
    if (!src) {
        const cmat id = cmat::Identity(n, n);
        for (size_t off = 0; off < dst.size(); off += static_cast<size_t>(n) * n)
            mat_to_block(id, dst.data() + off, n);
        return out;
    }
    for (size_t off = 0; off < dst.size(); off += static_cast<size_t>(n) * n)
        mat_to_block(skew_exp(block_to_mat(src->data() + off, n)), dst.data() + off, n);
    return out;
}

} // namespace

cmat random_skew_matrix(CounterRng& rng, int n, double scale) {
    cmat g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = rng.next_complex_gaussian();
    return scale / std::sqrt(2.0 * n) * (g - g.adjoint().eval());
}

cmat random_unitary_matrix(CounterRng& rng, int n) {
    cmat g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = rng.next_complex_gaussian();
    return polar_unitary(g);
}

MatrixForm random_skew_form(CounterRng& rng, const Mesh& mesh, int degree, int n,
                            int loop_samples, const TrigFieldOptions& opt) {
    return sampled_form(rng, mesh, degree, n, loop_samples, opt,
                        [&] { return random_skew_matrix(rng, n, opt.scale); });
}

MatrixForm random_scalar_form(CounterRng& rng, const Mesh& mesh, int degree,
                              const TrigFieldOptions& opt) {
    return sampled_form(rng, mesh, degree, 1, 0, opt, [&] {
        cmat v(1, 1);
        v(0, 0) = cd(opt.scale * rng.next_gaussian(), 0.0);
        return v;
    });
}

WindingLoop random_winding_loop(CounterRng& rng, GroupSpec spec, int samples,
                                int bandwidth, int factors) {
    const int n = spec.rank_n;
    const int budget = std::max(1, bandwidth / std::max(1, factors));
    WindingLoop out;
    out.loop = SampledLoop::constant(spec, samples, cmat::Identity(n, n));
    for (int m = 0; m < factors; ++m) {
        const cmat u = random_unitary_matrix(rng, n);
        std::vector<int> ks(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            ks[static_cast<size_t>(j)] =
                static_cast<int>(rng.next_u64() % (2 * budget + 1)) - budget;
        if (spec.family == GroupFamily::SpecialUnitarySU) {
            int sum = 0;
            for (int j = 0; j + 1 < n; ++j) sum += ks[static_cast<size_t>(j)];
            ks[static_cast<size_t>(n - 1)] = -sum;
        }
        for (int j = 0; j < n; ++j) out.winding += ks[static_cast<size_t>(j)];
        for (int s = 0; s < samples; ++s) {
            const double theta = theta_period * s / samples;
            cmat d = cmat::Zero(n, n);
            for (int j = 0; j < n; ++j)
                d(j, j) = std::exp(cd(0.0, ks[static_cast<size_t>(j)] * theta));
            out.loop.set_sample(s, out.loop.sample(s) * (u * d * u.adjoint()));
        }
    }
    return out;
}

SampledLoop random_algebra_loop(CounterRng& rng, GroupSpec spec, int samples,
                                int bandwidth, double scale) {
    const int n = spec.rank_n;
    SampledLoop out(spec, samples, /*algebra_valued=*/true);
    for (int k = 0; k <= bandwidth; ++k) {
        cmat sc = random_skew_matrix(rng, n, scale);
        cmat ss = random_skew_matrix(rng, n, scale);
        if (spec.family == GroupFamily::SpecialUnitarySU) {
            sc -= (sc.trace() / static_cast<double>(n)) * cmat::Identity(n, n);
            ss -= (ss.trace() / static_cast<double>(n)) * cmat::Identity(n, n);
        }
        for (int s = 0; s < samples; ++s) {
            const double theta = theta_period * s / samples;
            out.set_sample(s, out.sample(s) + std::cos(k * theta) * sc +
                                  std::sin(k * theta) * ss);
        }
    }
    return out;
}

GroupMap random_phase_conjugate_map(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                                    int bandwidth, int factors) {
    const int n = spec.rank_n;
    GroupMap out;
    out.spec = spec;
    out.values = constant_matrix_form(mesh, cmat::Identity(n, n));
    std::vector<cd>& comp = out.values.component({});
    const long pts = mesh.total_points();
    for (int m = 0; m < factors; ++m) {
        const cmat u = random_unitary_matrix(rng, n);
        // Per diagonal slot: one frequency per circle axis plus a phase.
        std::vector<std::vector<int>> freq(static_cast<size_t>(n),
                                           std::vector<int>(static_cast<size_t>(mesh.dim()), 0));
        std::vector<double> phase(static_cast<size_t>(n), 0.0);
        for (int j = 0; j < n; ++j) {
            for (int a = 0; a < mesh.dim(); ++a)
                if (mesh.factor(a).kind == FactorKind::Circle)
                    freq[static_cast<size_t>(j)][static_cast<size_t>(a)] =
                        static_cast<int>(rng.next_u64() % (2 * bandwidth + 1)) - bandwidth;
            phase[static_cast<size_t>(j)] = rng.uniform(0.0, 2.0 * pi);
        }
        if (spec.family == GroupFamily::SpecialUnitarySU && n > 0) {
            for (int a = 0; a < mesh.dim(); ++a) {
                int sum = 0;
                for (int j = 0; j + 1 < n; ++j) sum += freq[static_cast<size_t>(j)][static_cast<size_t>(a)];
                freq[static_cast<size_t>(n - 1)][static_cast<size_t>(a)] = -sum;
            }
            double psum = 0.0;
            for (int j = 0; j + 1 < n; ++j) psum += phase[static_cast<size_t>(j)];
            phase[static_cast<size_t>(n - 1)] = -psum;
        }
        for (long p = 0; p < pts; ++p) {
            const auto idx = point_indices(mesh, p);
            cmat d = cmat::Zero(n, n);
            for (int j = 0; j < n; ++j) {
                double arg = phase[static_cast<size_t>(j)];
                for (int a = 0; a < mesh.dim(); ++a)
                    arg += freq[static_cast<size_t>(j)][static_cast<size_t>(a)] *
                           mesh.coordinate(a, idx[static_cast<size_t>(a)]);
                d(j, j) = std::exp(cd(0.0, arg));
            }
            cd* dst = comp.data() + p * static_cast<long>(n) * n;
            mat_to_block(block_to_mat(dst, n) * (u * d * u.adjoint()), dst, n);
        }
    }
    return out;
}

GroupMap random_based_loop_map(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                               int loop_samples, const TrigFieldOptions& opt) {
    const int n = spec.rank_n;
    // Psi = sum_m S_m * base_m(x) * (a sin(k theta) + b (cos(k theta) - 1)):
    // every summand vanishes at theta = 0, so exp(Psi) is based exactly.
    MatrixForm psi(mesh, 0, n, loop_samples);
    std::vector<cd>& comp = psi.component({});
    const long pts = mesh.total_points();
    for (int m = 0; m < opt.terms; ++m) {
        cmat s = random_skew_matrix(rng, n, opt.scale);
        if (spec.family == GroupFamily::SpecialUnitarySU)
            s -= (s.trace() / static_cast<double>(n)) * cmat::Identity(n, n);
        const int k = 1 + static_cast<int>(rng.next_u64() %
                                           static_cast<unsigned>(std::max(1, opt.theta_bandwidth)));
        const double a = rng.next_gaussian();
        const double b = rng.next_gaussian();
        TrigFieldOptions base_opt = opt;
        const FieldTerm term =
            sample_term(rng, mesh, base_opt, [&] { return cmat::Identity(1, 1); });
        for (long p = 0; p < pts; ++p) {
            const double bf = base_factor(mesh, point_indices(mesh, p), term);
            for (int t = 0; t < loop_samples; ++t) {
                const double theta = theta_period * t / loop_samples;
                const double f =
                    bf * (a * std::sin(k * theta) + b * (std::cos(k * theta) - 1.0));
                cd* dst = comp.data() + (p * static_cast<long>(loop_samples) + t) * n * n;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) dst[r * n + c] += f * s(r, c);
            }
        }
    }
    GroupMap out;
    out.spec = spec;
    out.values = pointwise_skew_exp(psi);
    return out;
}

GaugePair random_gauge_pair(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                            int loop_samples, const TrigFieldOptions& opt) {
    GaugePair p;
    p.spec = spec;
    p.connection = random_skew_form(rng, mesh, 1, spec.rank_n, loop_samples, opt);
    p.higgs = random_skew_form(rng, mesh, 0, spec.rank_n, loop_samples, opt);
    if (spec.family == GroupFamily::SpecialUnitarySU) {
        make_traceless(p.connection);
        make_traceless(p.higgs);
    }
    return p;
}

HomotopySpec random_homotopy_from(CounterRng& rng, const GroupMap& g, double scale) {
    if (g.spec.family == GroupFamily::GeneralLinearGL)
        throw ValidationError("homotopies are sampled in the unitary families");
    TrigFieldOptions yopt;
    yopt.terms = 2;
    yopt.base_bandwidth = 1;
    yopt.scale = scale;
    MatrixForm y = random_skew_form(rng, g.values.mesh(), 0, g.spec.rank_n, 0, yopt);
    if (g.spec.family == GroupFamily::SpecialUnitarySU) make_traceless(y);

    HomotopySpec h;
    h.spec = g.spec;
    const MatrixForm gv = g.values;
    h.value = [gv, y](double t) {
        MatrixForm ty = y;
        ty *= cd(t, 0.0);
        return wedge(gv, pointwise_skew_exp(ty));
    };
    h.derivative = [value = h.value, y](double t) { return wedge(value(t), y); };
    h.g0 = gv;
    h.g1 = h.value(1.0);
    return h;
}

HomotopySpec random_homotopy(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                             double scale) {
    if (spec.family == GroupFamily::GeneralLinearGL)
        throw ValidationError("homotopies are sampled in the unitary families");
    GroupMap g = random_phase_conjugate_map(rng, spec, mesh, /*bandwidth=*/2, /*factors=*/2);
    return random_homotopy_from(rng, g, scale);
}

TwzElement random_twz_element(CounterRng& rng, GroupSpec spec, const Mesh& mesh) {
    TwzElement e;
    e.g = random_phase_conjugate_map(rng, spec, mesh, /*bandwidth=*/2, /*factors=*/2);
    TrigFieldOptions copt;
    copt.terms = 2;
    copt.scale = 0.4;
    for (int deg = 0; deg <= mesh.dim(); deg += 2)
        e.chi.emplace(deg, random_scalar_form(rng, mesh, deg, copt));
    return e;
}

GroupMap circle_phase_power_map(const Mesh& circle, int k) {
    if (circle.dim() != 1 || circle.factor(0).kind != FactorKind::Circle)
        throw DimensionMismatch("phase power map: single circle mesh expected");
    GroupMap out;
    out.spec = GroupSpec{GroupFamily::UnitaryU, 1};
    out.values = MatrixForm(circle, 0, 1, 0);
    std::vector<cd>& comp = out.values.component({});
    for (long p = 0; p < circle.total_points(); ++p)
        comp[static_cast<size_t>(p)] =
            std::exp(cd(0.0, k * circle.coordinate(0, static_cast<int>(p))));
    return out;
}

GroupMap su2_chart_identity_map(const Mesh& chart) {
    if (chart.dim() != 3 || chart.factor(0).kind != FactorKind::Interval ||
        chart.factor(1).kind != FactorKind::Circle ||
        chart.factor(2).kind != FactorKind::Circle)
        throw DimensionMismatch("chart identity map: Interval x Circle x Circle expected");
    GroupMap out;
    out.spec = GroupSpec{GroupFamily::SpecialUnitarySU, 2};
    out.values = MatrixForm(chart, 0, 2, 0);
    std::vector<cd>& comp = out.values.component({});
    for (long p = 0; p < chart.total_points(); ++p) {
        const auto idx = point_indices(chart, p);
        const double eta = 0.5 * pi * chart.coordinate(0, idx[0]);
        const double p1 = chart.coordinate(1, idx[1]);
        const double p2 = chart.coordinate(2, idx[2]);
        cmat m(2, 2);
        m(0, 0) = std::cos(eta) * std::exp(cd(0.0, p1));
        m(0, 1) = -std::sin(eta) * std::exp(cd(0.0, -p2));
        m(1, 0) = std::sin(eta) * std::exp(cd(0.0, p2));
        m(1, 1) = std::cos(eta) * std::exp(cd(0.0, -p1));
        mat_to_block(m, comp.data() + p * 4, 2);
    }
    return out;
}

GroupMap constant_identity_map(GroupSpec spec, const Mesh& mesh) {
    GroupMap out;
    out.spec = spec;
    out.values = constant_matrix_form(mesh, cmat::Identity(spec.rank_n, spec.rank_n));
    return out;
}

GroupMap loop_constant_map(const Mesh& mesh, const SampledLoop& loop) {
    GroupMap out;
    out.spec = loop.spec();
    out.values = MatrixForm(mesh, 0, loop.rank(), loop.sample_count());
    std::vector<cd>& comp = out.values.component({});
    const long vlen = out.values.value_len();
    for (long p = 0; p < mesh.total_points(); ++p)
        std::copy(loop.raw_data().begin(), loop.raw_data().end(),
                  comp.begin() + p * vlen);
    return out;
}

} // namespace caloron
