#include "caloron/holonomy.hpp"

#include <algorithm>

#include "caloron/spectral.hpp"

namespace caloron {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// One RK4 sweep over [0, 2*pi]. Stage values of Phi come from spectral
// resampling to a half-step grid, so the interpolation is trigonometric.
cmat solve_point(const cd* loop, int L, int n, int steps, bool reunit, cd* path_out) {
    const int M = 2 * steps;
    const long nn = static_cast<long>(n) * n;
    std::vector<cd> fine(static_cast<size_t>(M) * nn);
    for (long e = 0; e < nn; ++e)
        spectral::circle_resample(loop + e, L, nn, fine.data() + e, M, nn);

    const double h = theta_period / steps;
    const int record = steps / L;
    cmat g = cmat::Identity(n, n);
    auto phi = [&](long idx) { return block_to_mat(fine.data() + (idx % M) * nn, n); };
    for (int i = 0; i < steps; ++i) {
        if (path_out && i % record == 0) mat_to_block(g, path_out + (i / record) * nn, n);
        const cmat p0 = phi(2L * i);
        const cmat ph = phi(2L * i + 1);
        const cmat p1 = phi(2L * i + 2);
        const cmat k1 = g * p0;
        const cmat k2 = (g + (0.5 * h) * k1) * ph;
        const cmat k3 = (g + (0.5 * h) * k2) * ph;
        const cmat k4 = (g + h * k3) * p1;
        g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (reunit) g = polar_unitary(g);
    }
    return g;
}

} // namespace

HolonomyResult higgs_holonomy(const MatrixForm& higgs, GroupSpec spec,
                              const HolonomyOptions& opts) {
    if (higgs.degree() != 0 || higgs.loop_samples() == 0)
        throw DimensionMismatch("holonomy: loop-valued degree-0 input expected");
    if (higgs.rank() != spec.rank_n)
        throw DimensionMismatch("holonomy: rank disagrees with the group spec");
    const int L = higgs.loop_samples();
    const int n = higgs.rank();
    if (!power_of_two(opts.steps) || opts.steps < L)
        throw DimensionMismatch("holonomy: steps must be a power of two >= the loop depth");

    const Mesh& mesh = higgs.mesh();
    const long pts = mesh.total_points();
    const long nn = static_cast<long>(n) * n;

    HolonomyResult out;
    out.re_unitarized = opts.re_unitarize;
    out.hol.spec = spec;
    out.hol.values = MatrixForm(mesh, 0, n, 0);
    out.paths = MatrixForm(mesh, 0, n, L);
    out.error_estimate.assign(static_cast<size_t>(pts), 0.0);
    std::vector<cd>& hv = out.hol.values.component({});
    std::vector<cd>& pv = out.paths.component({});

    const std::vector<cd>* data = higgs.find_component({});
    const std::vector<cd> zero_loop(static_cast<size_t>(L) * nn, cd(0.0, 0.0));

    for (long p = 0; p < pts; ++p) {
        const cd* lp = data ? data->data() + p * L * nn : zero_loop.data();
        const cmat end =
            solve_point(lp, L, n, opts.steps, opts.re_unitarize, pv.data() + p * L * nn);
        const cmat end_fine = solve_point(lp, L, n, 2 * opts.steps, opts.re_unitarize, nullptr);
        const double est = max_abs(end - end_fine);
        out.error_estimate[static_cast<size_t>(p)] = est;
        out.max_error_estimate = std::max(out.max_error_estimate, est);
        out.max_unitary_defect = std::max(out.max_unitary_defect, unitary_defect(end));
        mat_to_block(end, hv.data() + p * nn, n);
    }

    if (out.max_error_estimate > opts.richardson_tol)
        throw StepCountTooLow("holonomy: step count too low for the requested accuracy",
                              out.max_error_estimate);
    return out;
}

} // namespace caloron
