#pragma once

#include "caloron/gauge.hpp"

namespace caloron {

struct HolonomyOptions {
    /// RK4 step count over [0, 2*pi]; a power of two at least the loop depth.
    int steps = 512;
    /// Project onto the unitary group after every step (polar factor).
    bool re_unitarize = false;
    /// Throw StepCountTooLow when the Richardson estimate exceeds this.
    double richardson_tol = 1e-6;
};

struct HolonomyResult {
    /// Endpoint g(2*pi) at every grid point.
    GroupMap hol;
    /// The solution path restricted to the theta grid of the input (a
    /// loop-valued 0-form; slot 0 is the identity).
    MatrixForm paths;
    /// Per grid point ||g_steps(2*pi) - g_{2 steps}(2*pi)||, the Richardson
    /// error estimate.
    std::vector<double> error_estimate;
    double max_error_estimate = 0.0;
    /// Whether per-step re-unitarization ran (always reported, never silent).
    bool re_unitarized = false;
    /// Max unitary defect of the endpoints, after re-unitarization if it ran.
    double max_unitary_defect = 0.0;
};

/// Solves g' = g Phi(x) on [0, 2*pi] with g(0) = I at every grid point by
/// RK4, evaluating Phi between samples by trigonometric (spectral)
/// resampling. Phi is a loop-valued degree-0 form.
HolonomyResult higgs_holonomy(const MatrixForm& higgs, GroupSpec spec,
                              const HolonomyOptions& opts = {});

} // namespace caloron
