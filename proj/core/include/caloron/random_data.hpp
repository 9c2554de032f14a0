#pragma once

#include "caloron/gauge.hpp"
#include "caloron/ktheory.hpp"
#include "caloron/rng.hpp"

namespace caloron {

/// Seeded sample data for the verification suites. Every generator draws from
/// a caller-owned CounterRng, so a fixed (seed, call order) reproduces the
/// same data on every platform. Fields are built from trigonometric
/// polynomials; spectral derivatives are then exact up to products that stay
/// below the grid Nyquist frequency.

cmat random_skew_matrix(CounterRng& rng, int n, double scale = 1.0);
cmat random_unitary_matrix(CounterRng& rng, int n);

/// How sampled fields depend on the loop (theta) variable.
enum class ThetaProfile {
    /// Trigonometric polynomial of bandwidth theta_bandwidth.
    Bandlimited,
    /// Poisson kernel (1-r^2)/(1 - 2r cos(theta-phase) + r^2): every Fourier
    /// mode is present with weight r^|k|, so doubling the theta sample count
    /// shrinks aliasing errors by r^{N/2}.
    GeometricTail,
};

struct TrigFieldOptions {
    int terms = 3;
    int base_bandwidth = 2;
    /// Loop-direction bandwidth; ignored for plain fields.
    int theta_bandwidth = 3;
    double scale = 0.5;
    ThetaProfile theta_profile = ThetaProfile::Bandlimited;
    /// Fourier decay ratio of the GeometricTail profile.
    double tail_ratio = 0.5;
};

/// Random p-form with skew-Hermitian n x n values (loop-valued when
/// loop_samples > 0). Circle axes carry integer frequencies up to
/// base_bandwidth; interval axes carry polynomials of degree <= 3 so the
/// interior finite-difference stencils differentiate them exactly.
MatrixForm random_skew_form(CounterRng& rng, const Mesh& mesh, int degree, int n,
                            int loop_samples, const TrigFieldOptions& opt = {});

/// Random real scalar p-form built the same way.
MatrixForm random_scalar_form(CounterRng& rng, const Mesh& mesh, int degree,
                              const TrigFieldOptions& opt = {});

/// Based loop with a known winding number: a product of `factors` conjugated
/// phase loops U diag(e^{i k_j theta}) U^*. Entry bandwidth is at most
/// `bandwidth`; the winding number is the sum of all phase frequencies.
struct WindingLoop {
    SampledLoop loop;
    long long winding = 0;
};
WindingLoop random_winding_loop(CounterRng& rng, GroupSpec spec, int samples,
                                int bandwidth, int factors = 2);

/// Skew algebra-valued trig loop (a Higgs sample at a single base point).
SampledLoop random_algebra_loop(CounterRng& rng, GroupSpec spec, int samples,
                                int bandwidth, double scale = 0.6);

/// Unitary map on the mesh as a product of conjugated coordinate-phase
/// factors U diag(e^{i<k, x> + i phase}) U^*; entries are trig polynomials of
/// per-axis bandwidth <= factors * bandwidth (interval axes carry constant
/// phases). SU maps balance frequencies and phases so the determinant is one.
GroupMap random_phase_conjugate_map(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                                    int bandwidth = 3, int factors = 2);

/// Based loop-valued unitary map exp(Psi(x, theta)) with Psi skew and
/// Psi(x, 0) = 0 exactly, so every value loop starts at the identity.
GroupMap random_based_loop_map(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                               int loop_samples, const TrigFieldOptions& opt = {});

/// Connection + Higgs sample: skew loop-valued 1-form and 0-form. SU data is
/// made traceless.
GaugePair random_gauge_pair(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                            int loop_samples, const TrigFieldOptions& opt = {});

/// Homotopy G(x, t) = g(x) exp(t Y(x)) with the closed-form derivative G Y;
/// g is a phase-conjugate map and Y a low-bandwidth skew field, keeping
/// spectral aliasing far below the identity tolerances.
HomotopySpec random_homotopy(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                             double scale = 0.6);

/// Same construction starting from a caller-supplied endpoint g.
HomotopySpec random_homotopy_from(CounterRng& rng, const GroupMap& g, double scale = 0.6);

/// Random generator pair (g, chi) with chi a real scalar form in each even
/// degree up to the mesh dimension.
TwzElement random_twz_element(CounterRng& rng, GroupSpec spec, const Mesh& mesh);

/// theta -> e^{i k theta} in U(1) over a circle mesh.
GroupMap circle_phase_power_map(const Mesh& circle, int k);

/// Identity chart map of SU(2) on an (Interval, Circle, Circle) Hopf-like
/// chart: (u, p1, p2) -> [[cos(eta) e^{i p1}, -sin(eta) e^{-i p2}],
/// [sin(eta) e^{i p2}, cos(eta) e^{-i p1}]] with eta = pi u / 2.
GroupMap su2_chart_identity_map(const Mesh& chart);

/// Constant identity map of the given rank.
GroupMap constant_identity_map(GroupSpec spec, const Mesh& mesh);

/// Broadcast of one loop to every grid point (a constant loop-valued map).
GroupMap loop_constant_map(const Mesh& mesh, const SampledLoop& loop);

} // namespace caloron
