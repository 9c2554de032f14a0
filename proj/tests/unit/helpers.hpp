#pragma once

#include "caloron/gauge.hpp"
#include "caloron/random_data.hpp"
#include "caloron/rng.hpp"

namespace caloron::testing {

/// Based gauge map with finite-bandwidth entries: V(x) l(theta) V(x)^{-1}
/// with V a phase-conjugate map and l a based winding loop. Products of
/// trig polynomials stay trig polynomials, so spectral derivatives of the
/// transformed data are exact on modest grids.
inline GroupMap conjugated_loop_map(CounterRng& rng, GroupSpec spec, const Mesh& mesh,
                                    int loop_samples) {
    const GroupMap frame = random_phase_conjugate_map(rng, spec, mesh, 1, 1);
    const WindingLoop wl = random_winding_loop(rng, spec, loop_samples, 2, 1);
    GroupMap out;
    out.spec = spec;
    out.values = wedge(wedge(frame.values, loop_constant_map(mesh, wl.loop).values),
                       map_inverse_values(frame));
    return out;
}

/// U(1) loop theta -> e^{i k theta} as a SampledLoop.
inline SampledLoop phase_loop(int samples, double k) {
    SampledLoop l(GroupSpec{GroupFamily::UnitaryU, 1}, samples);
    for (int j = 0; j < samples; ++j) {
        cmat v(1, 1);
        v(0, 0) = std::exp(cd(0.0, k * theta_period * j / samples));
        l.set_sample(j, v);
    }
    return l;
}

} // namespace caloron::testing
